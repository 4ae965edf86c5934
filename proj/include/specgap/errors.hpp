#pragma once

#include <stdexcept>
#include <string>

namespace specgap {

/// Base of every error raised by the library. `name()` is the stable error
/// tag surfaced by the CLI (e.g. "AdmissibilityError").
class Error : public std::runtime_error {
 public:
  Error(std::string name, const std::string& message)
      : std::runtime_error(message), name_(std::move(name)) {}

  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

#define SPECGAP_DEFINE_ERROR(Type)                                  \
  class Type : public Error {                                       \
   public:                                                          \
    explicit Type(const std::string& message) : Error(#Type, message) {} \
  }

// comparison
SPECGAP_DEFINE_ERROR(DomainError);
SPECGAP_DEFINE_ERROR(EndpointSingular);
// geometry
SPECGAP_DEFINE_ERROR(AdmissibilityError);
SPECGAP_DEFINE_ERROR(InvalidClass);
// solver
SPECGAP_DEFINE_ERROR(MonotonicityError);
SPECGAP_DEFINE_ERROR(NonFiniteRatio);
SPECGAP_DEFINE_ERROR(SingularDrift);
// coupling_sim
SPECGAP_DEFINE_ERROR(ConfigError);
// catalog
SPECGAP_DEFINE_ERROR(ConsistencyFailure);

#undef SPECGAP_DEFINE_ERROR

}  // namespace specgap
