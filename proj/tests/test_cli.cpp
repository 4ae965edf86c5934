#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <charconv>
#include <cmath>
#include <locale>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"

using json = nlohmann::json;
namespace cli = specgap::cli;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  int code;
  std::string out, err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> rows;
  std::istringstream is(text);
  for (std::string line; std::getline(is, line);) rows.push_back(line);
  return rows;
}

std::vector<double> parse_row(const std::string& line) {
  std::vector<double> values;
  std::size_t start = 0;
  while (start <= line.size()) {
    const std::size_t end = std::min(line.find(',', start), line.size());
    double v = 0.0;
    const auto res = std::from_chars(line.data() + start, line.data() + end, v);
    REQUIRE(res.ec == std::errc{});
    REQUIRE(res.ptr == line.data() + end);
    values.push_back(v);
    start = end + 1;
  }
  return values;
}

}  // namespace

TEST_CASE("bound: CP^2 optimal example") {
  const auto o = run({"bound", "--family", "kahler", "--m", "2", "--k1", "1", "--k2", "1", "--diameter", "1.5707963",
                      "--clip-diameter", "--method", "optimal", "--grid", "2048"});
  REQUIRE(o.code == cli::kExitOk);
  const json j = json::parse(o.out);
  CHECK(j["delta"].get<double>() >= 8 - 1e-3);
  CHECK(j["delta"].get<double>() <= 12 + 1e-2);
  for (const char* key : {"delta", "method", "witness_r", "monotone", "grid_n", "rich_error", "class", "diameter"}) {
    CHECK(j.contains(key));
  }
  CHECK(j["method"] == "optimal");
  CHECK(j["class"]["family"] == "kahler");
}

TEST_CASE("bound: Zhong-Yang trial example") {
  const auto o = run({"bound", "--family", "riemannian", "--n", "3", "--k", "0", "--diameter", "1", "--method",
                      "trial", "--trial", "sine-halfpi"});
  REQUIRE(o.code == cli::kExitOk);
  const json j = json::parse(o.out);
  CHECK(std::abs(j["delta"].get<double>() - 9.8696044) <= 1e-7);
  CHECK(j["method"] == "trial");
}

TEST_CASE("bound: both methods report trial below optimal") {
  const auto o = run({"bound", "--family", "quaternion-kahler", "--m", "2", "--k1", "1", "--k2", "1", "--diameter",
                      "1.2", "--trial", "sine-scaled", "--omega", "1"});
  REQUIRE(o.code == cli::kExitOk);
  const json j = json::parse(o.out);
  CHECK(j["trial"]["delta"].get<double>() <= j["optimal"]["delta"].get<double>());
  CHECK(j["trial"]["trial"] == "sine-scaled(1)");
}

TEST_CASE("verify: all rows pass") {
  const auto o = run({"verify"});
  CHECK(o.code == cli::kExitOk);
  const auto rows = lines(o.out);
  REQUIRE(rows.size() > 1);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    INFO(rows[i]);
    CHECK(rows[i].find("| pass") != std::string::npos);
    CHECK(rows[i].find("FAIL") == std::string::npos);
  }
}

TEST_CASE("admissibility failures exit with the usage code and name the constraint") {
  const auto k1 = run({"bound", "--family", "kahler", "--m", "2", "--k1", "1", "--k2", "0", "--diameter",
                       "1.5707963267948966"});
  CHECK(k1.code == cli::kExitUsage);
  CHECK(k1.err.find("AdmissibilityError") != std::string::npos);
  CHECK(k1.err.find("π/(2√k₁)") != std::string::npos);
  const auto k2 = run({"bound", "--family", "kahler", "--m", "2", "--k1", "0", "--k2", "1", "--diameter",
                       "3.141592653589793"});
  CHECK(k2.code == cli::kExitUsage);
  CHECK(k2.err.find("π/√k₂") != std::string::npos);
  const auto clipped = run({"bound", "--family", "kahler", "--m", "2", "--k1", "1", "--k2", "0", "--diameter",
                            "1.5707963267948966", "--clip-diameter", "--method", "trial"});
  CHECK(clipped.code == cli::kExitOk);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == cli::kExitUsage);
  CHECK(run({"frobnicate"}).code == cli::kExitUsage);
  CHECK(run({"bound", "--n", "3", "--k", "0", "--diameter", "1"}).code == cli::kExitUsage);
  CHECK(run({"bound", "--family", "riemannian", "--n", "3", "--k", "0"}).code == cli::kExitUsage);
  CHECK(run({"bound", "--family", "riemannian", "--n", "3", "--diameter", "1"}).code == cli::kExitUsage);
  CHECK(run({"bound", "--family", "riemannian", "--n", "3", "--k", "0", "--diameter", "1", "--method", "exact"})
            .code == cli::kExitUsage);
  const auto mono = run({"bound", "--family", "riemannian", "--n", "3", "--k", "0", "--diameter", "3", "--method",
                         "trial", "--trial", "sine-scaled", "--omega", "1"});
  CHECK(mono.code == cli::kExitUsage);
  CHECK(mono.err.find("MonotonicityError") != std::string::npos);
  CHECK(run({"bound", "--help"}).code == cli::kExitOk);
}

TEST_CASE("numeric failures exit with code 1 and the module's error name") {
  const auto o = run({"bound", "--family", "riemannian", "--n", "2", "--k", "-1e6", "--diameter", "2", "--method",
                      "optimal", "--grid", "256"});
  CHECK(o.code == cli::kExitNumeric);
  CHECK(o.err.find("SingularDrift") != std::string::npos);
}

TEST_CASE("sweep: CSV schema and values") {
  const auto o = run({"sweep", "--family", "riemannian", "--n", "3", "--k", "0", "--diameter", "1", "--grid", "64"});
  REQUIRE(o.code == cli::kExitOk);
  CHECK(o.out.find('\r') == std::string::npos);
  const auto rows = lines(o.out);
  REQUIRE(rows.size() == 66);
  CHECK(rows[0] == "r,drift,ratio");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto v = parse_row(rows[i]);
    REQUIRE(v.size() == 3);
    CHECK(v[1] == 0.0);
    CHECK(v[2] == doctest::Approx(-kPi * kPi).epsilon(1e-8));
  }
  const auto js = run({"sweep", "--family", "riemannian", "--n", "3", "--k", "0", "--diameter", "1", "--grid", "64",
                       "--out", "json"});
  CHECK(json::parse(js.out).size() == 65);
}

TEST_CASE("sweep output does not depend on the global locale") {
  const std::vector<std::string> args = {"sweep", "--family", "kahler", "--m", "2", "--k1", "0.5", "--k2", "-1",
                                         "--diameter", "1.3", "--grid", "64"};
  const auto before = run(args);
  std::locale previous;
  bool switched = false;
  for (const char* name : {"de_DE.UTF-8", "de_DE.utf8", "fr_FR.UTF-8"}) {
    try {
      previous = std::locale::global(std::locale(name));
      switched = true;
      break;
    } catch (const std::runtime_error&) {
    }
  }
  const auto after = run(args);
  if (switched) std::locale::global(previous);
  CHECK(before.out == after.out);
  for (const auto& row : lines(after.out)) {
    if (row == "r,drift,ratio") continue;
    CHECK(parse_row(row).size() == 3);
  }
}

TEST_CASE("simulate: CSV schema, summary and byte-identical reruns") {
  const std::vector<std::string> args = {"simulate", "--family", "riemannian", "--n", "3", "--k", "0",
                                         "--diameter", "1", "--t-end", "0.05", "--paths", "500",
                                         "--seed", "42", "--out", "csv"};
  const auto a = run(args);
  REQUIRE(a.code == cli::kExitOk);
  const auto rows = lines(a.out);
  REQUIRE(rows.size() == 33);
  CHECK(rows[0] == "t,mean_g,stderr,coupled_fraction");
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(parse_row(rows[i]).size() == 4);
  CHECK(parse_row(rows.back())[0] == doctest::Approx(0.05));
  CHECK(a.err.find("contraction pass") != std::string::npos);

  auto with_workers = args;
  with_workers.insert(with_workers.end(), {"--workers", "3"});
  const auto b = run(with_workers);
  CHECK(a.out == b.out);
  CHECK(a.err == b.err);
}

TEST_CASE("simulate: JSON carries the simulation and the contraction report") {
  const std::vector<std::string> args = {"simulate", "--family", "kahler", "--m", "1", "--k1", "1",
                                         "--diameter", "1.5", "--t-end", "0.02", "--paths", "300",
                                         "--seed", "7", "--trial", "sine-scaled", "--omega", "1"};
  const auto a = run(args);
  REQUIRE(a.code == cli::kExitOk);
  const json j = json::parse(a.out);
  CHECK(j["sim"]["t"].size() == 32);
  CHECK(j["sim"].contains("stderr"));
  CHECK(j["report"]["checkpoints"].size() == 32);
  CHECK(j["report"]["delta"].get<double>() == doctest::Approx(8.0).epsilon(1e-6));
  CHECK(run(args).out == a.out);
  auto bad = args;
  bad.insert(bad.end(), {"--rho0", "2"});
  CHECK(run(bad).code == cli::kExitUsage);
}

TEST_CASE("catalog: registry listing and consistency checks") {
  const auto list = run({"catalog"});
  REQUIRE(list.code == cli::kExitOk);
  CHECK(json::parse(list.out).size() == 18);
  const auto check = run({"catalog", "--check", "--max-m", "2"});
  CHECK(check.code == cli::kExitOk);
  const json j = json::parse(check.out);
  CHECK(j.size() == 4);
  for (const auto& row : j) CHECK(row["pass"] == true);
}
