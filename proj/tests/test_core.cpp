#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nmmg/core.hpp"

using namespace nmmg;

namespace {

bool mentions(const std::vector<ConfigViolation>& v, const std::string& field) {
  for (const auto& item : v) {
    if (item.field == field) return true;
  }
  return false;
}

IterationRecord record_with_k(int k) {
  IterationRecord rec;
  rec.k = k;
  rec.x = Vector::Zero(2);
  rec.F = Vector::Zero(2);
  rec.ls_ref = Vector::Zero(2);
  return rec;
}

}  // namespace

TEST_CASE("default config is valid") {
  CHECK(validate_config(SolverConfig{}).empty());
}

TEST_CASE("config example: rho=0.5 delta=0.5 eta=[0,0.85] accepted") {
  SolverConfig cfg;
  cfg.rho = 0.5;
  cfg.delta = 0.5;
  cfg.eta_min = 0.0;
  cfg.eta_max = 0.85;
  CHECK(validate_config(cfg).empty());
}

TEST_CASE("config example: rho=1 rejected (open interval)") {
  SolverConfig cfg;
  cfg.rho = 1.0;
  const auto v = validate_config(cfg);
  REQUIRE(v.size() == 1);
  CHECK(v[0].field == "rho");
}

TEST_CASE("config example: lambda3 > lambda4 rejected") {
  SolverConfig cfg;
  cfg.lambda3 = 0.6;
  cfg.lambda4 = 0.5;
  const auto v = validate_config(cfg);
  CHECK(mentions(v, "lambda3"));
}

TEST_CASE("validate_config reports the complete violation list") {
  SolverConfig cfg;
  cfg.rho = 0.0;
  cfg.delta = 1.0;
  cfg.gamma = -1.0;
  cfg.memory = -2;
  cfg.eta_min = 0.9;  // also > eta_max
  const auto v = validate_config(cfg);
  CHECK(mentions(v, "rho"));
  CHECK(mentions(v, "delta"));
  CHECK(mentions(v, "gamma"));
  CHECK(mentions(v, "memory"));
  CHECK(mentions(v, "eta_min"));
  CHECK(v.size() >= 5);
}

TEST_CASE("eta_max = 1 needs the unsafe flag") {
  SolverConfig cfg;
  cfg.eta_max = 1.0;
  CHECK(mentions(validate_config(cfg), "eta_max"));
  cfg.unsafe_eta = true;
  CHECK(validate_config(cfg).empty());
  cfg.eta_max = 1.5;
  CHECK(mentions(validate_config(cfg), "eta_max"));
}

TEST_CASE("boundary values for the lambda ranges") {
  SolverConfig cfg;
  cfg.lambda1 = cfg.lambda2 = 2.0;  // lambda2 > 1 is fine, only lambda4 <= 1
  cfg.lambda3 = cfg.lambda4 = 1.0;
  CHECK(validate_config(cfg).empty());
  cfg.lambda4 = 1.1;
  CHECK(mentions(validate_config(cfg), "lambda4"));
}

TEST_CASE("record_iteration appends in order") {
  std::vector<IterationRecord> trace;
  record_iteration(trace, record_with_k(0));
  CHECK(trace.size() == 1);

  record_iteration(trace, record_with_k(1));
  record_iteration(trace, record_with_k(2));
  record_iteration(trace, record_with_k(3));
  CHECK(trace.size() == 4);

  for (std::size_t i = 0; i < trace.size(); ++i) {
    CHECK(trace[i].k == static_cast<int>(i));
  }
}

TEST_CASE("record_iteration rejects index mismatch") {
  std::vector<IterationRecord> trace;
  record_iteration(trace, record_with_k(0));
  record_iteration(trace, record_with_k(1));
  record_iteration(trace, record_with_k(2));
  CHECK_THROWS_AS(record_iteration(trace, record_with_k(5)), std::invalid_argument);
  CHECK_THROWS_AS(record_iteration(trace, record_with_k(2)), std::invalid_argument);
  CHECK(trace.size() == 3);
}

TEST_CASE("enum string round trips") {
  for (const Algorithm a : {Algorithm::MaxType, Algorithm::AverageType,
                            Algorithm::MonotoneBaseline, Algorithm::SteepestDescent}) {
    CHECK(algorithm_from_string(to_string(a)) == a);
  }
  CHECK_THROWS_AS(algorithm_from_string("nope"), std::invalid_argument);
  CHECK(ls_family_from_string("max") == LsFamily::MaxType);
  CHECK(ls_family_from_string("avg") == LsFamily::AverageType);
  CHECK_THROWS_AS(ls_family_from_string(""), std::invalid_argument);
}

TEST_CASE("RunResult::iterations counts accepted steps") {
  RunResult r;
  CHECK(r.iterations() == 0);
  r.trace.push_back(record_with_k(0));
  CHECK(r.iterations() == 0);  // terminal row only
  r.trace.push_back(record_with_k(1));
  CHECK(r.iterations() == 1);
}
