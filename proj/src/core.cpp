#include "nmmg/core.hpp"

#include <utility>

namespace nmmg {

std::vector<ConfigViolation> validate_config(const SolverConfig& cfg) {
  std::vector<ConfigViolation> out;
  auto bad = [&out](std::string field, std::string constraint) {
    out.push_back({std::move(field), std::move(constraint)});
  };

  if (!(cfg.memory >= 0)) bad("memory", "N >= 0");
  if (!(cfg.gamma > 0.0)) bad("gamma", "> 0");
  if (!(cfg.eps_crit > 0.0)) bad("eps_crit", "> 0");
  if (!(cfg.max_iter >= 0)) bad("max_iter", ">= 0");
  if (!(cfg.max_ls_trials >= 1)) bad("max_ls_trials", ">= 1");

  if (!(cfg.lambda1 > 0.0)) bad("lambda1", "> 0");
  if (!(cfg.lambda1 <= cfg.lambda2)) bad("lambda1", "<= lambda2");
  if (!(cfg.lambda3 > 0.0)) bad("lambda3", "> 0");
  if (!(cfg.lambda3 <= cfg.lambda4)) bad("lambda3", "<= lambda4");
  if (!(cfg.lambda4 <= 1.0)) bad("lambda4", "<= 1");
  if (!(cfg.window >= 0)) bad("window", "M >= 0");

  if (!(cfg.rho > 0.0 && cfg.rho < 1.0)) bad("rho", "in (0,1)");
  if (!(cfg.delta > 0.0 && cfg.delta < 1.0)) bad("delta", "in (0,1)");

  if (!(cfg.eta_min >= 0.0)) bad("eta_min", ">= 0");
  if (!(cfg.eta_min <= cfg.eta_max)) bad("eta_min", "<= eta_max");
  // eta_max = 1 (pure averaging) is only available behind unsafe_eta.
  const double eta_cap_ok = cfg.unsafe_eta ? (cfg.eta_max <= 1.0) : (cfg.eta_max < 1.0);
  if (!eta_cap_ok) bad("eta_max", cfg.unsafe_eta ? "<= 1" : "< 1");

  if (!(cfg.phi_margin > 1.0)) bad("phi_margin", "mu > 1");
  if (!(cfg.phi_floor > 0.0)) bad("phi_floor", "> 0");

  if (!(cfg.dual_tol > 0.0)) bad("dual_tol", "> 0");
  if (!(cfg.dual_max_iter >= 1)) bad("dual_max_iter", ">= 1");

  return out;
}

void record_iteration(std::vector<IterationRecord>& trace, IterationRecord rec) {
  if (rec.k != static_cast<int>(trace.size())) {
    throw std::invalid_argument("record_iteration: index mismatch, record.k = " +
                                std::to_string(rec.k) + " but trace length is " +
                                std::to_string(trace.size()));
  }
  trace.push_back(std::move(rec));
}

std::string_view to_string(StopReason r) {
  switch (r) {
    case StopReason::Critical: return "critical";
    case StopReason::MaxIter: return "max_iter";
    case StopReason::LineSearchFail: return "line_search_fail";
    case StopReason::NonDescent: return "non_descent";
    case StopReason::DualSolveFail: return "dual_solve_fail";
  }
  return "unknown";
}

std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::MaxType: return "max";
    case Algorithm::AverageType: return "avg";
    case Algorithm::MonotoneBaseline: return "monotone";
    case Algorithm::SteepestDescent: return "sd";
  }
  return "unknown";
}

std::string_view to_string(LsFamily f) {
  return f == LsFamily::MaxType ? "max" : "avg";
}

Algorithm algorithm_from_string(std::string_view s) {
  if (s == "max") return Algorithm::MaxType;
  if (s == "avg") return Algorithm::AverageType;
  if (s == "monotone") return Algorithm::MonotoneBaseline;
  if (s == "sd") return Algorithm::SteepestDescent;
  throw std::invalid_argument("unknown algorithm '" + std::string(s) +
                              "' (expected max|avg|monotone|sd)");
}

LsFamily ls_family_from_string(std::string_view s) {
  if (s == "max") return LsFamily::MaxType;
  if (s == "avg") return LsFamily::AverageType;
  throw std::invalid_argument("unknown line-search family '" + std::string(s) +
                              "' (expected max|avg)");
}

NoConvergence::NoConvergence(int iterations_, double gap_)
    : std::runtime_error("dual solver did not reach tolerance after " +
                         std::to_string(iterations_) + " iterations (gap " +
                         std::to_string(gap_) + ")"),
      iterations(iterations_),
      gap(gap_) {}

NonDescent::NonDescent(double psi_d_)
    : std::runtime_error("computed direction is not a descent direction (psi = " +
                         std::to_string(psi_d_) + ")"),
      psi_d(psi_d_) {}

}  // namespace nmmg
