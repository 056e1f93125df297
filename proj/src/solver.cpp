#include "nmmg/solver.hpp"

#include "nmmg/criticality.hpp"
#include "nmmg/direction.hpp"
#include "nmmg/linesearch.hpp"

#include <optional>
#include <sstream>

namespace nmmg {

namespace {

void check_validated(const SolverConfig& cfg) {
  const auto violations = validate_config(cfg);
  if (violations.empty()) return;
  std::ostringstream msg;
  msg << "invalid solver config:";
  for (const auto& v : violations) msg << " [" << v.field << " " << v.constraint << "]";
  throw std::invalid_argument(msg.str());
}

IterationRecord make_record(int k, const Vector& x, const Vector& F, const DualSolution& ds,
                            double psi_v, const Vector& ls_ref) {
  IterationRecord rec;
  rec.k = k;
  rec.x = x;
  rec.F = F;
  rec.v_norm = ds.v.norm();
  rec.theta = ds.theta;
  rec.psi_v = psi_v;
  rec.ls_ref = ls_ref;
  return rec;
}

}  // namespace

// Baselines are the two algorithms with parameters pinned to their
// degenerate values; everything downstream sees a single loop.
EffectiveParams effective_params(const SolverConfig& cfg) {
  EffectiveParams p{LsFamily::MaxType, cfg.memory, cfg.window, cfg.eta_max};
  switch (cfg.algorithm) {
    case Algorithm::MaxType:
      break;
    case Algorithm::AverageType:
      p.family = LsFamily::AverageType;
      break;
    case Algorithm::MonotoneBaseline:
      p.family = cfg.baseline_family;
      if (p.family == LsFamily::MaxType) p.window = 0;
      else p.eta = 0.0;
      break;
    case Algorithm::SteepestDescent:
      p.family = cfg.baseline_family;
      p.memory = 0;
      break;
  }
  return p;
}

RunResult run(const Problem& problem, const Vector& x0, const SolverConfig& user_cfg) {
  check_validated(user_cfg);
  if (x0.size() != problem.n || !x0.allFinite()) {
    throw std::invalid_argument("run: start point must be finite with dimension " +
                                std::to_string(problem.n));
  }

  const EffectiveParams eff = effective_params(user_cfg);
  SolverConfig cfg = user_cfg;
  cfg.memory = eff.memory;
  cfg.window = eff.window;
  const LsFamily family = eff.family;
  const double eta = eff.eta;  // constant eta_k

  RunResult result;
  auto eval_F = [&](const Vector& x) {
    ++result.f_evals;
    return problem.eval_F(x);
  };

  Vector x = x0;
  Vector F = eval_F(x);
  if (F.size() != problem.m) throw std::invalid_argument("run: eval_F returned wrong dimension");

  DirectionMemory memory(cfg.memory);
  std::optional<MaxWindow> window;
  std::optional<AverageState> average;
  if (family == LsFamily::MaxType) window.emplace(cfg.window, F);
  else average = make_average_state(F);

  auto current_ref = [&]() {
    return family == LsFamily::MaxType ? window->component_max() : average->C;
  };

  auto finish = [&](StopReason reason) {
    result.stop_reason = reason;
    result.final_x = x;
    result.final_F = F;
    return result;
  };

  for (int k = 0;; ++k) {
    Matrix J = problem.eval_J(x);
    ++result.j_evals;
    if (J.rows() != problem.m || J.cols() != problem.n) {
      throw std::invalid_argument("run: eval_J returned wrong dimensions");
    }

    DualSolution ds;
    try {
      ds = solve_dual(J, cfg.dual_tol, cfg.dual_max_iter);
      ++result.dual_solves;
    } catch (const NoConvergence&) {
      ++result.dual_solves;
      IterationRecord rec;
      rec.k = k;
      rec.x = x;
      rec.F = F;
      rec.gamma = cfg.gamma;
      rec.ls_ref = current_ref();
      record_iteration(result.trace, std::move(rec));
      return finish(StopReason::DualSolveFail);
    }

    if (is_critical(ds, cfg.eps_crit)) {
      IterationRecord rec = make_record(k, x, F, ds, psi(J, ds.v), current_ref());
      rec.gamma = cfg.gamma;
      record_iteration(result.trace, std::move(rec));
      return finish(StopReason::Critical);
    }
    if (k >= cfg.max_iter) {
      IterationRecord rec = make_record(k, x, F, ds, psi(J, ds.v), current_ref());
      rec.gamma = cfg.gamma;
      record_iteration(result.trace, std::move(rec));
      return finish(StopReason::MaxIter);
    }

    DirectionReport rep;
    try {
      rep = compute_direction(ds.v, J, memory, cfg.gamma, cfg.phi_margin, cfg.phi_floor,
                              cfg.force_beta_zero);
    } catch (const NonDescent& nd) {
      IterationRecord rec = make_record(k, x, F, ds, psi(J, ds.v), current_ref());
      rec.gamma = cfg.gamma;
      rec.psi_d = nd.psi_d;
      record_iteration(result.trace, std::move(rec));
      return finish(StopReason::NonDescent);
    }

    auto search = [&](const DirectionReport& r) {
      return family == LsFamily::MaxType
                 ? max_type_search(eval_F, x, r.d, r.psi_d, *window, cfg)
                 : average_type_search(eval_F, x, r.d, r.psi_d, *average, cfg);
    };

    LineSearchOutcome ls = search(rep);
    if (!ls.accepted && cfg.restart_on_ls_fail && memory.size() > 0) {
      // Retry once from the plain steepest direction with the memory dropped.
      try {
        memory = DirectionMemory(cfg.memory);
        rep = compute_direction(ds.v, J, memory, cfg.gamma, cfg.phi_margin, cfg.phi_floor);
        ls = search(rep);
      } catch (const NonDescent& nd) {
        IterationRecord rec = make_record(k, x, F, ds, psi(J, ds.v), current_ref());
        rec.gamma = cfg.gamma;
        rec.psi_d = nd.psi_d;
        record_iteration(result.trace, std::move(rec));
        return finish(StopReason::NonDescent);
      }
    }
    if (!ls.accepted) {
      IterationRecord rec = make_record(k, x, F, ds, rep.psi_v, current_ref());
      rec.gamma = rep.gamma;
      rec.psi_d = rep.psi_d;
      rec.ls_trials = ls.trials;
      record_iteration(result.trace, std::move(rec));
      return finish(StopReason::LineSearchFail);
    }

    IterationRecord rec = make_record(k, x, F, ds, rep.psi_v, current_ref());
    rec.gamma = rep.gamma;
    rec.psi_d = rep.psi_d;
    rec.alpha = ls.alpha;
    rec.ls_trials = ls.trials;
    record_iteration(result.trace, std::move(rec));

    x = ls.x_new;
    F = ls.F_new;
    memory.push(rep.d);
    if (family == LsFamily::MaxType) window->push(F);
    else average = update_average_state(*average, F, eta);
  }
}

RunResult run_baseline(const Problem& problem, const Vector& x0, const SolverConfig& cfg) {
  if (cfg.algorithm != Algorithm::SteepestDescent &&
      cfg.algorithm != Algorithm::MonotoneBaseline) {
    throw std::invalid_argument("run_baseline: algorithm must be sd or monotone");
  }
  return run(problem, x0, cfg);
}

}  // namespace nmmg
