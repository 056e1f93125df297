#include "nmmg/audit.hpp"

#include "nmmg/linesearch.hpp"
#include "nmmg/solver.hpp"

#include <cmath>
#include <sstream>

namespace nmmg {

namespace {

constexpr double kSuffDescentSlack = 1e-10;
constexpr double kAcceptanceSlack = 1e-12;
constexpr double kSandwichSlack = 1e-10;
constexpr double kMonotoneSlack = 1e-12;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

bool same(const Vector& a, const Vector& b) {
  return a.size() == b.size() && (a.array() == b.array()).all();
}

}  // namespace

std::string to_string(const AuditIssue& issue) {
  std::ostringstream os;
  os << "[" << issue.invariant << "] k=" << issue.k << ": " << issue.detail;
  return os.str();
}

std::vector<AuditIssue> audit_run(const Problem& problem, const SolverConfig& cfg,
                                  const RunResult& result) {
  std::vector<AuditIssue> issues;
  auto flag = [&issues](int k, std::string invariant, std::string detail) {
    issues.push_back({k, std::move(invariant), std::move(detail)});
  };

  const auto& trace = result.trace;
  if (trace.empty()) {
    flag(-1, "trace-shape", "empty trace");
    return issues;
  }

  const EffectiveParams eff = effective_params(cfg);

  for (std::size_t i = 0; i < trace.size(); ++i) {
    const auto& rec = trace[i];
    const int k = rec.k;
    if (k != static_cast<int>(i)) {
      flag(k, "trace-index", "expected k=" + std::to_string(i));
      continue;
    }

    const bool terminal = i + 1 == trace.size();
    if (terminal && rec.alpha != 0.0) {
      flag(k, "trace-shape", "terminal row has alpha != 0");
    }
    if (!terminal && !(rec.alpha > 0.0)) {
      flag(k, "trace-shape", "step row has alpha <= 0");
    }

    // Objective values must re-evaluate to exactly what was recorded.
    const Vector F_check = problem.eval_F(rec.x);
    if (!same(F_check, rec.F)) {
      flag(k, "objective-consistency", "recorded F does not match a fresh evaluation");
    }

    if (rec.v_norm > cfg.eps_crit && !terminal) {
      if (!(rec.psi_d < 0.0)) {
        flag(k, "descent", "psi(x_k, d_k) = " + fmt(rec.psi_d) + " is not negative");
      }
      if (!(rec.psi_d <= 0.5 * rec.gamma * rec.psi_v + kSuffDescentSlack)) {
        flag(k, "sufficient-descent",
             "psi_d = " + fmt(rec.psi_d) + " exceeds (gamma/2) psi_v = " +
                 fmt(0.5 * rec.gamma * rec.psi_v));
      }
    }

    // Accepted steps must satisfy their acceptance inequality on re-evaluation.
    if (!terminal) {
      const auto& next = trace[i + 1];
      const Vector F_next = problem.eval_F(next.x);
      const double slack = cfg.rho * rec.alpha * rec.psi_d;
      for (int c = 0; c < F_next.size(); ++c) {
        if (!(F_next[c] <= rec.ls_ref[c] + slack + kAcceptanceSlack)) {
          flag(k, "acceptance",
               "objective " + std::to_string(c) + ": F = " + fmt(F_next[c]) +
                   " > ref + rho*alpha*psi_d = " + fmt(rec.ls_ref[c] + slack));
          break;
        }
      }
    }
  }

  if (eff.family == LsFamily::MaxType) {
    // Replay the window maxima and check both the stored references and the
    // nonincreasing max-sequence property.
    Vector prev_max;
    for (std::size_t i = 0; i < trace.size(); ++i) {
      const int mk = std::min<int>(static_cast<int>(i), eff.window);
      Vector wmax = trace[i].F;
      for (int j = 1; j <= mk; ++j) wmax = wmax.cwiseMax(trace[i - static_cast<std::size_t>(j)].F);

      if (!same(wmax, trace[i].ls_ref)) {
        flag(trace[i].k, "ls-ref", "stored window max does not match replay");
      }
      if (i > 0 && !((wmax.array() <= prev_max.array() + kMonotoneSlack).all())) {
        flag(trace[i].k, "window-monotonicity", "window max increased");
      }
      prev_max = wmax;
    }
  } else {
    // Replay (C_k, Q_k) and the running average A_k.
    AverageState state = make_average_state(trace[0].F);
    Vector avg = trace[0].F;
    const double q_cap = eff.eta < 1.0 ? 1.0 / (1.0 - eff.eta) : 0.0;

    for (std::size_t i = 0; i < trace.size(); ++i) {
      const auto& rec = trace[i];
      if (!same(state.C, rec.ls_ref)) {
        flag(rec.k, "ls-ref", "stored C_k does not match replay");
      }
      if (!((rec.F.array() <= state.C.array() + kSandwichSlack).all())) {
        flag(rec.k, "sandwich", "F(x_k) <= C_k violated");
      }
      if (!((state.C.array() <= avg.array() + kSandwichSlack).all())) {
        flag(rec.k, "sandwich", "C_k <= A_k violated");
      }
      if (eff.eta < 1.0 && !(state.Q <= q_cap + kMonotoneSlack)) {
        flag(rec.k, "q-bound", "Q_k = " + fmt(state.Q) + " exceeds 1/(1-eta) = " + fmt(q_cap));
      }

      if (i + 1 < trace.size()) {
        const Vector& F_next = trace[i + 1].F;
        // Accepted-branch decrease: C_k - F(x_{k+1}) >= rho*alpha*|psi_d|*e.
        const double gain = cfg.rho * rec.alpha * std::abs(rec.psi_d);
        for (int c = 0; c < F_next.size(); ++c) {
          if (!(state.C[c] - F_next[c] >= gain - kAcceptanceSlack)) {
            flag(rec.k, "per-step-decrease",
                 "objective " + std::to_string(c) + ": C - F_next = " +
                     fmt(state.C[c] - F_next[c]) + " < " + fmt(gain));
            break;
          }
        }

        const AverageState next = update_average_state(state, F_next, eff.eta);
        if (!((next.C.array() <= state.C.array() + kMonotoneSlack).all())) {
          flag(rec.k, "c-monotonicity", "C_{k+1} > C_k");
        }
        avg = (static_cast<double>(i + 1) * avg + F_next) / static_cast<double>(i + 2);
        state = next;
      }
    }
  }

  const auto& last = trace.back();
  if (result.stop_reason == StopReason::Critical && !(last.v_norm <= cfg.eps_crit)) {
    flag(last.k, "final-criticality",
         "stop reason is critical but ||v|| = " + fmt(last.v_norm) + " > eps");
  }
  if (!same(result.final_x, last.x) || !same(result.final_F, last.F)) {
    flag(last.k, "trace-shape", "final point does not match the terminal row");
  }

  return issues;
}

}  // namespace nmmg
