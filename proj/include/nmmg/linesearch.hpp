#pragma once

#include "nmmg/core.hpp"

#include <deque>

namespace nmmg {

using ObjectiveFn = std::function<Vector(const Vector&)>;

/// Ring of the last M(k)+1 objective vectors, newest first. The max-type
/// search accepts against the componentwise maximum over this window.
class MaxWindow {
 public:
  MaxWindow(int window_param, const Vector& F0);

  void push(const Vector& F);
  Vector component_max() const;

  int size() const { return static_cast<int>(buf_.size()); }
  int window_param() const { return window_param_; }

 private:
  int window_param_;  // M
  std::deque<Vector> buf_;
};

/// Averaged-reference state (C_k, Q_k); Q_0 = 1 and C_0 = F(x_0).
struct AverageState {
  double Q = 1.0;
  Vector C;
};

AverageState make_average_state(const Vector& F0);

/// Q_{k+1} = eta*Q_k + 1, C_{k+1} = (eta*Q_k*C_k + F_next) / Q_{k+1}.
/// eta = 0 resets C to the latest objective vector (monotone Armijo);
/// eta = 1 keeps the running average of all objective vectors.
AverageState update_average_state(const AverageState& state, const Vector& F_next, double eta);

struct LineSearchOutcome {
  bool accepted = false;
  double alpha = 0.0;
  int trials = 0;  // rejected steps (= h_k for the average-type search)
  Vector x_new;    // accepted trial point x + alpha*d
  Vector F_new;    // objective at x_new
};

/// Backtracks alpha over lambda2 * lambda3^i until every objective satisfies
///   F_i(x + alpha d) <= window_max_i + rho * alpha * psi_d.
/// Gives up (accepted = false) after cfg.max_ls_trials rejections.
LineSearchOutcome max_type_search(const ObjectiveFn& F, const Vector& x, const Vector& d,
                                  double psi_d, const MaxWindow& window,
                                  const SolverConfig& cfg);

/// Backtracks alpha over tau * delta^j, tau = -psi_d / ||d||^2, until every
/// objective satisfies F_i(x + alpha d) <= C_i + rho * alpha * psi_d.
LineSearchOutcome average_type_search(const ObjectiveFn& F, const Vector& x, const Vector& d,
                                      double psi_d, const AverageState& state,
                                      const SolverConfig& cfg);

}  // namespace nmmg
