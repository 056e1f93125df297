#include "nmmg/linesearch.hpp"

namespace nmmg {

namespace {

bool accepts(const Vector& F_trial, const Vector& ref, double rho, double alpha, double psi_d) {
  const double slack = rho * alpha * psi_d;
  return ((F_trial.array() - ref.array()) <= slack).all();
}

}  // namespace

MaxWindow::MaxWindow(int window_param, const Vector& F0) : window_param_(std::max(window_param, 0)) {
  buf_.push_front(F0);
}

void MaxWindow::push(const Vector& F) {
  if (!F.allFinite()) throw std::invalid_argument("MaxWindow::push: non-finite objective vector");
  buf_.push_front(F);
  if (static_cast<int>(buf_.size()) > window_param_ + 1) buf_.pop_back();
}

Vector MaxWindow::component_max() const {
  Vector out = buf_.front();
  for (std::size_t i = 1; i < buf_.size(); ++i) out = out.cwiseMax(buf_[i]);
  return out;
}

AverageState make_average_state(const Vector& F0) { return {1.0, F0}; }

AverageState update_average_state(const AverageState& state, const Vector& F_next, double eta) {
  AverageState next;
  next.Q = eta * state.Q + 1.0;
  next.C = (eta * state.Q * state.C + F_next) / next.Q;
  return next;
}

LineSearchOutcome max_type_search(const ObjectiveFn& F, const Vector& x, const Vector& d,
                                  double psi_d, const MaxWindow& window,
                                  const SolverConfig& cfg) {
  const Vector ref = window.component_max();

  LineSearchOutcome out;
  double alpha = cfg.lambda2;
  const double sigma = cfg.lambda3;
  for (int i = 0; i < cfg.max_ls_trials; ++i) {
    Vector x_trial = x + alpha * d;
    Vector F_trial = F(x_trial);
    if (accepts(F_trial, ref, cfg.rho, alpha, psi_d)) {
      out.accepted = true;
      out.alpha = alpha;
      out.trials = i;
      out.x_new = std::move(x_trial);
      out.F_new = std::move(F_trial);
      return out;
    }
    alpha *= sigma;
  }
  out.trials = cfg.max_ls_trials;
  return out;
}

LineSearchOutcome average_type_search(const ObjectiveFn& F, const Vector& x, const Vector& d,
                                      double psi_d, const AverageState& state,
                                      const SolverConfig& cfg) {
  const double dsq = d.squaredNorm();
  if (dsq <= 0.0) throw std::invalid_argument("average_type_search: zero direction");
  const double tau = -psi_d / dsq;

  LineSearchOutcome out;
  double alpha = tau;
  for (int j = 0; j < cfg.max_ls_trials; ++j) {
    Vector x_trial = x + alpha * d;
    Vector F_trial = F(x_trial);
    if (accepts(F_trial, state.C, cfg.rho, alpha, psi_d)) {
      out.accepted = true;
      out.alpha = alpha;
      out.trials = j;
      out.x_new = std::move(x_trial);
      out.F_new = std::move(F_trial);
      return out;
    }
    alpha *= cfg.delta;
  }
  out.trials = cfg.max_ls_trials;
  return out;
}

}  // namespace nmmg
