#include "nmmg/criticality.hpp"

#include <algorithm>
#include <cmath>

namespace nmmg {

namespace {

void require_finite(const Matrix& J, const char* who) {
  if (!J.allFinite()) throw std::invalid_argument(std::string(who) + ": non-finite Jacobian");
}

DualSolution assemble(const Matrix& J, Vector lambda) {
  // Exact simplex feasibility: clamp rounding dust, renormalize.
  lambda = lambda.cwiseMax(0.0);
  const double s = lambda.sum();
  if (s > 0.0) lambda /= s;
  else lambda.setConstant(1.0 / static_cast<double>(lambda.size()));

  DualSolution ds;
  ds.v = -(J.transpose() * lambda);
  ds.theta = -0.5 * ds.v.squaredNorm();
  ds.lambda = std::move(lambda);
  return ds;
}

// min over t in [0,1] of 0.5*||t g1 + (1-t) g2||^2, returned as the weight
// on g1. Stationary point t* = <g2, g2-g1> / ||g1-g2||^2, clamped.
double two_objective_weight(const Vector& g1, const Vector& g2) {
  const Vector diff = g1 - g2;
  const double denom = diff.squaredNorm();
  if (denom == 0.0) return 0.5;
  const double t = -g2.dot(diff) / denom;
  return std::clamp(t, 0.0, 1.0);
}

// Fully-corrective step on the support of a Frank-Wolfe iterate: solves the
// equality-constrained problem min 0.5 lam' G lam s.t. sum lam = 1 restricted
// to the support and keeps the result when it is feasible and at least as
// good. Near-critical points need this: a gap certificate of 1e-10 alone only
// pins ||v|| down to about 1e-5.
Vector refine_on_support(const Matrix& G, const Vector& lambda) {
  const auto m = lambda.size();
  std::vector<Eigen::Index> support;
  for (Eigen::Index i = 0; i < m; ++i) {
    if (lambda[i] > 0.0) support.push_back(i);
  }
  const auto s = static_cast<Eigen::Index>(support.size());
  if (s <= 1) return lambda;

  Matrix kkt = Matrix::Zero(s + 1, s + 1);
  for (Eigen::Index a = 0; a < s; ++a) {
    for (Eigen::Index b = 0; b < s; ++b) kkt(a, b) = G(support[a], support[b]);
    kkt(a, s) = 1.0;
    kkt(s, a) = 1.0;
  }
  Vector rhs = Vector::Zero(s + 1);
  rhs[s] = 1.0;

  const Vector sol = kkt.fullPivLu().solve(rhs);
  if (!sol.allFinite() || (kkt * sol - rhs).cwiseAbs().maxCoeff() > 1e-8) return lambda;

  Vector candidate = Vector::Zero(m);
  for (Eigen::Index a = 0; a < s; ++a) candidate[support[a]] = sol[a];
  if (candidate.minCoeff() < -1e-10) return lambda;
  candidate = candidate.cwiseMax(0.0);
  const double total = candidate.sum();
  if (!(total > 0.0)) return lambda;
  candidate /= total;

  const double f_old = lambda.dot(G * lambda);
  const double f_new = candidate.dot(G * candidate);
  return f_new <= f_old ? candidate : lambda;
}

}  // namespace

double psi(const Matrix& J, const Vector& d) {
  if (J.cols() != d.size()) {
    throw std::invalid_argument("psi: dimension mismatch, Jacobian has " +
                                std::to_string(J.cols()) + " columns but d has " +
                                std::to_string(d.size()) + " entries");
  }
  return (J * d).maxCoeff();
}

double jacobian_norm(const Matrix& J) {
  require_finite(J, "jacobian_norm");
  return J.rowwise().norm().maxCoeff();
}

double pseudo_reciprocal(double a) { return a == 0.0 ? 0.0 : 1.0 / a; }

DualSolution solve_dual(const Matrix& J, double tol, int max_iter) {
  const auto m = J.rows();
  if (m < 1) throw std::invalid_argument("solve_dual: at least one objective required");
  if (!(tol > 0.0)) throw std::invalid_argument("solve_dual: tol must be positive");
  require_finite(J, "solve_dual");

  if (m == 1) {
    Vector lambda(1);
    lambda[0] = 1.0;
    return assemble(J, std::move(lambda));
  }
  if (m == 2) {
    Vector lambda(2);
    lambda[0] = two_objective_weight(J.row(0), J.row(1));
    lambda[1] = 1.0 - lambda[0];
    return assemble(J, std::move(lambda));
  }

  // Frank-Wolfe with away steps on f(lambda) = 0.5 lambda' G lambda, G = J J'.
  // The FW gap <g, lambda> - min_i g_i bounds f(lambda) - f* from above, so
  // gap <= tol certifies the tolerance contract directly.
  const Matrix G = J * J.transpose();

  Eigen::Index start;
  G.diagonal().minCoeff(&start);
  Vector lambda = Vector::Zero(m);
  lambda[start] = 1.0;

  for (int it = 0; it < max_iter; ++it) {
    const Vector g = G * lambda;

    Eigen::Index s;
    const double g_min = g.minCoeff(&s);
    const double gap = lambda.dot(g) - g_min;
    if (gap <= tol) return assemble(J, refine_on_support(G, lambda));

    // Away vertex: the worst coordinate currently in the support.
    Eigen::Index a = s;
    double g_away = -std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < m; ++i) {
      if (lambda[i] > 0.0 && g[i] > g_away) {
        g_away = g[i];
        a = i;
      }
    }
    const double gap_away = g_away - lambda.dot(g);

    Vector dir;
    double step_max;
    if (gap >= gap_away) {
      dir = -lambda;
      dir[s] += 1.0;
      step_max = 1.0;
    } else {
      dir = lambda;
      dir[a] -= 1.0;
      const double la = lambda[a];
      step_max = la < 1.0 ? la / (1.0 - la) : 1.0;
    }

    const double slope = g.dot(dir);       // < 0 for either choice
    const double curv = dir.dot(G * dir);  // >= 0
    double step = step_max;
    if (curv > 0.0) step = std::clamp(-slope / curv, 0.0, step_max);
    if (step == 0.0) throw NoConvergence(it, gap);  // stalled above tolerance

    lambda += step * dir;
    lambda = lambda.cwiseMax(0.0);
  }

  const Vector g = G * lambda;
  throw NoConvergence(max_iter, lambda.dot(g) - g.minCoeff());
}

bool is_critical(const DualSolution& ds, double eps_crit) {
  return ds.v.norm() <= eps_crit;
}

}  // namespace nmmg
