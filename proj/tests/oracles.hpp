#pragma once

// Test-only reference computations and stress fixtures. The oracle functions
// are written with plain loops so they share no code path with the library
// implementations they check.

#include "nmmg/core.hpp"
#include "nmmg/rng.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <limits>
#include <vector>

namespace oracle {

using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Separated quartics F_i = 0.25*||x - c_i||^4. Steep far from the minimizers
/// and flat near them, so the Armijo ladders genuinely backtrack and the
/// nonmonotone references accept uphill steps. Used as a stress fixture only:
/// its endpoint tails converge too slowly for the convergence-rate criteria.
inline nmmg::Problem stress_quartic(int n) {
  nmmg::Problem p;
  p.name = "stress_quartic_n" + std::to_string(n);
  p.n = n;
  p.m = 2;
  const nmmg::Vector a = nmmg::Vector::Zero(n);
  const nmmg::Vector b = nmmg::Vector::Constant(n, 2.0);
  p.eval_F = [a, b](const nmmg::Vector& x) {
    nmmg::Vector F(2);
    F[0] = 0.25 * std::pow((x - a).squaredNorm(), 2);
    F[1] = 0.25 * std::pow((x - b).squaredNorm(), 2);
    return F;
  };
  p.eval_J = [a, b](const nmmg::Vector& x) {
    nmmg::Matrix J(2, x.size());
    J.row(0) = (x - a).squaredNorm() * (x - a).transpose();
    J.row(1) = (x - b).squaredNorm() * (x - b).transpose();
    return J;
  };
  p.box_lo = nmmg::Vector::Constant(n, -2.0);
  p.box_hi = nmmg::Vector::Constant(n, 4.0);
  return p;
}

inline MatrixXd random_jacobian(nmmg::SplitMix64& rng, int m, int n, double lo = -1.0,
                                double hi = 1.0) {
  MatrixXd J(m, n);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) J(i, j) = rng.uniform(lo, hi);
  }
  return J;
}

inline double psi_plain(const MatrixXd& J, const VectorXd& d) {
  double best = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < J.rows(); ++i) {
    double dot = 0.0;
    for (int j = 0; j < J.cols(); ++j) dot += J(i, j) * d[j];
    if (dot > best) best = dot;
  }
  return best;
}

/// Brute-force minimum of 0.5*||sum_i (k_i/K) grad F_i||^2 over the simplex
/// grid {k/K : k integer, sum k = K}, evaluated from scratch at every node.
inline double simplex_grid_min(const MatrixXd& J, int K) {
  const int m = static_cast<int>(J.rows());
  const int n = static_cast<int>(J.cols());
  std::vector<int> ks(static_cast<std::size_t>(m), 0);
  double best = std::numeric_limits<double>::infinity();

  std::function<void(int, int)> rec = [&](int row, int remaining) {
    if (row == m - 1) {
      ks[static_cast<std::size_t>(row)] = remaining;
      double sq = 0.0;
      for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int i = 0; i < m; ++i) {
          s += static_cast<double>(ks[static_cast<std::size_t>(i)]) / K * J(i, j);
        }
        sq += s * s;
      }
      if (0.5 * sq < best) best = 0.5 * sq;
      return;
    }
    for (int k = 0; k <= remaining; ++k) {
      ks[static_cast<std::size_t>(row)] = k;
      rec(row + 1, remaining - k);
    }
  };
  rec(0, K);
  return best;
}

/// Dual objective 0.5*||J^T lambda||^2 recomputed with plain loops.
inline double dual_objective_plain(const MatrixXd& J, const VectorXd& lambda) {
  double sq = 0.0;
  for (int j = 0; j < J.cols(); ++j) {
    double s = 0.0;
    for (int i = 0; i < J.rows(); ++i) s += lambda[i] * J(i, j);
    sq += s * s;
  }
  return 0.5 * sq;
}

}  // namespace oracle
