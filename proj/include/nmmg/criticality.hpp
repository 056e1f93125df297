#pragma once

#include "nmmg/core.hpp"

namespace nmmg {

/// Weights, direction and value of the min-norm steepest-descent subproblem
/// at a point: lambda lies in the unit simplex, v = -J^T lambda, and
/// theta = -0.5*||v||^2 <= 0. theta = 0 exactly when the point is critical.
struct DualSolution {
  Vector lambda;
  Vector v;
  double theta = 0.0;
};

/// psi(x, d) = max_i <grad F_i(x), d>. Negative psi certifies that d is a
/// descent direction for every objective at once.
double psi(const Matrix& J, const Vector& d);

/// Matrix norm used throughout: the maximum Euclidean row norm.
double jacobian_norm(const Matrix& J);

/// Pseudo-reciprocal: 0 at 0, 1/a otherwise, so a * pseudo_reciprocal(a)
/// is either 0 or 1.
double pseudo_reciprocal(double a);

/// Solves min over the simplex of 0.5*||sum_i lambda_i grad F_i(x)||^2 and
/// assembles (lambda, v, theta). The returned lambda is renormalized to be
/// exactly feasible, and its objective value is within tol of the minimum.
///
/// m = 1 and m = 2 use closed forms; m >= 3 runs Frank-Wolfe with away steps,
/// whose duality gap doubles as the stopping certificate. Throws NoConvergence
/// if the gap has not reached tol after max_iter inner iterations.
DualSolution solve_dual(const Matrix& J, double tol = 1e-10, int max_iter = 10000);

/// Criticality test: ||v|| <= eps_crit.
bool is_critical(const DualSolution& ds, double eps_crit);

}  // namespace nmmg
