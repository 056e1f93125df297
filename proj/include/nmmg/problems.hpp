#pragma once

#include "nmmg/core.hpp"

namespace nmmg {

/// One benchmark problem plus what is known about it analytically.
struct SuiteEntry {
  Problem problem;
  bool convex = false;
  /// Distance from x to the known Pareto-critical set; empty when unknown.
  std::function<double(const Vector&)> pareto_distance;
};

/// Problem families, each instantiated at n in {2, 5, 10}:
///
///   quad2    F1 = 0.5*||x||^2, F2 = 0.5*||x - 2e||^2
///            (convex; Pareto set is the segment [0, 2e])
///   quad3    F_i = 0.5*||x - c_i||^2, c1 = 0, c2 = 2e, c3 alternating (2,0,2,...)
///            (convex; Pareto set is the triangle conv{c1,c2,c3})
///   fonseca  F1 = 1 - exp(-||x - e/sqrt(n)||^2), F2 = 1 - exp(-||x + e/sqrt(n)||^2)
///            (nonconvex; critical set is the segment [-e/sqrt(n), e/sqrt(n)];
///            Fonseca & Fleming, Evolutionary Computation 3(1), 1995)
std::vector<SuiteEntry> suite();

std::vector<std::string> suite_families();

/// Entry lookup by family id and dimension; throws std::invalid_argument for
/// unknown ids or unsupported n.
SuiteEntry make_entry(std::string_view family, int n);

/// Maximum over all m*n Jacobian entries of
///   |central_difference - analytic| / max(1, |analytic|)
/// with central differences (F(x + h e_j) - F(x - h e_j)) / (2h).
/// Throws std::domain_error on non-finite evaluations.
double fd_check(const Problem& problem, const Vector& x, double h);

/// Euclidean distance from p to the segment [a, b].
double distance_to_segment(const Vector& p, const Vector& a, const Vector& b);

/// Euclidean distance from p to the triangle conv{a, b, c} in R^n.
double distance_to_triangle(const Vector& p, const Vector& a, const Vector& b, const Vector& c);

}  // namespace nmmg
