#include "nmmg/problems.hpp"

#include <algorithm>
#include <cmath>

namespace nmmg {

namespace {

constexpr int kDims[] = {2, 5, 10};

Vector constant(int n, double value) { return Vector::Constant(n, value); }

Vector alternating(int n, double value) {
  Vector c = Vector::Zero(n);
  for (int i = 0; i < n; i += 2) c[i] = value;
  return c;
}

SuiteEntry make_quad2(int n) {
  const Vector a = Vector::Zero(n);
  const Vector b = constant(n, 2.0);

  Problem p;
  p.name = "quad2_n" + std::to_string(n);
  p.n = n;
  p.m = 2;
  p.eval_F = [a, b](const Vector& x) {
    Vector F(2);
    F[0] = 0.5 * (x - a).squaredNorm();
    F[1] = 0.5 * (x - b).squaredNorm();
    return F;
  };
  p.eval_J = [a, b, n](const Vector& x) {
    Matrix J(2, n);
    J.row(0) = (x - a).transpose();
    J.row(1) = (x - b).transpose();
    return J;
  };
  p.box_lo = constant(n, -2.0);
  p.box_hi = constant(n, 4.0);

  SuiteEntry e;
  e.problem = std::move(p);
  e.convex = true;
  e.pareto_distance = [a, b](const Vector& x) { return distance_to_segment(x, a, b); };
  return e;
}

SuiteEntry make_quad3(int n) {
  const Vector c1 = Vector::Zero(n);
  const Vector c2 = constant(n, 2.0);
  const Vector c3 = alternating(n, 2.0);

  Problem p;
  p.name = "quad3_n" + std::to_string(n);
  p.n = n;
  p.m = 3;
  p.eval_F = [c1, c2, c3](const Vector& x) {
    Vector F(3);
    F[0] = 0.5 * (x - c1).squaredNorm();
    F[1] = 0.5 * (x - c2).squaredNorm();
    F[2] = 0.5 * (x - c3).squaredNorm();
    return F;
  };
  p.eval_J = [c1, c2, c3, n](const Vector& x) {
    Matrix J(3, n);
    J.row(0) = (x - c1).transpose();
    J.row(1) = (x - c2).transpose();
    J.row(2) = (x - c3).transpose();
    return J;
  };
  p.box_lo = constant(n, -2.0);
  p.box_hi = constant(n, 4.0);

  SuiteEntry e;
  e.problem = std::move(p);
  e.convex = true;
  e.pareto_distance = [c1, c2, c3](const Vector& x) {
    return distance_to_triangle(x, c1, c2, c3);
  };
  return e;
}

SuiteEntry make_fonseca(int n) {
  const Vector a = constant(n, 1.0 / std::sqrt(static_cast<double>(n)));

  Problem p;
  p.name = "fonseca_n" + std::to_string(n);
  p.n = n;
  p.m = 2;
  p.eval_F = [a](const Vector& x) {
    Vector F(2);
    F[0] = 1.0 - std::exp(-(x - a).squaredNorm());
    F[1] = 1.0 - std::exp(-(x + a).squaredNorm());
    return F;
  };
  p.eval_J = [a, n](const Vector& x) {
    Matrix J(2, n);
    J.row(0) = 2.0 * std::exp(-(x - a).squaredNorm()) * (x - a).transpose();
    J.row(1) = 2.0 * std::exp(-(x + a).squaredNorm()) * (x + a).transpose();
    return J;
  };
  p.box_lo = constant(n, -0.5);
  p.box_hi = constant(n, 0.5);

  SuiteEntry e;
  e.problem = std::move(p);
  e.convex = false;
  e.pareto_distance = [a](const Vector& x) { return distance_to_segment(x, -a, a); };
  return e;
}

}  // namespace

std::vector<std::string> suite_families() { return {"quad2", "quad3", "fonseca"}; }

SuiteEntry make_entry(std::string_view family, int n) {
  if (std::find(std::begin(kDims), std::end(kDims), n) == std::end(kDims)) {
    throw std::invalid_argument("make_entry: unsupported dimension " + std::to_string(n) +
                                " (supported: 2, 5, 10)");
  }
  if (family == "quad2") return make_quad2(n);
  if (family == "quad3") return make_quad3(n);
  if (family == "fonseca") return make_fonseca(n);
  throw std::invalid_argument("make_entry: unknown problem family '" + std::string(family) + "'");
}

std::vector<SuiteEntry> suite() {
  std::vector<SuiteEntry> out;
  for (const auto& family : suite_families()) {
    for (int n : kDims) out.push_back(make_entry(family, n));
  }
  return out;
}

double fd_check(const Problem& problem, const Vector& x, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("fd_check: h must be positive");
  const Matrix J = problem.eval_J(x);
  double worst = 0.0;
  Vector xp = x, xm = x;
  for (int j = 0; j < problem.n; ++j) {
    xp[j] = x[j] + h;
    xm[j] = x[j] - h;
    const Vector Fp = problem.eval_F(xp);
    const Vector Fm = problem.eval_F(xm);
    if (!Fp.allFinite() || !Fm.allFinite()) {
      throw std::domain_error("fd_check: non-finite objective evaluation");
    }
    for (int i = 0; i < problem.m; ++i) {
      const double fd = (Fp[i] - Fm[i]) / (2.0 * h);
      const double err = std::abs(fd - J(i, j)) / std::max(1.0, std::abs(J(i, j)));
      worst = std::max(worst, err);
    }
    xp[j] = x[j];
    xm[j] = x[j];
  }
  return worst;
}

double distance_to_segment(const Vector& p, const Vector& a, const Vector& b) {
  const Vector ab = b - a;
  const double len2 = ab.squaredNorm();
  const double t = len2 > 0.0 ? std::clamp((p - a).dot(ab) / len2, 0.0, 1.0) : 0.0;
  return (p - (a + t * ab)).norm();
}

// Closest point on a triangle via the Voronoi-region walk (Ericson,
// Real-Time Collision Detection, 5.1.5); dot products only, so it holds in
// any ambient dimension.
double distance_to_triangle(const Vector& p, const Vector& a, const Vector& b, const Vector& c) {
  const Vector ab = b - a;
  const Vector ac = c - a;
  const Vector ap = p - a;
  const double d1 = ab.dot(ap);
  const double d2 = ac.dot(ap);
  if (d1 <= 0.0 && d2 <= 0.0) return (p - a).norm();

  const Vector bp = p - b;
  const double d3 = ab.dot(bp);
  const double d4 = ac.dot(bp);
  if (d3 >= 0.0 && d4 <= d3) return (p - b).norm();

  const double vc = d1 * d4 - d3 * d2;
  if (vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0) {
    const double v = d1 / (d1 - d3);
    return (p - (a + v * ab)).norm();
  }

  const Vector cp = p - c;
  const double d5 = ab.dot(cp);
  const double d6 = ac.dot(cp);
  if (d6 >= 0.0 && d5 <= d6) return (p - c).norm();

  const double vb = d5 * d2 - d1 * d6;
  if (vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0) {
    const double w = d2 / (d2 - d6);
    return (p - (a + w * ac)).norm();
  }

  const double va = d3 * d6 - d5 * d4;
  if (va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0) {
    const double w = (d4 - d3) / ((d4 - d3) + (d5 - d6));
    return (p - (b + w * (c - b))).norm();
  }

  const double denom = 1.0 / (va + vb + vc);
  const double v = vb * denom;
  const double w = vc * denom;
  return (p - (a + v * ab + w * ac)).norm();
}

}  // namespace nmmg
