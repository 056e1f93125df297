#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nmmg/criticality.hpp"
#include "nmmg/rng.hpp"
#include "oracles.hpp"

#include <cmath>

using namespace nmmg;

namespace {

Matrix rows2(std::initializer_list<double> r0, std::initializer_list<double> r1) {
  Matrix J(2, static_cast<Eigen::Index>(r0.size()));
  Eigen::Index j = 0;
  for (double v : r0) J(0, j++) = v;
  j = 0;
  for (double v : r1) J(1, j++) = v;
  return J;
}

Vector vec(std::initializer_list<double> vals) {
  Vector v(static_cast<Eigen::Index>(vals.size()));
  Eigen::Index i = 0;
  for (double x : vals) v[i++] = x;
  return v;
}

}  // namespace

TEST_CASE("psi: single objective inner product") {
  Matrix J(1, 2);
  J << 2.0, -1.0;
  CHECK(psi(J, vec({1.0, 1.0})) == 1.0);
}

TEST_CASE("psi: zero direction gives zero") {
  SplitMix64 rng(3);
  for (int t = 0; t < 20; ++t) {
    const Matrix J = oracle::random_jacobian(rng, 1 + static_cast<int>(rng.next() % 4), 3);
    CHECK(psi(J, Vector::Zero(3)) == 0.0);
  }
}

TEST_CASE("psi: max over objectives") {
  const Matrix J = rows2({1.0, 0.0}, {0.0, 1.0});
  CHECK(psi(J, vec({-1.0, -2.0})) == -1.0);
}

TEST_CASE("psi: dimension mismatch throws") {
  const Matrix J = rows2({1.0, 0.0}, {0.0, 1.0});
  CHECK_THROWS_AS(psi(J, vec({1.0, 2.0, 3.0})), std::invalid_argument);
}

TEST_CASE("psi properties on random instances") {
  SplitMix64 rng(17);
  for (int t = 0; t < 200; ++t) {
    const int m = 1 + static_cast<int>(rng.next() % 4);
    const int n = 1 + static_cast<int>(rng.next() % 5);
    const Matrix J = oracle::random_jacobian(rng, m, n);
    Vector b1(n), b2(n);
    for (int i = 0; i < n; ++i) {
      b1[i] = rng.uniform(-2.0, 2.0);
      b2[i] = rng.uniform(-2.0, 2.0);
    }

    // positive homogeneity
    const double rho_scale = rng.uniform(0.1, 10.0);
    CHECK(psi(J, rho_scale * b1) ==
          doctest::Approx(rho_scale * psi(J, b1)).epsilon(1e-12));

    // subadditivity
    CHECK(psi(J, b1 + b2) <= psi(J, b1) + psi(J, b2) + 1e-12);

    // Lipschitz-type bound against direct evaluation
    const double lhs = std::abs(psi(J, b1) - psi(J, b2));
    const double rhs = (J * (b1 - b2)).cwiseAbs().maxCoeff();
    CHECK(lhs <= rhs + 1e-12);

    // agreement with the plain-loop evaluation
    CHECK(psi(J, b1) == doctest::Approx(oracle::psi_plain(J, b1)).epsilon(1e-13));
  }
}

TEST_CASE("jacobian_norm: unit rows, 3-4-5 row, zero matrix") {
  CHECK(jacobian_norm(Matrix::Identity(2, 2)) == 1.0);
  CHECK(jacobian_norm(rows2({3.0, 4.0}, {0.0, 1.0})) == 5.0);
  CHECK(jacobian_norm(Matrix::Zero(3, 4)) == 0.0);
}

TEST_CASE("jacobian_norm is the max Euclidean row norm") {
  SplitMix64 rng(5);
  for (int t = 0; t < 50; ++t) {
    const int m = 1 + static_cast<int>(rng.next() % 4);
    const int n = 1 + static_cast<int>(rng.next() % 5);
    const Matrix J = oracle::random_jacobian(rng, m, n);
    double expect = 0.0;
    for (int i = 0; i < m; ++i) {
      double sq = 0.0;
      for (int j = 0; j < n; ++j) sq += J(i, j) * J(i, j);
      expect = std::max(expect, std::sqrt(sq));
    }
    CHECK(jacobian_norm(J) == doctest::Approx(expect).epsilon(1e-14));
  }
}

TEST_CASE("pseudo_reciprocal") {
  CHECK(pseudo_reciprocal(0.0) == 0.0);
  CHECK(pseudo_reciprocal(2.0) == 0.5);
  CHECK(pseudo_reciprocal(-4.0) == -0.25);

  SplitMix64 rng(7);
  for (int t = 0; t < 100; ++t) {
    const double a = rng.uniform(-10.0, 10.0);
    const double prod = a * pseudo_reciprocal(a);
    CHECK((prod == 0.0 || prod == doctest::Approx(1.0).epsilon(1e-15)));
  }
}

TEST_CASE("solve_dual: single objective") {
  Matrix J(1, 2);
  J << 3.0, 4.0;
  const DualSolution ds = solve_dual(J);
  CHECK(ds.lambda.size() == 1);
  CHECK(ds.lambda[0] == 1.0);
  CHECK(ds.v[0] == -3.0);
  CHECK(ds.v[1] == -4.0);
  CHECK(ds.theta == -12.5);
}

TEST_CASE("solve_dual: opposing gradients give a critical point") {
  const Matrix J = rows2({1.0, 0.0}, {-1.0, 0.0});
  const DualSolution ds = solve_dual(J);
  CHECK(ds.lambda[0] == doctest::Approx(0.5));
  CHECK(ds.lambda[1] == doctest::Approx(0.5));
  CHECK(ds.v.norm() == doctest::Approx(0.0));
  CHECK(ds.theta == doctest::Approx(0.0));
  CHECK(is_critical(ds, 1e-6));
}

TEST_CASE("solve_dual: m=3 n=4 seeded instance matches the grid oracle") {
  SplitMix64 rng(42);
  const Matrix J = oracle::random_jacobian(rng, 3, 4);
  const DualSolution ds = solve_dual(J, 1e-10);

  const double f_solver = oracle::dual_objective_plain(J, ds.lambda);
  const double f_grid = oracle::simplex_grid_min(J, 1000);
  CHECK(f_solver <= f_grid + 1e-6);
}

TEST_CASE("solve_dual beats the grid oracle on random m<=4 n<=5 instances") {
  SplitMix64 rng(2024);
  for (int t = 0; t < 40; ++t) {
    const int m = 1 + static_cast<int>(rng.next() % 4);
    const int n = 1 + static_cast<int>(rng.next() % 5);
    const Matrix J = oracle::random_jacobian(rng, m, n);
    const DualSolution ds = solve_dual(J, 1e-10);

    // exact simplex feasibility
    CHECK(ds.lambda.minCoeff() >= 0.0);
    CHECK(std::abs(ds.lambda.sum() - 1.0) <= 1e-12);

    const double f_solver = oracle::dual_objective_plain(J, ds.lambda);
    const double f_grid = oracle::simplex_grid_min(J, m <= 3 ? 1000 : 200);
    CHECK(f_solver <= f_grid + 1e-6);
  }
}

TEST_CASE("dual identities and descent inequalities on random instances") {
  SplitMix64 rng(99);
  for (int t = 0; t < 300; ++t) {
    const int m = 1 + static_cast<int>(rng.next() % 4);
    const int n = 1 + static_cast<int>(rng.next() % 6);
    const Matrix J = oracle::random_jacobian(rng, m, n);
    const DualSolution ds = solve_dual(J, 1e-10);
    const double vsq = ds.v.squaredNorm();

    // v = -J^T lambda by construction; check against a plain-loop evaluation
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int i = 0; i < m; ++i) s += ds.lambda[i] * J(i, j);
      CHECK(ds.v[j] == doctest::Approx(-s).epsilon(1e-14));
    }

    // theta = -0.5*||v||^2 and theta <= 0, with theta < 0 iff ||v|| > 0
    CHECK(ds.theta == -0.5 * vsq);
    CHECK(ds.theta <= 0.0);
    CHECK((ds.theta < 0.0) == (vsq > 0.0));

    // psi(x, v) = theta - 0.5*||v||^2 = -||v||^2 within 10*tol
    const double psi_v = psi(J, ds.v);
    CHECK(std::abs(psi_v - (ds.theta - 0.5 * vsq)) <= 1e-9 * (1.0 + vsq));
    CHECK(std::abs(psi_v + vsq) <= 1e-9 * (1.0 + vsq));

    // strict descent certificate away from criticality
    if (ds.v.norm() > 1e-6) {
      CHECK(psi_v < -0.5 * vsq + 1e-12);
    }

    // alternative theta route (the primal form) agrees
    const double theta_primal = psi_v + 0.5 * vsq;
    CHECK(std::abs(theta_primal - ds.theta) <= 1e-9 * (1.0 + vsq));
  }
}

TEST_CASE("solve_dual error handling") {
  CHECK_THROWS_AS(solve_dual(Matrix(0, 2)), std::invalid_argument);
  Matrix J(1, 2);
  J << 1.0, 2.0;
  CHECK_THROWS_AS(solve_dual(J, 0.0), std::invalid_argument);

  // cap of one inner iteration cannot reach 1e-14 on a spread-out instance
  SplitMix64 rng(1234);
  const Matrix big = oracle::random_jacobian(rng, 4, 5);
  CHECK_THROWS_AS(solve_dual(big, 1e-14, 1), NoConvergence);
  try {
    solve_dual(big, 1e-14, 1);
  } catch (const NoConvergence& e) {
    CHECK(e.iterations == 1);
    CHECK(e.gap > 1e-14);
  }
}

TEST_CASE("is_critical thresholds") {
  DualSolution ds;
  ds.lambda = vec({1.0});
  ds.v = vec({0.0, 0.0});
  ds.theta = 0.0;
  CHECK(is_critical(ds, 1e-6));
  ds.v = vec({1e-3, 0.0});
  CHECK_FALSE(is_critical(ds, 1e-6));
  ds.v = vec({1e-7, 0.0});
  CHECK(is_critical(ds, 1e-6));
}
