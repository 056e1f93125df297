#pragma once

#include "nmmg/core.hpp"

#include <deque>

namespace nmmg {

/// Ring buffer of the directions accepted at the most recent iterations,
/// newest first, holding at most N entries (N = 0 disables memory entirely).
class DirectionMemory {
 public:
  explicit DirectionMemory(int capacity);

  /// Newest-first insert; evicts the oldest entry beyond capacity.
  void push(const Vector& d);

  /// Number of stored directions, min{k, N} at iteration k.
  int size() const { return static_cast<int>(buf_.size()); }
  int capacity() const { return capacity_; }

  /// j = 0 is d_{k-1}, j = 1 is d_{k-2}, ...
  const Vector& operator[](int j) const { return buf_[static_cast<std::size_t>(j)]; }

 private:
  int capacity_;
  std::deque<Vector> buf_;
};

struct DirectionTerm {
  double beta = 0.0;
  double phi = 0.0;
};

struct DirectionReport {
  Vector d;
  double gamma = 0.0;
  std::vector<DirectionTerm> terms;  // one per stored previous direction
  double psi_v = 0.0;                // psi(x_k, v(x_k))
  double psi_d = 0.0;                // psi(x_k, d_k)
};

/// Memory weight denominator. Takes phi_margin (> 1) times the lower bound
///   (psi(x_k, d_prev) + ||JF(x_k)|| * ||d_prev||) / gamma_k,
/// floored at eps_floor. The base quantity is nonnegative (Cauchy-Schwarz),
/// so the result strictly exceeds the bound whenever the bound matters.
double phi_kj(double psi_prev, double jac_norm, double d_prev_norm, double gamma,
              double mu, double eps_floor);

/// beta_kj = -psi(x_k, v(x_k)) * pseudo_reciprocal(phi) / N_k; nonnegative
/// since psi(x_k, v(x_k)) <= 0.
double beta_kj(double psi_v, double phi, int n_k);

/// Search direction d_k = gamma*v_k + sum_j beta_kj d_{k-j} (d_0 = gamma*v_0
/// when the memory is empty). Throws NonDescent if psi(x_k, d_k) >= 0, which
/// the construction rules out analytically.
DirectionReport compute_direction(const Vector& v, const Matrix& J,
                                  const DirectionMemory& memory, double gamma, double mu,
                                  double eps_floor, bool force_beta_zero = false);

}  // namespace nmmg
