#include "nmmg/direction.hpp"

#include "nmmg/criticality.hpp"

#include <algorithm>

namespace nmmg {

DirectionMemory::DirectionMemory(int capacity) : capacity_(std::max(capacity, 0)) {}

void DirectionMemory::push(const Vector& d) {
  if (capacity_ == 0) return;
  if (!d.allFinite()) throw std::invalid_argument("DirectionMemory::push: non-finite direction");
  buf_.push_front(d);
  if (static_cast<int>(buf_.size()) > capacity_) buf_.pop_back();
}

double phi_kj(double psi_prev, double jac_norm, double d_prev_norm, double gamma,
              double mu, double eps_floor) {
  const double bound = (psi_prev + jac_norm * d_prev_norm) / gamma;
  return std::max(mu * bound, eps_floor);
}

double beta_kj(double psi_v, double phi, int n_k) {
  return -psi_v * pseudo_reciprocal(phi) / static_cast<double>(n_k);
}

DirectionReport compute_direction(const Vector& v, const Matrix& J,
                                  const DirectionMemory& memory, double gamma, double mu,
                                  double eps_floor, bool force_beta_zero) {
  DirectionReport rep;
  rep.gamma = gamma;
  rep.psi_v = psi(J, v);
  rep.d = gamma * v;

  const int n_k = memory.size();
  rep.terms.reserve(static_cast<std::size_t>(n_k));
  const double jnorm = n_k > 0 ? jacobian_norm(J) : 0.0;
  for (int j = 0; j < n_k; ++j) {
    const Vector& d_prev = memory[j];
    const double phi = phi_kj(psi(J, d_prev), jnorm, d_prev.norm(), gamma, mu, eps_floor);
    const double beta = force_beta_zero ? 0.0 : beta_kj(rep.psi_v, phi, n_k);
    rep.terms.push_back({beta, phi});
    rep.d += beta * d_prev;
  }

  rep.psi_d = psi(J, rep.d);
  if (rep.psi_d >= 0.0) throw NonDescent(rep.psi_d);
  return rep;
}

}  // namespace nmmg
