#include "clonesim/sampling.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace clonesim {

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

int Rng::integer(int lo, int hi) {
  if (hi < lo) throw std::domain_error("Rng::integer: empty range");
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(engine_() % span);
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

Complex Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return {re, im};
}

PureQudit random_pure_qudit(int d, Rng& rng) {
  if (d < 2) throw std::domain_error("random_pure_qudit: dimension must be at least 2");
  Eigen::VectorXcd x(d);
  for (int i = 0; i < d; ++i) x(i) = rng.complex_normal();
  return PureQudit::normalized(x);
}

Eigen::MatrixXcd random_unitary(int d, Rng& rng) {
  Eigen::MatrixXcd g(d, d);
  for (int c = 0; c < d; ++c)
    for (int r = 0; r < d; ++r) g(r, c) = rng.complex_normal();
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < d; ++i) {
    const double mag = std::abs(r(i, i));
    if (mag > 0.0) q.col(i) *= r(i, i) / mag;
  }
  return q;
}

Eigen::MatrixXcd random_density_matrix(int n, int rank, Rng& rng) {
  if (rank < 1 || rank > n) throw std::domain_error("random_density_matrix: invalid rank");
  Eigen::MatrixXcd g(n, rank);
  for (int c = 0; c < rank; ++c)
    for (int r = 0; r < n; ++r) g(r, c) = rng.complex_normal();
  Eigen::MatrixXcd rho = g * g.adjoint();
  rho /= rho.trace().real();
  return 0.5 * (rho + rho.adjoint());
}

}  // namespace clonesim
