#include "clonesim/ladder.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace clonesim {

Eigen::MatrixXd LadderHamiltonian::dense() const {
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(size(), size());
  for (int l = 0; l < atoms; ++l) {
    h(l + 1, l) = offdiag[l];
    h(l, l + 1) = offdiag[l];
  }
  return h;
}

LadderHamiltonian ladder_matrix(int d, int atoms, int photons, double gamma) {
  if (d < 2) throw std::domain_error("ladder_matrix: qudit dimension must be at least 2");
  if (atoms < 1) throw std::domain_error("ladder_matrix: need at least one excited atom");
  if (photons < 0) throw std::domain_error("ladder_matrix: photon number must be non-negative");
  if (!std::isfinite(gamma)) throw std::domain_error("ladder_matrix: coupling must be finite");

  LadderHamiltonian h{d, atoms, photons, gamma, {}};
  h.offdiag.reserve(atoms);
  for (int l = 0; l < atoms; ++l) {
    const double w = static_cast<double>(l + 1) * (atoms - l) * (photons + l + d);
    h.offdiag.push_back(gamma * std::sqrt(w));
  }
  return h;
}

EvolutionProfile evolve(const LadderHamiltonian& h, double t) {
  if (!std::isfinite(t)) throw std::domain_error("evolve: time must be finite");

  const int n = h.size();
  EvolutionProfile profile;
  profile.t = t;
  if (t == 0.0) {
    // exact identity rather than V V^T e_0 with rounding
    profile.amplitudes.assign(n, 0.0);
    profile.amplitudes[0] = 1.0;
    profile.probabilities.assign(n, 0.0);
    profile.probabilities[0] = 1.0;
    return profile;
  }

  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd sub = Eigen::Map<const Eigen::VectorXd>(h.offdiag.data(), n - 1);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig;
  eig.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (eig.info() != Eigen::Success) throw std::runtime_error("evolve: eigensolver failed");

  // f = V exp(-i lambda t) V^T e_0
  const Eigen::MatrixXd& v = eig.eigenvectors();
  const Eigen::VectorXd& lambda = eig.eigenvalues();
  Eigen::VectorXcd phased(n);
  for (int k = 0; k < n; ++k)
    phased(k) = v(0, k) * std::exp(std::complex<double>(0.0, -lambda(k) * t));
  const Eigen::VectorXcd f = v.cast<std::complex<double>>() * phased;

  profile.amplitudes.assign(f.data(), f.data() + n);
  profile.probabilities.reserve(n);
  for (const auto& a : profile.amplitudes) profile.probabilities.push_back(std::norm(a));
  return profile;
}

std::vector<double> emission_probabilities(const LadderHamiltonian& h, double t) {
  return evolve(h, t).probabilities;
}

}  // namespace clonesim
