#include "clonesim/cloner.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

#include "clonesim/ladder.hpp"

namespace clonesim {

namespace {

constexpr double kQuditNormTol = 1e-12;
constexpr double kDensityTol = 1e-10;
constexpr double kNegativeEigTol = 1e-8;

}  // namespace

PureQudit::PureQudit(Eigen::VectorXcd x) : x_(std::move(x)) {
  if (x_.size() < 2) throw std::domain_error("PureQudit: dimension must be at least 2");
  if (std::abs(x_.squaredNorm() - 1.0) > kQuditNormTol)
    throw std::domain_error("PureQudit: amplitudes are not normalized");
}

PureQudit PureQudit::normalized(const Eigen::VectorXcd& x) {
  const double n = x.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw std::domain_error("PureQudit: zero vector");
  return PureQudit(x / n);
}

SymmetricDensity::SymmetricDensity(SectorBasis basis, const Eigen::MatrixXcd& matrix)
    : basis_(std::move(basis)) {
  const auto n = static_cast<Eigen::Index>(basis_.size());
  if (matrix.rows() != n || matrix.cols() != n)
    throw std::domain_error("SymmetricDensity: matrix size does not match sector dimension " +
                            std::to_string(n));
  if ((matrix - matrix.adjoint()).cwiseAbs().maxCoeff() > kDensityTol)
    throw std::domain_error("SymmetricDensity: matrix is not Hermitian");
  if (std::abs(matrix.trace() - Complex(1.0)) > kDensityTol)
    throw std::domain_error("SymmetricDensity: trace is not 1");

  Eigen::MatrixXcd herm = 0.5 * (matrix + matrix.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(herm);
  const double min_eig = eig.eigenvalues().minCoeff();
  if (min_eig < -kNegativeEigTol)
    throw std::domain_error("SymmetricDensity: matrix has a negative eigenvalue");
  if (min_eig < 0.0) {
    Eigen::VectorXd clipped = eig.eigenvalues().cwiseMax(0.0);
    clipped /= clipped.sum();
    herm = eig.eigenvectors() * clipped.asDiagonal() * eig.eigenvectors().adjoint();
  } else {
    herm /= herm.trace().real();
  }
  matrix_ = std::move(herm);
}

SymmetricDensity SymmetricDensity::pure(const SymmetricState& psi) {
  return unchecked(psi.basis, psi.amplitudes * psi.amplitudes.adjoint());
}

SymmetricDensity SymmetricDensity::unchecked(SectorBasis basis, Eigen::MatrixXcd matrix) {
  SymmetricDensity rho;
  rho.basis_ = std::move(basis);
  rho.matrix_ = std::move(matrix);
  return rho;
}

const Eigen::MatrixXcd& CloneOutput::joint_amplitudes() const {
  if (!is_pure() || weights(0, 0) != Complex(1.0))
    throw std::logic_error("CloneOutput: joint amplitudes requested from a mixed output");
  return components.front();
}

Eigen::MatrixXcd CloneOutput::joint_density() const {
  const Eigen::Index a = static_cast<Eigen::Index>(a_basis.size());
  const Eigen::Index b = static_cast<Eigen::Index>(b_basis.size());
  Eigen::MatrixXcd vecs(a * b, static_cast<Eigen::Index>(components.size()));
  for (std::size_t p = 0; p < components.size(); ++p) {
    // row-major flattening: joint index = a * |b| + b
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rm = components[p];
    vecs.col(static_cast<Eigen::Index>(p)) = Eigen::Map<const Eigen::VectorXcd>(rm.data(), a * b);
  }
  return vecs * weights * vecs.adjoint();
}

double CloneOutput::trace() const {
  Complex tr = 0.0;
  for (std::size_t p = 0; p < components.size(); ++p)
    for (std::size_t q = 0; q < components.size(); ++q)
      tr += weights(p, q) * components[q].conjugate().cwiseProduct(components[p]).sum();
  return tr.real();
}

SymmetricState expand_identical(const PureQudit& x, int photons) {
  if (photons < 0) throw std::domain_error("expand_identical: photon number must be non-negative");
  SymmetricState psi{enumerate_sector(x.dim(), photons), {}};
  psi.amplitudes.resize(static_cast<Eigen::Index>(psi.basis.size()));
  const Eigen::VectorXcd& xv = x.vector();
  for (std::size_t idx = 0; idx < psi.basis.size(); ++idx) {
    const Occupation& j = psi.basis[idx];
    double log_mult = log_factorial(photons);
    Complex prod = 1.0;
    for (int i = 0; i < x.dim(); ++i) {
      log_mult -= log_factorial(j[i]);
      for (int p = 0; p < j[i]; ++p) prod *= xv(i);
    }
    psi.amplitudes(static_cast<Eigen::Index>(idx)) = std::exp(0.5 * log_mult) * prod;
  }
  return psi;
}

namespace {

CloneOutput empty_output(int d, int photons, int extra) {
  if (extra < 0) throw std::domain_error("clone: number of extra copies must be non-negative");
  CloneOutput out;
  out.d = d;
  out.photons = photons;
  out.extra = extra;
  out.a_basis = enumerate_sector(d, photons + extra);
  out.b_basis = enumerate_sector(d, extra);
  return out;
}

// Adds coeff * |F_l, j> into the amplitude matrix `v`.
void accumulate_basis_clone(const CloneOutput& shape, const Occupation& j, Complex coeff,
                            Eigen::MatrixXcd& v) {
  for (std::size_t kb = 0; kb < shape.b_basis.size(); ++kb) {
    const Occupation& k = shape.b_basis[kb];
    const std::size_t ka = shape.a_basis.index_of(j + k);
    v(static_cast<Eigen::Index>(ka), static_cast<Eigen::Index>(kb)) +=
        coeff * clone_amplitude(j, k);
  }
}

Eigen::MatrixXcd zero_component(const CloneOutput& shape) {
  return Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(shape.a_basis.size()),
                                static_cast<Eigen::Index>(shape.b_basis.size()));
}

}  // namespace

CloneOutput clone_basis_state(const Occupation& j, int extra) {
  if (j.dim() < 2) throw std::domain_error("clone: qudit dimension must be at least 2");
  CloneOutput out = empty_output(static_cast<int>(j.dim()), j.total(), extra);
  Eigen::MatrixXcd v = zero_component(out);
  accumulate_basis_clone(out, j, 1.0, v);
  out.components.push_back(std::move(v));
  out.weights = Eigen::MatrixXcd::Ones(1, 1);
  return out;
}

CloneOutput clone_state(const SymmetricState& psi, int extra) {
  CloneOutput out = empty_output(psi.dim(), psi.total(), extra);
  Eigen::MatrixXcd v = zero_component(out);
  for (std::size_t idx = 0; idx < psi.basis.size(); ++idx) {
    const Complex c = psi.amplitudes(static_cast<Eigen::Index>(idx));
    if (c != Complex(0.0)) accumulate_basis_clone(out, psi.basis[idx], c, v);
  }
  out.components.push_back(std::move(v));
  out.weights = Eigen::MatrixXcd::Ones(1, 1);
  return out;
}

CloneOutput clone_pure(const PureQudit& x, int photons, int extra) {
  return clone_state(expand_identical(x, photons), extra);
}

CloneOutput clone_mixed(const SymmetricDensity& rho, int extra) {
  CloneOutput out = empty_output(rho.dim(), rho.total(), extra);
  out.components.reserve(rho.basis().size());
  for (const Occupation& j : rho.basis()) {
    Eigen::MatrixXcd v = zero_component(out);
    accumulate_basis_clone(out, j, 1.0, v);
    out.components.push_back(std::move(v));
  }
  out.weights = rho.matrix();
  return out;
}

std::vector<WeightedOutput> emission_mixture(const SymmetricDensity& rho, int atoms,
                                             double gamma, double t) {
  const auto probs = emission_probabilities(ladder_matrix(rho.dim(), atoms, rho.total(), gamma), t);
  std::vector<WeightedOutput> mix;
  mix.reserve(probs.size());
  for (int l = 0; l <= atoms; ++l) {
    CloneOutput out = clone_mixed(rho, l);
    out.atoms = atoms;
    mix.push_back({probs[static_cast<std::size_t>(l)], std::move(out)});
  }
  return mix;
}

}  // namespace clonesim
