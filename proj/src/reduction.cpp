#include "clonesim/reduction.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace clonesim {

namespace {

constexpr double kSingleTol = 1e-10;

using boost::multiprecision::cpp_int;

cpp_int factorial(int n) {
  cpp_int f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

void check_closed_form_args(int photons, int copies, int d) {
  if (photons < 1) throw std::domain_error("closed form: need at least one input copy");
  if (copies < photons) throw std::domain_error("closed form: L must be at least M");
  if (d < 2) throw std::domain_error("closed form: qudit dimension must be at least 2");
}

// Nonzero matrix elements <m| a_s^dagger a_r |n> on one sector.
struct Hop {
  Eigen::Index from;
  Eigen::Index to;
  double coeff;
};

std::vector<Hop> transition_terms(const SectorBasis& basis, int r, int s) {
  std::vector<Hop> hops;
  for (std::size_t n = 0; n < basis.size(); ++n) {
    const Occupation& occ = basis[n];
    if (occ[r] == 0) continue;
    if (r == s) {
      hops.push_back({static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n),
                      static_cast<double>(occ[r])});
      continue;
    }
    std::vector<int> counts(occ.counts().begin(), occ.counts().end());
    const double coeff = std::sqrt(static_cast<double>(counts[r]) * (counts[s] + 1));
    --counts[r];
    ++counts[s];
    hops.push_back({static_cast<Eigen::Index>(n),
                    static_cast<Eigen::Index>(basis.index_of(Occupation(std::move(counts)))), coeff});
  }
  return hops;
}

Eigen::MatrixXcd sqrt_psd(const Eigen::MatrixXcd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(0.5 * (m + m.adjoint()));
  const Eigen::VectorXd roots = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return eig.eigenvectors() * roots.asDiagonal() * eig.eigenvectors().adjoint();
}

}  // namespace

SingleQuditDensity::SingleQuditDensity(Eigen::MatrixXcd matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols() || matrix_.rows() < 2)
    throw std::domain_error("SingleQuditDensity: expected a square matrix of size >= 2");
  if ((matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() > kSingleTol)
    throw std::domain_error("SingleQuditDensity: matrix is not Hermitian");
  if (std::abs(matrix_.trace() - Complex(1.0)) > kSingleTol)
    throw std::domain_error("SingleQuditDensity: trace is not 1");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(matrix_, Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() < -kSingleTol)
    throw std::domain_error("SingleQuditDensity: matrix is not positive semidefinite");
}

SingleQuditDensity SingleQuditDensity::pure(const PureQudit& x) {
  return SingleQuditDensity(x.vector() * x.vector().adjoint());
}

SingleQuditDensity SingleQuditDensity::maximally_mixed(int d) {
  if (d < 2) throw std::domain_error("SingleQuditDensity: dimension must be at least 2");
  return SingleQuditDensity(Eigen::MatrixXcd::Identity(d, d) / static_cast<double>(d));
}

SymmetricDensity trace_out_b(const CloneOutput& out) {
  const auto a = static_cast<Eigen::Index>(out.a_basis.size());
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(a, a);
  for (std::size_t p = 0; p < out.components.size(); ++p)
    for (std::size_t q = 0; q < out.components.size(); ++q) {
      const Complex w = out.weights(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(q));
      if (w != Complex(0.0)) rho.noalias() += w * out.components[p] * out.components[q].adjoint();
    }
  return SymmetricDensity::unchecked(out.a_basis, std::move(rho));
}

SingleQuditDensity reduce_to_single(const SymmetricDensity& rho) {
  const int copies = rho.total();
  if (copies < 1) throw std::domain_error("reduce_to_single: need at least one photon");
  const int d = rho.dim();
  Eigen::MatrixXcd single(d, d);
  for (int r = 0; r < d; ++r)
    for (int s = 0; s < d; ++s) {
      Complex acc = 0.0;
      for (const Hop& h : transition_terms(rho.basis(), r, s))
        acc += h.coeff * rho.matrix()(h.from, h.to);
      single(r, s) = acc / static_cast<double>(copies);
    }
  return SingleQuditDensity(std::move(single));
}

SingleQuditDensity reduce_to_single(const CloneOutput& out) {
  const int copies = out.copies();
  if (copies < 1) throw std::domain_error("reduce_to_single: need at least one photon");
  const int d = out.d;
  const auto k = out.components.size();
  Eigen::MatrixXcd single(d, d);
  for (int r = 0; r < d; ++r)
    for (int s = 0; s < d; ++s) {
      const auto hops = transition_terms(out.a_basis, r, s);
      Complex acc = 0.0;
      for (std::size_t p = 0; p < k; ++p)
        for (std::size_t q = 0; q < k; ++q) {
          const Complex w = out.weights(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(q));
          if (w == Complex(0.0)) continue;
          Complex term = 0.0;
          for (const Hop& h : hops)
            term += h.coeff * out.components[q].row(h.to).dot(out.components[p].row(h.from));
          acc += w * term;
        }
      single(r, s) = acc / static_cast<double>(copies);
    }
  return SingleQuditDensity(std::move(single));
}

double fidelity_single(const SingleQuditDensity& rho, const PureQudit& x) {
  if (rho.dim() != x.dim()) throw std::domain_error("fidelity_single: dimension mismatch");
  return x.vector().dot(rho.matrix() * x.vector()).real();
}

double fidelity_global(const CloneOutput& out, const PureQudit& x) {
  if (out.d != x.dim()) throw std::domain_error("fidelity_global: dimension mismatch");
  const Eigen::VectorXcd target = expand_identical(x, out.copies()).amplitudes;
  std::vector<Eigen::VectorXcd> overlaps;
  overlaps.reserve(out.components.size());
  for (const auto& v : out.components) overlaps.push_back(v.adjoint() * target);
  Complex f = 0.0;
  for (std::size_t p = 0; p < overlaps.size(); ++p)
    for (std::size_t q = 0; q < overlaps.size(); ++q)
      f += out.weights(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(q)) *
           overlaps[p].dot(overlaps[q]);
  return f.real();
}

double state_fidelity(const SingleQuditDensity& rho, const SingleQuditDensity& sigma) {
  if (rho.dim() != sigma.dim()) throw std::domain_error("state_fidelity: dimension mismatch");
  const Eigen::MatrixXcd root = sqrt_psd(rho.matrix());
  const Eigen::MatrixXcd inner = root * sigma.matrix() * root;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(0.5 * (inner + inner.adjoint()),
                                                      Eigen::EigenvaluesOnly);
  const double tr = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
  return tr * tr;
}

Rational closed_form_single_exact(int photons, int copies, int d) {
  check_closed_form_args(photons, copies, d);
  const cpp_int m = photons, l = copies;
  return Rational(m * (l + d) + l - m, l * (m + d));
}

double closed_form_single(int photons, int copies, int d) {
  return closed_form_single_exact(photons, copies, d).convert_to<double>();
}

Rational closed_form_global_exact(int photons, int copies, int d) {
  check_closed_form_args(photons, copies, d);
  return Rational(factorial(copies) * factorial(photons + d - 1),
                  factorial(photons) * factorial(copies + d - 1));
}

double closed_form_global(int photons, int copies, int d) {
  return closed_form_global_exact(photons, copies, d).convert_to<double>();
}

ShrinkingFit shrinking_factor(const SingleQuditDensity& rho_in, const SingleQuditDensity& rho_out,
                              double tolerance) {
  if (rho_in.dim() != rho_out.dim()) throw std::domain_error("shrinking_factor: dimension mismatch");
  const int d = rho_in.dim();
  const Eigen::MatrixXcd centre = Eigen::MatrixXcd::Identity(d, d) / static_cast<double>(d);
  const Eigen::MatrixXcd in = rho_in.matrix() - centre;
  const Eigen::MatrixXcd out = rho_out.matrix() - centre;

  const double in_norm2 = in.squaredNorm();
  if (in_norm2 < 1e-24)
    return {ShrinkingFit::Status::degenerate, std::numeric_limits<double>::quiet_NaN(), out.norm()};

  const double eta = in.conjugate().cwiseProduct(out).sum().real() / in_norm2;
  const double residual = (out - eta * in).norm();
  const auto status =
      residual <= tolerance ? ShrinkingFit::Status::isotropic : ShrinkingFit::Status::not_isotropic;
  return {status, eta, residual};
}

}  // namespace clonesim
