#pragma once

// Partial traces, single-qudit marginals and cloning figures of merit.

#include <boost/multiprecision/cpp_int.hpp>

#include <Eigen/Dense>

#include "clonesim/cloner.hpp"

namespace clonesim {

using Rational = boost::multiprecision::cpp_rational;

/// d x d density operator of one qudit.
class SingleQuditDensity {
public:
  /// Hermitian, unit trace within 1e-10 and PSD within 1e-10, else std::domain_error.
  explicit SingleQuditDensity(Eigen::MatrixXcd matrix);
  static SingleQuditDensity pure(const PureQudit& x);
  static SingleQuditDensity maximally_mixed(int d);

  int dim() const noexcept { return static_cast<int>(matrix_.rows()); }
  const Eigen::MatrixXcd& matrix() const noexcept { return matrix_; }

private:
  Eigen::MatrixXcd matrix_;
};

/// Tr_b of the joint output: a density on the L = M + l photon a-sector.
SymmetricDensity trace_out_b(const CloneOutput& out);

/// One-particle marginal rho_1(r,s) = Tr(rho_L a_s^dagger a_r) / L.
SingleQuditDensity reduce_to_single(const SymmetricDensity& rho);

/// Same marginal taken directly from a clone output without forming Tr_b.
SingleQuditDensity reduce_to_single(const CloneOutput& out);

/// <x| rho |x>.
double fidelity_single(const SingleQuditDensity& rho, const PureQudit& x);

/// <x^{(x)L}| Tr_b(out) |x^{(x)L}>.
double fidelity_global(const CloneOutput& out, const PureQudit& x);

/// Uhlmann fidelity (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2; reduces to
/// <x|sigma|x> when rho = |x><x|.
double state_fidelity(const SingleQuditDensity& rho, const SingleQuditDensity& sigma);

/// (M(L+d) + L - M) / (L(M+d)).
Rational closed_form_single_exact(int photons, int copies, int d);
double closed_form_single(int photons, int copies, int d);

/// L! (M+d-1)! / (M! (L+d-1)!).
Rational closed_form_global_exact(int photons, int copies, int d);
double closed_form_global(int photons, int copies, int d);

/// Least-squares fit of rho_out = eta rho_in + (1 - eta) I/d.
struct ShrinkingFit {
  enum class Status {
    isotropic,      // residual within tolerance
    not_isotropic,  // residual above tolerance; eta is the best fit
    degenerate,     // rho_in is maximally mixed, eta undefined
  };
  Status status;
  double eta;
  double residual;  // Frobenius norm of the fit error

  bool isotropic() const noexcept { return status == Status::isotropic; }
};

inline constexpr double kShrinkingResidualTol = 1e-9;

ShrinkingFit shrinking_factor(const SingleQuditDensity& rho_in, const SingleQuditDensity& rho_out,
                              double tolerance = kShrinkingResidualTol);

}  // namespace clonesim
