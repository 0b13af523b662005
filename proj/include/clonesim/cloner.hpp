#pragma once

// Cloning output states conditioned on l additionally emitted photons.
//
// The c-mode is left implicit: inside a fixed-l sector it is the constant
// |N - l>_c and factors out of every a (x) b observable.

#include <complex>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "clonesim/fock_basis.hpp"

namespace clonesim {

using Complex = std::complex<double>;

/// A normalized single qudit sum_i x_i a_i^dagger |0>.
class PureQudit {
public:
  /// Throws std::domain_error unless sum |x_i|^2 = 1 within 1e-12.
  explicit PureQudit(Eigen::VectorXcd x);
  static PureQudit normalized(const Eigen::VectorXcd& x);

  int dim() const noexcept { return static_cast<int>(x_.size()); }
  const Eigen::VectorXcd& vector() const noexcept { return x_; }

private:
  Eigen::VectorXcd x_;
};

/// Pure state of M identical bosonic qudits in the occupation basis.
struct SymmetricState {
  SectorBasis basis;
  Eigen::VectorXcd amplitudes;

  int dim() const noexcept { return basis.dim(); }
  int total() const noexcept { return basis.total(); }
};

/// Density operator on one M-photon sector of the Bose subspace.
class SymmetricDensity {
public:
  /// Validates a user-supplied matrix: Hermitian and unit trace within 1e-10,
  /// eigenvalues >= -1e-8. Small negative eigenvalues are clipped to zero and
  /// the result renormalized.
  SymmetricDensity(SectorBasis basis, const Eigen::MatrixXcd& matrix);

  static SymmetricDensity pure(const SymmetricState& psi);
  /// Skips validation; for matrices produced by this library.
  static SymmetricDensity unchecked(SectorBasis basis, Eigen::MatrixXcd matrix);

  int dim() const noexcept { return basis_.dim(); }
  int total() const noexcept { return basis_.total(); }
  const SectorBasis& basis() const noexcept { return basis_; }
  const Eigen::MatrixXcd& matrix() const noexcept { return matrix_; }

private:
  SymmetricDensity() = default;
  SectorBasis basis_;
  Eigen::MatrixXcd matrix_;
};

/// Joint a (x) b output of the l-photon sector.
///
/// Stored as sum_{pq} weights(p,q) |V_p>><<V_q| where each component V_p is an
/// amplitude matrix indexed by (a-occupation of total M+l, b-occupation of
/// total l). A pure output has a single component with weight 1.
struct CloneOutput {
  int d = 2;
  int photons = 0;  // M
  int extra = 0;    // l
  std::optional<int> atoms;  // N, when known; the c-mode holds N - l
  SectorBasis a_basis;
  SectorBasis b_basis;
  std::vector<Eigen::MatrixXcd> components;
  Eigen::MatrixXcd weights;

  int copies() const noexcept { return photons + extra; }  // L
  bool is_pure() const noexcept { return components.size() == 1; }

  /// The amplitude matrix of a pure output. Throws for mixed outputs.
  const Eigen::MatrixXcd& joint_amplitudes() const;

  /// Dense density over the joint index a * |b_basis| + b.
  Eigen::MatrixXcd joint_density() const;

  double trace() const;
};

/// Expand |psi>^{(x) M} in the occupation basis:
/// coefficient of |j> is sqrt(M! / prod j_i!) prod x_i^{j_i}.
SymmetricState expand_identical(const PureQudit& x, int photons);

CloneOutput clone_basis_state(const Occupation& j, int extra);
CloneOutput clone_pure(const PureQudit& x, int photons, int extra);
CloneOutput clone_mixed(const SymmetricDensity& rho, int extra);

/// Clone of a general symmetric pure state (linear extension of clone_basis_state).
CloneOutput clone_state(const SymmetricState& psi, int extra);

/// The unconditioned output after evolution time t with N atoms: one
/// (probability, conditioned output) pair per l = 0..N.
struct WeightedOutput {
  double probability;
  CloneOutput output;
};
std::vector<WeightedOutput> emission_mixture(const SymmetricDensity& rho, int atoms,
                                             double gamma, double t);

}  // namespace clonesim
