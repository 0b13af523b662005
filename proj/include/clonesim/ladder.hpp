#pragma once

// Restriction of the emission Hamiltonian gamma * sum_i a_i b_i c^dagger + h.c.
// to the invariant ladder span{|F_0>, ..., |F_N>} and its time evolution.

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace clonesim {

/// Real symmetric tridiagonal matrix with zero diagonal. Row l couples
/// |F_l> (l extra photons emitted) to |F_{l+1}> with weight offdiag[l].
struct LadderHamiltonian {
  int d = 2;
  int atoms = 1;    // N, initially excited atoms
  int photons = 0;  // M, input photons
  double gamma = 1.0;
  std::vector<double> offdiag;

  int size() const noexcept { return atoms + 1; }
  Eigen::MatrixXd dense() const;
};

/// offdiag[l] = gamma * sqrt((l+1) (N-l) (M+l+d)), l = 0..N-1.
LadderHamiltonian ladder_matrix(int d, int atoms, int photons, double gamma = 1.0);

struct EvolutionProfile {
  double t = 0.0;
  std::vector<std::complex<double>> amplitudes;  // f_l(t) = <F_l| exp(-iHt) |F_0>
  std::vector<double> probabilities;             // |f_l(t)|^2
};

EvolutionProfile evolve(const LadderHamiltonian& h, double t);

std::vector<double> emission_probabilities(const LadderHamiltonian& h, double t);

}  // namespace clonesim
