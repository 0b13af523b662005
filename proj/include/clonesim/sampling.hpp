#pragma once

// Seeded random states. Floating-point draws are derived from raw
// mt19937_64 output so results do not depend on the standard library's
// distribution implementations.

#include <cstdint>
#include <random>

#include <Eigen/Dense>

#include "clonesim/cloner.hpp"

namespace clonesim {

inline constexpr std::uint64_t kDefaultSeed = 20030101;

class Rng {
public:
  explicit Rng(std::uint64_t seed = kDefaultSeed) : engine_(seed) {}

  /// Uniform on [0, 1).
  double uniform();
  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer on [lo, hi].
  int integer(int lo, int hi);
  /// Standard normal (Box-Muller).
  double normal();
  Complex complex_normal();

private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Haar-random pure qudit.
PureQudit random_pure_qudit(int d, Rng& rng);

/// Haar-random d x d unitary (QR of a complex Ginibre matrix, phase-fixed).
Eigen::MatrixXcd random_unitary(int d, Rng& rng);

/// Random density matrix of the given rank on an n-dimensional space.
Eigen::MatrixXcd random_density_matrix(int n, int rank, Rng& rng);

}  // namespace clonesim
