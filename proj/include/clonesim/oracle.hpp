#pragma once

// Brute-force check of the ladder reduction.
//
// The full Fock-space Hamiltonian gamma * sum_i (a_i b_i c^dagger + h.c.) is
// built on the sector reachable from |j>_a |0>_b |N>_c, using only the
// elementary raising/lowering amplitudes. The ladder states |F_l, j> are then
// embedded into that sector and the tridiagonal action and the time evolution
// are compared against the ladder module.

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "clonesim/fock_basis.hpp"

namespace clonesim::oracle {

/// One joint configuration of the a, b and c oscillators.
struct Configuration {
  std::vector<int> a;
  std::vector<int> b;
  int c = 0;

  friend auto operator<=>(const Configuration&, const Configuration&) = default;
};

struct FullSectorBasis {
  int d = 2;
  int atoms = 1;
  Occupation j;
  std::vector<Configuration> states;
  std::map<Configuration, std::size_t> index;

  std::size_t size() const noexcept { return states.size(); }
};

struct FullHamiltonian {
  FullSectorBasis basis;
  Eigen::MatrixXd matrix;
};

inline constexpr std::size_t kDefaultMaxSectorSize = 500;

/// Throws std::length_error if the sector grows beyond `max_sector_size`.
FullHamiltonian build_full_hamiltonian(int d, int atoms, const Occupation& j, double gamma,
                                       std::size_t max_sector_size = kDefaultMaxSectorSize);

/// Expected sector size sum_{l=0}^{N} C(l+d-1, d-1).
std::size_t expected_sector_size(int d, int atoms);

struct Check {
  std::string name;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct Report {
  nlohmann::ordered_json params;
  std::vector<Check> checks;

  bool pass() const;
  void add(std::string name, double max_deviation, double tolerance);
  void append(const Report& other, const std::string& prefix);
  nlohmann::ordered_json to_json() const;
};

struct VerifyOptions {
  /// Added to every ladder element before comparison. Nonzero values exist
  /// to confirm the checks can fail.
  double perturbation = 0.0;
  std::size_t max_sector_size = kDefaultMaxSectorSize;
};

/// Embeds |F_l, j> (with the c-mode at N - l) as a vector on the full sector.
Eigen::VectorXd embed_ladder_state(const FullSectorBasis& basis, int extra);

Report verify_ladder(int d, int atoms, const Occupation& j, double gamma,
                     const VerifyOptions& options = {});

Report verify_evolution(int d, int atoms, const Occupation& j, double gamma, double t,
                        const VerifyOptions& options = {});

}  // namespace clonesim::oracle
