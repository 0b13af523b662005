#pragma once

// Occupation-number bases of the symmetric (Bose) subspace and the
// combinatorial coefficients shared by the rest of the library.

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace clonesim {

/// Largest n accepted by log_factorial.
inline constexpr int kMaxFactorial = 200;

/// Photon counts per mode, one entry per mode. Length is the qudit dimension.
class Occupation {
public:
  Occupation() = default;
  explicit Occupation(std::vector<int> counts);
  Occupation(std::initializer_list<int> counts);

  std::size_t dim() const noexcept { return counts_.size(); }
  int total() const noexcept { return total_; }
  int operator[](std::size_t mode) const { return counts_[mode]; }
  std::span<const int> counts() const noexcept { return counts_; }

  /// The mode-wise sum; both operands must have equal length.
  Occupation operator+(const Occupation& other) const;

  /// `1,0,2` style rendering.
  std::string to_string(char sep = ',') const;

  friend bool operator==(const Occupation&, const Occupation&) = default;
  friend auto operator<=>(const Occupation& a, const Occupation& b) {
    return a.counts_ <=> b.counts_;
  }

private:
  std::vector<int> counts_;
  int total_ = 0;
};

/// All occupation vectors of length `d` summing to `total`, in canonical
/// (reverse-lexicographic) order: (2,0), (1,1), (0,2).
class SectorBasis {
public:
  SectorBasis() = default;
  SectorBasis(int d, int total);

  int dim() const noexcept { return d_; }
  int total() const noexcept { return total_; }
  std::size_t size() const noexcept { return vectors_.size(); }
  const Occupation& operator[](std::size_t i) const { return vectors_[i]; }
  const std::vector<Occupation>& vectors() const noexcept { return vectors_; }

  auto begin() const noexcept { return vectors_.begin(); }
  auto end() const noexcept { return vectors_.end(); }

  /// Position of `v` in the canonical order. Throws std::out_of_range if absent.
  std::size_t index_of(const Occupation& v) const;
  bool contains(const Occupation& v) const { return index_.contains(v); }

private:
  int d_ = 0;
  int total_ = 0;
  std::vector<Occupation> vectors_;
  std::map<Occupation, std::size_t> index_;
};

SectorBasis enumerate_sector(int d, int total);

/// Binomial C(n, k) as a double; exact for the desk-scale range used here.
double binomial(int n, int k);

/// ln(n!) for 0 <= n <= kMaxFactorial.
double log_factorial(int n);

/// Coefficient of |j+k>_a |k>_b in the l-photon output built from |j>:
///   sqrt[(M+d-1)! l! / (M+l+d-1)!] * prod_i sqrt[(k_i+j_i)! / (k_i! j_i!)]
/// with M = total(j), l = total(k).
double clone_amplitude(const Occupation& j, const Occupation& k);

}  // namespace clonesim
