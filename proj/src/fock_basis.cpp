#include "clonesim/fock_basis.hpp"

#include <array>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace clonesim {

Occupation::Occupation(std::vector<int> counts) : counts_(std::move(counts)) {
  for (int c : counts_) {
    if (c < 0) throw std::domain_error("occupation counts must be non-negative");
    total_ += c;
  }
}

Occupation::Occupation(std::initializer_list<int> counts)
    : Occupation(std::vector<int>(counts)) {}

Occupation Occupation::operator+(const Occupation& other) const {
  if (dim() != other.dim())
    throw std::domain_error("occupation vectors differ in length");
  std::vector<int> sum(counts_);
  for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += other.counts_[i];
  return Occupation(std::move(sum));
}

std::string Occupation::to_string(char sep) const {
  std::string s;
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    if (i) s += sep;
    s += std::to_string(counts_[i]);
  }
  return s;
}

namespace {

void fill_sector(std::vector<int>& prefix, int d, int remaining,
                 std::vector<Occupation>& out) {
  if (static_cast<int>(prefix.size()) == d - 1) {
    prefix.push_back(remaining);
    out.emplace_back(prefix);
    prefix.pop_back();
    return;
  }
  for (int n = remaining; n >= 0; --n) {
    prefix.push_back(n);
    fill_sector(prefix, d, remaining - n, out);
    prefix.pop_back();
  }
}

}  // namespace

SectorBasis::SectorBasis(int d, int total) : d_(d), total_(total) {
  if (d < 2) throw std::domain_error("qudit dimension must be at least 2");
  if (total < 0) throw std::domain_error("photon number must be non-negative");
  std::vector<int> prefix;
  prefix.reserve(d);
  fill_sector(prefix, d, total, vectors_);
  for (std::size_t i = 0; i < vectors_.size(); ++i) index_.emplace(vectors_[i], i);
}

std::size_t SectorBasis::index_of(const Occupation& v) const {
  auto it = index_.find(v);
  if (it == index_.end())
    throw std::out_of_range("occupation " + v.to_string() + " not in sector");
  return it->second;
}

SectorBasis enumerate_sector(int d, int total) { return SectorBasis(d, total); }

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return std::round(r);
}

namespace {

const std::array<double, kMaxFactorial + 1>& log_factorial_table() {
  static const auto table = [] {
    std::array<double, kMaxFactorial + 1> t{};
    long double acc = 0.0L;
    for (int n = 2; n <= kMaxFactorial; ++n) {
      acc += std::log(static_cast<long double>(n));
      t[n] = static_cast<double>(acc);
    }
    return t;
  }();
  return table;
}

}  // namespace

double log_factorial(int n) {
  if (n < 0) throw std::domain_error("log_factorial of a negative integer");
  if (n > kMaxFactorial)
    throw std::domain_error("log_factorial supports n <= " + std::to_string(kMaxFactorial));
  return log_factorial_table()[n];
}

double clone_amplitude(const Occupation& j, const Occupation& k) {
  if (j.dim() != k.dim())
    throw std::domain_error("clone_amplitude: occupation vectors differ in length");
  const int d = static_cast<int>(j.dim());
  const int m = j.total();
  const int l = k.total();
  double log_amp = log_factorial(m + d - 1) + log_factorial(l) - log_factorial(m + l + d - 1);
  for (int i = 0; i < d; ++i)
    log_amp += log_factorial(k[i] + j[i]) - log_factorial(k[i]) - log_factorial(j[i]);
  return std::exp(0.5 * log_amp);
}

}  // namespace clonesim
