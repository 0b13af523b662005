#include <gtest/gtest.h>

#include <cmath>

#include "clonesim/cloner.hpp"
#include "clonesim/sampling.hpp"
#include "test_support.hpp"

namespace clonesim {
namespace {

using testing::exact_clone_weight;
using testing::exact_factorial;
using testing::tensor_overlap;
using testing::to_double;

double max_abs(const Eigen::MatrixXcd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

Complex amp(const CloneOutput& out, const Occupation& a, const Occupation& b) {
  return out.joint_amplitudes()(static_cast<Eigen::Index>(out.a_basis.index_of(a)),
                                static_cast<Eigen::Index>(out.b_basis.index_of(b)));
}

Eigen::VectorXcd vec(std::initializer_list<Complex> v) {
  Eigen::VectorXcd x(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (auto c : v) x(i++) = c;
  return x;
}

TEST(CloneBasisState, NoExtraCopies) {
  const auto out = clone_basis_state({1, 0}, 0);
  EXPECT_EQ(out.a_basis.size(), 2u);
  EXPECT_EQ(out.b_basis.size(), 1u);
  EXPECT_EQ(amp(out, {1, 0}, {0, 0}), Complex(1.0));
  EXPECT_EQ(amp(out, {0, 1}, {0, 0}), Complex(0.0));
}

TEST(CloneBasisState, OneToTwoQubit) {
  const auto out = clone_basis_state({1, 0}, 1);
  EXPECT_NEAR(std::norm(amp(out, {2, 0}, {1, 0})), to_double(exact_clone_weight({1, 0}, {1, 0})), 1e-15);
  EXPECT_NEAR(std::norm(amp(out, {1, 1}, {0, 1})), to_double(exact_clone_weight({1, 0}, {0, 1})), 1e-15);
  EXPECT_NEAR(std::norm(amp(out, {2, 0}, {1, 0})), 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(std::norm(amp(out, {1, 1}, {0, 1})), 1.0 / 3.0, 1e-15);
  int nonzero = 0;
  for (Eigen::Index i = 0; i < out.joint_amplitudes().size(); ++i)
    nonzero += out.joint_amplitudes().data()[i] != Complex(0.0);
  EXPECT_EQ(nonzero, 2);
  EXPECT_NEAR(out.trace(), 1.0, 1e-12);
}

// Qubit form of the output state: input |i, j>_a, l emitted photons,
//   sum_k sqrt(l! (i+j+1)! / (i+j+l+1)!) sqrt((i+l-k)! (j+k)! / (i! j! k! (l-k)!))
//         |i+l-k, j+k>_a |l-k, k>_b
double qubit_output_coefficient(int i, int j, int l, int k) {
  using boost::multiprecision::cpp_rational;
  const cpp_rational w = cpp_rational(exact_factorial(l) * exact_factorial(i + j + 1),
                                      exact_factorial(i + j + l + 1)) *
                         cpp_rational(exact_factorial(i + l - k) * exact_factorial(j + k),
                                      exact_factorial(i) * exact_factorial(j) * exact_factorial(k) *
                                          exact_factorial(l - k));
  return std::sqrt(to_double(w));
}

TEST(CloneBasisState, MatchesQubitFormula) {
  for (int m = 0; m <= 3; ++m)
    for (int i = 0; i <= m; ++i)
      for (int l = 0; l <= 3; ++l) {
        const int j = m - i;
        const auto out = clone_basis_state({i, j}, l);
        Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(out.joint_amplitudes().rows(),
                                                           out.joint_amplitudes().cols());
        for (int k = 0; k <= l; ++k)
          expected(static_cast<Eigen::Index>(out.a_basis.index_of({i + l - k, j + k})),
                   static_cast<Eigen::Index>(out.b_basis.index_of({l - k, k}))) =
              qubit_output_coefficient(i, j, l, k);
        EXPECT_LT(max_abs(out.joint_amplitudes() - expected), 1e-14) << i << "," << j << " l=" << l;
      }
}

TEST(CloneBasisState, TwoPhotonQubitInput) {
  const auto out = clone_basis_state({1, 1}, 1);
  const double prefactor = std::sqrt(6.0 / 24.0);  // sqrt((M+d-1)! l! / (M+l+d-1)!) = sqrt(3! 1! / 4!)
  EXPECT_NEAR(amp(out, {2, 1}, {1, 0}).real(), prefactor * std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(amp(out, {1, 2}, {0, 1}).real(), prefactor * std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(out.joint_amplitudes().squaredNorm(), 1.0, 1e-12);
}

TEST(CloneBasisState, OrthonormalityTransport) {
  for (int d = 2; d <= 4; ++d)
    for (int m = 0; m <= 3; ++m)
      for (int l = 0; l <= 3; ++l) {
        const SectorBasis sector = enumerate_sector(d, m);
        std::vector<CloneOutput> outs;
        for (const auto& j : sector) outs.push_back(clone_basis_state(j, l));
        for (std::size_t p = 0; p < outs.size(); ++p)
          for (std::size_t q = 0; q < outs.size(); ++q) {
            const Complex overlap =
                outs[p].joint_amplitudes().conjugate().cwiseProduct(outs[q].joint_amplitudes()).sum();
            EXPECT_NEAR(std::abs(overlap - Complex(p == q ? 1.0 : 0.0)), 0.0, 1e-12);
          }
      }
}

TEST(CloneBasisState, Conservation) {
  for (int d = 2; d <= 3; ++d)
    for (const auto& j : enumerate_sector(d, 2))
      for (int l = 0; l <= 3; ++l) {
        const auto out = clone_basis_state(j, l);
        for (std::size_t a = 0; a < out.a_basis.size(); ++a)
          for (std::size_t b = 0; b < out.b_basis.size(); ++b) {
            if (out.joint_amplitudes()(Eigen::Index(a), Eigen::Index(b)) == Complex(0.0)) continue;
            for (int i = 0; i < d; ++i) EXPECT_EQ(out.a_basis[a][i] - out.b_basis[b][i], j[i]);
          }
      }
}

TEST(ExpandIdentical, BasisVector) {
  for (int d = 2; d <= 4; ++d)
    for (int m = 0; m <= 4; ++m) {
      Eigen::VectorXcd x = Eigen::VectorXcd::Unit(d, 0);
      const auto psi = expand_identical(PureQudit(x), m);
      std::vector<int> top(static_cast<std::size_t>(d), 0);
      top[0] = m;
      EXPECT_EQ(psi.amplitudes(static_cast<Eigen::Index>(psi.basis.index_of(Occupation(top)))), Complex(1.0));
      EXPECT_NEAR(psi.amplitudes.squaredNorm(), 1.0, 1e-15);
    }
}

TEST(ExpandIdentical, EqualSuperposition) {
  const double h = 1.0 / std::sqrt(2.0);
  const auto psi = expand_identical(PureQudit(vec({h, h})), 2);
  EXPECT_NEAR(std::abs(psi.amplitudes(0) - 0.5), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(psi.amplitudes(1) - h), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(psi.amplitudes(2) - 0.5), 0.0, 1e-15);
}

TEST(ExpandIdentical, MatchesTensorProductOracle) {
  Rng rng(5);
  for (int d = 2; d <= 3; ++d)
    for (int m = 1; m <= 4; ++m) {
      const PureQudit x = random_pure_qudit(d, rng);
      const auto psi = expand_identical(x, m);
      EXPECT_NEAR(psi.amplitudes.squaredNorm(), 1.0, 1e-12);
      for (std::size_t i = 0; i < psi.basis.size(); ++i) {
        const auto& occ = psi.basis[i];
        const Complex ref = tensor_overlap(x.vector(), {occ.counts().begin(), occ.counts().end()});
        EXPECT_NEAR(std::abs(psi.amplitudes(static_cast<Eigen::Index>(i)) - ref), 0.0, 1e-12);
      }
    }
}

TEST(PureQudit, RejectsUnnormalized) {
  EXPECT_THROW(PureQudit(vec({1.0, 1.0})), std::domain_error);
  EXPECT_THROW(PureQudit::normalized(vec({0.0, 0.0})), std::domain_error);
  EXPECT_NO_THROW(PureQudit::normalized(vec({1.0, 1.0})));
}

TEST(ClonePure, BasisInputReducesToBasisClone) {
  const auto a = clone_pure(PureQudit(vec({1.0, 0.0})), 1, 1);
  const auto b = clone_basis_state({1, 0}, 1);
  EXPECT_LT(max_abs(a.joint_amplitudes() - b.joint_amplitudes()), 1e-15);
}

// Output coefficient for M identical qudits, normalized by the sqrt(M!) that
// the unnormalized (sum_i x_i a_i^dagger)^M |0> carries:
//   M! prod_i x_i^{j_i}/j_i! sqrt((M+d-1)! l! / (L+d-1)!) prod_i sqrt((k_i+j_i)!/k_i!)
TEST(ClonePure, MatchesIdenticalInputFormula) {
  Rng rng(17);
  for (int d = 2; d <= 3; ++d)
    for (int m = 1; m <= 3; ++m)
      for (int l = 0; l <= 2; ++l) {
        const PureQudit x = random_pure_qudit(d, rng);
        const auto out = clone_pure(x, m, l);
        Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(out.joint_amplitudes().rows(),
                                                           out.joint_amplitudes().cols());
        for (const auto& j : enumerate_sector(d, m))
          for (const auto& k : enumerate_sector(d, l)) {
            using boost::multiprecision::cpp_rational;
            cpp_rational pref(exact_factorial(m + d - 1) * exact_factorial(l), exact_factorial(m + l + d - 1));
            Complex c = to_double(cpp_rational(exact_factorial(m))) * std::sqrt(to_double(pref));
            for (int i = 0; i < d; ++i) {
              c *= std::pow(x.vector()(i), j[i]) / to_double(cpp_rational(exact_factorial(j[i])));
              c *= std::sqrt(to_double(cpp_rational(exact_factorial(k[i] + j[i]), exact_factorial(k[i]))));
            }
            expected(static_cast<Eigen::Index>(out.a_basis.index_of(j + k)),
                     static_cast<Eigen::Index>(out.b_basis.index_of(k))) +=
                c / std::sqrt(to_double(cpp_rational(exact_factorial(m))));
          }
        EXPECT_LT(max_abs(out.joint_amplitudes() - expected), 1e-12);
        EXPECT_NEAR(out.trace(), 1.0, 1e-12);
      }
}

TEST(ClonePure, EntriesRespectConservation) {
  Rng rng(2);
  const auto out = clone_pure(random_pure_qudit(3, rng), 2, 2);
  for (std::size_t a = 0; a < out.a_basis.size(); ++a)
    for (std::size_t b = 0; b < out.b_basis.size(); ++b) {
      if (std::abs(out.joint_amplitudes()(Eigen::Index(a), Eigen::Index(b))) == 0.0) continue;
      for (int i = 0; i < 3; ++i) EXPECT_GE(out.a_basis[a][i], out.b_basis[b][i]);
    }
}

TEST(SymmetricDensity, Validation) {
  const SectorBasis basis = enumerate_sector(2, 1);
  EXPECT_THROW(SymmetricDensity(basis, Eigen::MatrixXcd::Identity(2, 2)), std::domain_error);
  EXPECT_THROW(SymmetricDensity(basis, Eigen::MatrixXcd::Identity(3, 3) / 3.0), std::domain_error);
  Eigen::MatrixXcd nonherm = Eigen::MatrixXcd::Identity(2, 2) / 2.0;
  nonherm(0, 1) = 0.1;
  EXPECT_THROW(SymmetricDensity(basis, nonherm), std::domain_error);
  Eigen::MatrixXcd negative(2, 2);
  negative << 1.0 + 1e-6, 0.0, 0.0, -1e-6;
  EXPECT_THROW(SymmetricDensity(basis, negative), std::domain_error);
}

TEST(SymmetricDensity, ClipsTinyNegativeEigenvalues) {
  const SectorBasis basis = enumerate_sector(2, 1);
  Eigen::MatrixXcd m(2, 2);
  m << 1.0 + 1e-9, 0.0, 0.0, -1e-9;
  const SymmetricDensity rho(basis, m);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(rho.matrix());
  EXPECT_GE(eig.eigenvalues().minCoeff(), -1e-15);
  EXPECT_NEAR(rho.matrix().trace().real(), 1.0, 1e-15);
}

TEST(CloneMixed, RankOneBasisInput) {
  for (const auto& j : enumerate_sector(3, 2)) {
    const SectorBasis basis = enumerate_sector(3, 2);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(Eigen::Index(basis.size()), Eigen::Index(basis.size()));
    const auto idx = static_cast<Eigen::Index>(basis.index_of(j));
    m(idx, idx) = 1.0;
    const auto mixed = clone_mixed(SymmetricDensity(basis, m), 2).joint_density();
    const auto pure = clone_basis_state(j, 2).joint_density();
    EXPECT_LT(max_abs(mixed - pure), 1e-12);
  }
}

TEST(CloneMixed, RankOnePureInputMatchesClonePure) {
  Rng rng(23);
  for (int d = 2; d <= 3; ++d)
    for (int m = 1; m <= 2; ++m)
      for (int l = 0; l <= 2; ++l) {
        const PureQudit x = random_pure_qudit(d, rng);
        const auto rho = SymmetricDensity::pure(expand_identical(x, m));
        EXPECT_LT(max_abs(clone_mixed(rho, l).joint_density() - clone_pure(x, m, l).joint_density()), 1e-12);
      }
}

TEST(CloneMixed, LinearityAndDensityProperties) {
  Rng rng(29);
  for (int d = 2; d <= 3; ++d)
    for (int m = 1; m <= 2; ++m)
      for (int l = 0; l <= 2; ++l) {
        const SectorBasis basis = enumerate_sector(d, m);
        const int n = static_cast<int>(basis.size());
        const SymmetricDensity r1(basis, random_density_matrix(n, std::min(2, n), rng));
        const SymmetricDensity r2(basis, random_density_matrix(n, n, rng));
        const double p = rng.uniform();
        const SymmetricDensity mix(basis, p * r1.matrix() + (1 - p) * r2.matrix());

        const Eigen::MatrixXcd lhs = clone_mixed(mix, l).joint_density();
        const Eigen::MatrixXcd rhs =
            p * clone_mixed(r1, l).joint_density() + (1 - p) * clone_mixed(r2, l).joint_density();
        EXPECT_LT(max_abs(lhs - rhs), 1e-12);

        EXPECT_NEAR(lhs.trace().real(), 1.0, 1e-12);
        EXPECT_LT(max_abs(lhs - lhs.adjoint()), 1e-12);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(lhs);
        EXPECT_GE(eig.eigenvalues().minCoeff(), -1e-10);
        EXPECT_NEAR(clone_mixed(mix, l).trace(), 1.0, 1e-12);
      }
}

TEST(CloneMixed, RankTwoTwoPhotonQubitTrace) {
  Rng rng(31);
  const SectorBasis basis = enumerate_sector(2, 2);
  const SymmetricDensity rho(basis, random_density_matrix(3, 2, rng));
  EXPECT_NEAR(clone_mixed(rho, 1).joint_density().trace().real(), 1.0, 1e-12);
}

TEST(EmissionMixture, WeightsFollowLadderProbabilities) {
  const SectorBasis basis = enumerate_sector(2, 1);
  const SymmetricDensity rho(basis, Eigen::MatrixXcd::Identity(2, 2) / 2.0);
  const auto mix = emission_mixture(rho, 3, 1.0, 0.4);
  ASSERT_EQ(mix.size(), 4u);
  double total = 0.0;
  for (std::size_t l = 0; l < mix.size(); ++l) {
    EXPECT_EQ(mix[l].output.extra, static_cast<int>(l));
    EXPECT_EQ(mix[l].output.atoms, 3);
    total += mix[l].probability;
  }
  EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST(CloneOutput, MixedOutputHasNoJointAmplitudes) {
  const SectorBasis basis = enumerate_sector(2, 1);
  const SymmetricDensity rho(basis, Eigen::MatrixXcd::Identity(2, 2) / 2.0);
  EXPECT_THROW(clone_mixed(rho, 1).joint_amplitudes(), std::logic_error);
  EXPECT_THROW(clone_basis_state({1, 0}, -1), std::domain_error);
}

}  // namespace
}  // namespace clonesim
