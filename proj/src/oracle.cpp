#include "clonesim/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <deque>
#include <numeric>
#include <stdexcept>

#include <unsupported/Eigen/MatrixFunctions>

#include "clonesim/cloner.hpp"
#include "clonesim/ladder.hpp"

namespace clonesim::oracle {

namespace {

constexpr double kHermiticityTol = 1e-12;
constexpr double kOrthonormalityTol = 1e-12;
constexpr double kRestrictionTol = 1e-12;
constexpr double kActionTol = 1e-10;
constexpr double kAmplitudeTol = 1e-9;
constexpr double kUnitarityTol = 1e-10;

int sum(const std::vector<int>& v) { return std::accumulate(v.begin(), v.end(), 0); }

// Ascending emitted-photon count, then reverse-lexicographic b occupation.
bool canonical_less(const Configuration& x, const Configuration& y) {
  const int lx = sum(x.b), ly = sum(y.b);
  if (lx != ly) return lx < ly;
  return x.b > y.b;
}

struct Move {
  Configuration target;
  double amplitude;
};

// gamma * a_i^dagger b_i^dagger c and gamma * a_i b_i c^dagger applied to one configuration.
std::vector<Move> hamiltonian_moves(const Configuration& s, double gamma) {
  std::vector<Move> moves;
  const std::size_t d = s.a.size();
  for (std::size_t i = 0; i < d; ++i) {
    if (s.c > 0) {
      Configuration t = s;
      ++t.a[i];
      ++t.b[i];
      --t.c;
      const double amp = std::sqrt(static_cast<double>(s.a[i] + 1) * (s.b[i] + 1) * s.c);
      moves.push_back({std::move(t), gamma * amp});
    }
    if (s.a[i] > 0 && s.b[i] > 0) {
      Configuration t = s;
      --t.a[i];
      --t.b[i];
      ++t.c;
      const double amp = std::sqrt(static_cast<double>(s.a[i]) * s.b[i] * (s.c + 1));
      moves.push_back({std::move(t), gamma * amp});
    }
  }
  return moves;
}

Report make_report(int d, int atoms, const Occupation& j, double gamma) {
  Report r;
  r.params["d"] = d;
  r.params["N"] = atoms;
  r.params["j"] = std::vector<int>(j.counts().begin(), j.counts().end());
  r.params["gamma"] = gamma;
  return r;
}

}  // namespace

std::size_t expected_sector_size(int d, int atoms) {
  double total = 0.0;
  for (int l = 0; l <= atoms; ++l) total += binomial(l + d - 1, d - 1);
  return static_cast<std::size_t>(total);
}

FullHamiltonian build_full_hamiltonian(int d, int atoms, const Occupation& j, double gamma,
                                       std::size_t max_sector_size) {
  if (d < 2) throw std::domain_error("oracle: qudit dimension must be at least 2");
  if (atoms < 0) throw std::domain_error("oracle: atom number must be non-negative");
  if (static_cast<int>(j.dim()) != d) throw std::domain_error("oracle: input occupation has wrong length");

  FullHamiltonian full;
  FullSectorBasis& basis = full.basis;
  basis.d = d;
  basis.atoms = atoms;
  basis.j = j;

  // Closure of the initial configuration under the Hamiltonian.
  const Configuration start{std::vector<int>(j.counts().begin(), j.counts().end()),
                            std::vector<int>(static_cast<std::size_t>(d), 0), atoms};
  std::map<Configuration, bool> seen{{start, true}};
  std::deque<Configuration> frontier{start};
  while (!frontier.empty()) {
    const Configuration s = frontier.front();
    frontier.pop_front();
    for (auto& m : hamiltonian_moves(s, gamma)) {
      if (seen.emplace(m.target, true).second) {
        if (seen.size() > max_sector_size)
          throw std::length_error("oracle: sector exceeds " + std::to_string(max_sector_size) +
                                  " configurations");
        frontier.push_back(std::move(m.target));
      }
    }
  }
  for (const auto& entry : seen) basis.states.push_back(entry.first);
  std::sort(basis.states.begin(), basis.states.end(), canonical_less);
  for (std::size_t i = 0; i < basis.states.size(); ++i) basis.index.emplace(basis.states[i], i);

  const auto n = static_cast<Eigen::Index>(basis.size());
  full.matrix = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t col = 0; col < basis.size(); ++col)
    for (const auto& m : hamiltonian_moves(basis.states[col], gamma))
      full.matrix(static_cast<Eigen::Index>(basis.index.at(m.target)),
                  static_cast<Eigen::Index>(col)) += m.amplitude;
  return full;
}

bool Report::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

void Report::add(std::string name, double max_deviation, double tolerance) {
  const bool ok = std::isfinite(max_deviation) && max_deviation <= tolerance;
  checks.push_back({std::move(name), max_deviation, tolerance, ok});
}

void Report::append(const Report& other, const std::string& prefix) {
  for (const auto& c : other.checks) checks.push_back({prefix + c.name, c.max_deviation, c.tolerance, c.pass});
}

nlohmann::ordered_json Report::to_json() const {
  nlohmann::ordered_json j;
  j["params"] = params;
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : checks)
    j["checks"].push_back({{"name", c.name},
                           {"max_deviation", c.max_deviation},
                           {"tolerance", c.tolerance},
                           {"pass", c.pass}});
  j["pass"] = pass();
  return j;
}

Eigen::VectorXd embed_ladder_state(const FullSectorBasis& basis, int extra) {
  const CloneOutput f = clone_basis_state(basis.j, extra);
  const Eigen::MatrixXcd& amps = f.joint_amplitudes();
  Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t ia = 0; ia < f.a_basis.size(); ++ia)
    for (std::size_t ib = 0; ib < f.b_basis.size(); ++ib) {
      const std::complex<double> amp = amps(static_cast<Eigen::Index>(ia), static_cast<Eigen::Index>(ib));
      if (amp == 0.0) continue;
      const auto& a = f.a_basis[ia].counts();
      const auto& b = f.b_basis[ib].counts();
      const Configuration cfg{{a.begin(), a.end()}, {b.begin(), b.end()}, basis.atoms - extra};
      auto it = basis.index.find(cfg);
      if (it == basis.index.end())
        throw std::logic_error("oracle: ladder state leaves the conserved sector");
      v(static_cast<Eigen::Index>(it->second)) = amp.real();
    }
  return v;
}

Report verify_ladder(int d, int atoms, const Occupation& j, double gamma,
                     const VerifyOptions& options) {
  Report report = make_report(d, atoms, j, gamma);
  const FullHamiltonian full = build_full_hamiltonian(d, atoms, j, gamma, options.max_sector_size);
  const FullSectorBasis& basis = full.basis;
  const Eigen::MatrixXd& h = full.matrix;

  const double size_gap = std::abs(static_cast<double>(basis.size()) -
                                   static_cast<double>(expected_sector_size(d, atoms)));
  report.add("sector_size", size_gap, 0.0);

  double violation = 0.0;
  for (const auto& s : basis.states) {
    for (int i = 0; i < d; ++i) violation = std::max(violation, std::abs(double(s.a[i] - s.b[i] - j[i])));
    violation = std::max(violation, std::abs(double(s.c + sum(s.b) - atoms)));
  }
  report.add("conservation", violation, 0.0);
  report.add("hermiticity", (h - h.transpose()).cwiseAbs().maxCoeff(), kHermiticityTol);

  LadderHamiltonian ladder = ladder_matrix(d, atoms, j.total(), gamma);
  for (double& w : ladder.offdiag) w += options.perturbation;

  Eigen::MatrixXd f(static_cast<Eigen::Index>(basis.size()), atoms + 1);
  for (int l = 0; l <= atoms; ++l) f.col(l) = embed_ladder_state(basis, l);

  const Eigen::MatrixXd gram = f.transpose() * f;
  report.add("orthonormality",
             (gram - Eigen::MatrixXd::Identity(atoms + 1, atoms + 1)).cwiseAbs().maxCoeff(),
             kOrthonormalityTol);

  const Eigen::MatrixXd restricted = f.transpose() * h * f;
  report.add("restricted_matrix", (restricted - ladder.dense()).cwiseAbs().maxCoeff(), kRestrictionTol);

  // Row-by-row action H|F_l> = w_l |F_{l+1}> + w_{l-1} |F_{l-1}>.
  double first = 0.0, interior = 0.0, last = 0.0, outside = 0.0;
  for (int l = 0; l <= atoms; ++l) {
    const Eigen::VectorXd image = h * f.col(l);
    Eigen::VectorXd expected = Eigen::VectorXd::Zero(image.size());
    if (l < atoms) expected += ladder.offdiag[l] * f.col(l + 1);
    if (l > 0) expected += ladder.offdiag[l - 1] * f.col(l - 1);
    const double dev = (image - expected).cwiseAbs().maxCoeff();
    if (l == 0) first = std::max(first, dev);
    if (l == atoms) last = std::max(last, dev);
    if (l > 0 && l < atoms) interior = std::max(interior, dev);

    Eigen::VectorXd residual = image;
    for (int k : {l - 1, l + 1})
      if (k >= 0 && k <= atoms) residual -= f.col(k).dot(image) * f.col(k);
    outside = std::max(outside, residual.norm());
  }
  report.add("boundary_row_first", first, kActionTol);
  report.add("interior_rows", interior, kActionTol);
  report.add("boundary_row_last", last, kActionTol);
  report.add("invariant_subspace", outside, kActionTol);
  return report;
}

Report verify_evolution(int d, int atoms, const Occupation& j, double gamma, double t,
                        const VerifyOptions& options) {
  Report report = make_report(d, atoms, j, gamma);
  report.params["t"] = t;
  const FullHamiltonian full = build_full_hamiltonian(d, atoms, j, gamma, options.max_sector_size);

  const Eigen::MatrixXcd generator =
      std::complex<double>(0.0, -t) * full.matrix.cast<std::complex<double>>();
  const Eigen::MatrixXcd propagator = generator.exp();
  const Eigen::VectorXcd psi =
      propagator * embed_ladder_state(full.basis, 0).cast<std::complex<double>>();

  LadderHamiltonian ladder = ladder_matrix(d, atoms, j.total(), gamma);
  for (double& w : ladder.offdiag) w += options.perturbation;
  const EvolutionProfile profile = evolve(ladder, t);

  double amp_dev = 0.0;
  Eigen::VectorXcd projected = psi;
  for (int l = 0; l <= atoms; ++l) {
    const Eigen::VectorXcd fl = embed_ladder_state(full.basis, l).cast<std::complex<double>>();
    const std::complex<double> overlap = fl.dot(psi);
    projected -= overlap * fl;
    amp_dev = std::max(amp_dev, std::abs(overlap - profile.amplitudes[static_cast<std::size_t>(l)]));
  }
  const double total = std::accumulate(profile.probabilities.begin(), profile.probabilities.end(), 0.0);

  report.add("amplitudes", amp_dev, kAmplitudeTol);
  report.add("leakage", projected.norm(), kAmplitudeTol);
  report.add("unitarity", std::abs(total - 1.0), kUnitarityTol);
  return report;
}

}  // namespace clonesim::oracle
