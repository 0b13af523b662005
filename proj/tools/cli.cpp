#include "cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <fmt/core.h>
#include <json.hpp>

#include "clonesim/cloner.hpp"
#include "clonesim/fock_basis.hpp"
#include "clonesim/ladder.hpp"
#include "clonesim/oracle.hpp"
#include "clonesim/reduction.hpp"
#include "clonesim/sampling.hpp"

namespace clonesim::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr double kFidelityGate = 1e-9;
constexpr double kUnitarityGate = 1e-10;
constexpr double kQuditInputTol = 1e-6;

struct RunConfig {
  int d = 2;
  int photons = 1;
  int extra = 0;
  int copies_max = -1;
  int atoms = 1;
  double tau = 0.0;
  std::string j;
  std::string x;
  std::uint64_t seed = kDefaultSeed;
  std::string format = "csv";
  std::string out_path;
  bool json_flag = false;
  double perturbation = 0.0;
  int draws = 50;
};

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) parts.push_back(trim(item));
  if (!text.empty() && text.back() == ',') parts.emplace_back();
  return parts;
}

double parse_real(std::string s) {
  if (!s.empty() && s.front() == '+') s.erase(0, 1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw UsageError("not a number: '" + s + "'");
  return v;
}

// "", "+" and "-" are the implicit unit coefficient of a bare `i`.
double parse_imaginary_coefficient(const std::string& s) {
  if (s.empty() || s == "+") return 1.0;
  if (s == "-") return -1.0;
  return parse_real(s);
}

PureQudit qudit_from_flag(const std::string& text) {
  const auto parsed = parse_qudit(text);
  Eigen::VectorXcd x(static_cast<Eigen::Index>(parsed.size()));
  for (std::size_t i = 0; i < parsed.size(); ++i) x(static_cast<Eigen::Index>(i)) = parsed[i];
  if (x.size() < 2) throw UsageError("--x needs at least two amplitudes");
  if (std::abs(x.squaredNorm() - 1.0) > kQuditInputTol)
    throw UsageError("--x amplitudes are not normalized");
  return PureQudit::normalized(x);
}

void check_range(const char* flag, int value, int lo, int hi) {
  if (value < lo || value > hi)
    throw UsageError(fmt::format("{} must lie in [{}, {}], got {}", flag, lo, hi, value));
}

json occupation_json(const Occupation& v) {
  return std::vector<int>(v.counts().begin(), v.counts().end());
}

// ---------------------------------------------------------------------------

int cmd_fidelity(const RunConfig& cfg, std::ostream& out) {
  check_range("--d", cfg.d, 2, 6);
  check_range("--m", cfg.photons, 1, 6);
  const int copies_max = cfg.copies_max < 0 ? std::min(cfg.photons + 3, 12) : cfg.copies_max;
  check_range("--l-max", copies_max, cfg.photons, 12);

  struct Row {
    int copies;
    double single_sim, single_closed, global_sim, global_closed, diff;
  };
  std::vector<Row> rows;
  Rng rng(cfg.seed);
  bool ok = true;
  for (int copies = cfg.photons; copies <= copies_max; ++copies) {
    const PureQudit x = random_pure_qudit(cfg.d, rng);
    const CloneOutput clone = clone_pure(x, cfg.photons, copies - cfg.photons);
    Row r{copies,
          fidelity_single(reduce_to_single(clone), x),
          closed_form_single(cfg.photons, copies, cfg.d),
          fidelity_global(clone, x),
          closed_form_global(cfg.photons, copies, cfg.d),
          0.0};
    r.diff = std::max(std::abs(r.single_sim - r.single_closed), std::abs(r.global_sim - r.global_closed));
    ok = ok && r.diff <= kFidelityGate;
    rows.push_back(r);
  }

  if (cfg.format == "json") {
    json doc;
    doc["params"] = {{"d", cfg.d}, {"M", cfg.photons}, {"L_max", copies_max}, {"seed", cfg.seed}};
    doc["rows"] = json::array();
    for (const auto& r : rows)
      doc["rows"].push_back({{"d", cfg.d},
                             {"M", cfg.photons},
                             {"L", r.copies},
                             {"F_single_simulated", r.single_sim},
                             {"F_single_closed", r.single_closed},
                             {"F_global_simulated", r.global_sim},
                             {"F_global_closed", r.global_closed},
                             {"max_abs_diff", r.diff}});
    doc["pass"] = ok;
    out << doc.dump(2) << '\n';
  } else {
    out << "# seed=" << cfg.seed << '\n';
    out << "d,M,L,F_single_simulated,F_single_closed,F_global_simulated,F_global_closed,max_abs_diff\n";
    for (const auto& r : rows)
      out << fmt::format("{},{},{},{},{},{},{},{}\n", cfg.d, cfg.photons, r.copies,
                         format_number(r.single_sim), format_number(r.single_closed),
                         format_number(r.global_sim), format_number(r.global_closed),
                         format_number(r.diff));
  }
  return ok ? kSuccess : kCheckFailure;
}

int cmd_evolve(const RunConfig& cfg, std::ostream& out) {
  int d = cfg.d;
  int photons = cfg.photons;
  if (!cfg.j.empty()) {
    const Occupation j(parse_occupation(cfg.j));
    d = static_cast<int>(j.dim());
    photons = j.total();
  }
  check_range("--d", d, 2, 64);
  check_range("--m", photons, 0, 100);
  check_range("--n", cfg.atoms, 1, 100);
  if (!std::isfinite(cfg.tau)) throw UsageError("--tau must be finite");

  const auto probs = emission_probabilities(ladder_matrix(d, cfg.atoms, photons, 1.0), cfg.tau);
  const double total = std::accumulate(probs.begin(), probs.end(), 0.0);

  if (cfg.format == "json") {
    json doc;
    doc["params"] = {{"d", d}, {"M", photons}, {"N", cfg.atoms}, {"tau", cfg.tau}};
    doc["rows"] = json::array();
    for (std::size_t l = 0; l < probs.size(); ++l)
      doc["rows"].push_back({{"l", l}, {"probability", probs[l]}});
    out << doc.dump(2) << '\n';
  } else {
    out << "l,probability\n";
    for (std::size_t l = 0; l < probs.size(); ++l) out << l << ',' << format_number(probs[l]) << '\n';
  }
  return std::abs(total - 1.0) <= kUnitarityGate ? kSuccess : kCheckFailure;
}

int cmd_clone(const RunConfig& cfg, std::ostream& out, bool d_given, bool m_given) {
  if (cfg.j.empty() == cfg.x.empty()) throw UsageError("clone needs exactly one of --j or --x");
  if (cfg.extra < 0) throw UsageError("--l must be non-negative");

  std::optional<PureQudit> x;
  CloneOutput clone;
  SingleQuditDensity input_single = SingleQuditDensity::maximally_mixed(2);
  if (!cfg.j.empty()) {
    if (m_given) throw UsageError("--m is implied by --j");
    const Occupation j(parse_occupation(cfg.j));
    if (j.dim() < 2) throw UsageError("--j needs at least two modes");
    if (j.total() < 1) throw UsageError("--j must contain at least one photon");
    clone = clone_basis_state(j, cfg.extra);
    SymmetricState input{enumerate_sector(static_cast<int>(j.dim()), j.total()), {}};
    input.amplitudes = Eigen::VectorXcd::Unit(static_cast<Eigen::Index>(input.basis.size()),
                                              static_cast<Eigen::Index>(input.basis.index_of(j)));
    input_single = reduce_to_single(SymmetricDensity::pure(input));
  } else {
    x = qudit_from_flag(cfg.x);
    check_range("--m", cfg.photons, 1, 12);
    clone = clone_pure(*x, cfg.photons, cfg.extra);
    input_single = SingleQuditDensity::pure(*x);
  }
  if (d_given && cfg.d != clone.d)
    throw UsageError(fmt::format("--d {} does not match the input dimension {}", cfg.d, clone.d));

  const SingleQuditDensity reduced = reduce_to_single(clone);
  const double fidelity = x ? fidelity_single(reduced, *x) : state_fidelity(input_single, reduced);
  const bool has_global = x.has_value();
  const double global = has_global ? fidelity_global(clone, *x) : 0.0;
  const ShrinkingFit fit = shrinking_factor(input_single, reduced);
  const Eigen::MatrixXcd& amps = clone.joint_amplitudes();

  if (cfg.format == "json") {
    json doc;
    doc["params"] = {{"d", clone.d}, {"M", clone.photons}, {"l", clone.extra}, {"L", clone.copies()}};
    doc["amplitudes"] = json::array();
    for (std::size_t a = 0; a < clone.a_basis.size(); ++a)
      for (std::size_t b = 0; b < clone.b_basis.size(); ++b) {
        const Complex v = amps(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
        if (v == Complex(0.0)) continue;
        doc["amplitudes"].push_back({{"a", occupation_json(clone.a_basis[a])},
                                     {"b", occupation_json(clone.b_basis[b])},
                                     {"re", v.real()},
                                     {"im", v.imag()}});
      }
    json rows = json::array();
    for (int r = 0; r < reduced.dim(); ++r) {
      json row = json::array();
      for (int s = 0; s < reduced.dim(); ++s)
        row.push_back({reduced.matrix()(r, s).real(), reduced.matrix()(r, s).imag()});
      rows.push_back(row);
    }
    doc["reduced"] = rows;
    doc["fidelity"] = fidelity;
    doc["global_fidelity"] = has_global ? json(global) : json(nullptr);
    doc["shrinking_factor"] = fit.status == ShrinkingFit::Status::degenerate ? json(nullptr) : json(fit.eta);
    doc["shrinking_residual"] = fit.residual;
    out << doc.dump(2) << '\n';
  } else {
    out << "section,a,b,re,im\n";
    for (std::size_t a = 0; a < clone.a_basis.size(); ++a)
      for (std::size_t b = 0; b < clone.b_basis.size(); ++b) {
        const Complex v = amps(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
        if (v == Complex(0.0)) continue;
        out << "amplitude," << csv_field(clone.a_basis[a].to_string()) << ','
            << csv_field(clone.b_basis[b].to_string()) << ',' << format_number(v.real()) << ','
            << format_number(v.imag()) << '\n';
      }
    for (int r = 0; r < reduced.dim(); ++r)
      for (int s = 0; s < reduced.dim(); ++s)
        out << "reduced," << r << ',' << s << ',' << format_number(reduced.matrix()(r, s).real()) << ','
            << format_number(reduced.matrix()(r, s).imag()) << '\n';
    out << "fidelity,,," << format_number(fidelity) << ",\n";
    if (has_global) out << "global_fidelity,,," << format_number(global) << ",\n";
    if (fit.status != ShrinkingFit::Status::degenerate)
      out << "shrinking_factor,,," << format_number(fit.eta) << ",\n";
    out << "shrinking_residual,,," << format_number(fit.residual) << ",\n";
  }
  return kSuccess;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, bool d_given, bool n_given, bool m_given) {
  const int d_max = d_given ? cfg.d : 3;
  const int n_max = n_given ? cfg.atoms : 3;
  const int m_max = m_given ? cfg.photons : 2;
  check_range("--d", d_max, 2, 4);
  check_range("--n", n_max, 1, 4);
  check_range("--m", m_max, 0, 3);
  if (cfg.draws < 0) throw UsageError("--draws must be non-negative");

  const oracle::VerifyOptions options{cfg.perturbation};
  oracle::Report report;
  report.params = {{"d_max", d_max}, {"N_max", n_max},   {"M_max", m_max},
                   {"draws", cfg.draws}, {"seed", cfg.seed}, {"perturbation", cfg.perturbation}};

  auto label = [](const char* kind, int d, int n, const Occupation& j) {
    return fmt::format("{}(d={},N={},j=({})).", kind, d, n, j.to_string());
  };

  for (int d = 2; d <= d_max; ++d)
    for (int n = 1; n <= n_max; ++n)
      for (int m = 0; m <= m_max; ++m)
        for (const Occupation& j : enumerate_sector(d, m))
          report.append(oracle::verify_ladder(d, n, j, 1.0, options), label("ladder", d, n, j));

  Rng rng(cfg.seed);
  for (int draw = 0; draw < cfg.draws; ++draw) {
    const int d = rng.integer(2, d_max);
    const int n = rng.integer(1, n_max);
    const SectorBasis sector = enumerate_sector(d, rng.integer(0, m_max));
    const Occupation& j = sector[static_cast<std::size_t>(rng.integer(0, static_cast<int>(sector.size()) - 1))];
    const double t = rng.uniform(0.0, 5.0);
    report.append(oracle::verify_evolution(d, n, j, 1.0, t, options),
                  fmt::format("evolution#{}(d={},N={},j=({}),t={}).", draw, d, n, j.to_string(),
                              format_number(t)));
  }

  if (cfg.format == "json") {
    out << report.to_json().dump(2) << '\n';
  } else {
    out << "# seed=" << cfg.seed << '\n';
    out << "name,max_deviation,tolerance,pass\n";
    for (const auto& c : report.checks)
      out << csv_field(c.name) << ',' << format_number(c.max_deviation) << ','
          << format_number(c.tolerance) << ',' << (c.pass ? "true" : "false") << '\n';
    out << "# pass=" << (report.pass() ? "true" : "false") << '\n';
  }
  return report.pass() ? kSuccess : kCheckFailure;
}

}  // namespace

std::vector<int> parse_occupation(const std::string& text) {
  std::vector<int> counts;
  for (const auto& part : split_commas(text)) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (part.empty() || ec != std::errc() || ptr != part.data() + part.size() || v < 0)
      throw UsageError("invalid occupation entry '" + part + "'");
    counts.push_back(v);
  }
  return counts;
}

std::complex<double> parse_complex(const std::string& raw) {
  const std::string text = trim(raw);
  if (text.empty()) throw UsageError("empty complex number");
  if (text.back() != 'i') return {parse_real(text), 0.0};

  const std::string body = text.substr(0, text.size() - 1);
  for (std::size_t pos = body.size(); pos-- > 1;) {
    const char c = body[pos];
    if ((c == '+' || c == '-') && body[pos - 1] != 'e' && body[pos - 1] != 'E')
      return {parse_real(body.substr(0, pos)), parse_imaginary_coefficient(body.substr(pos))};
  }
  return {0.0, parse_imaginary_coefficient(body)};
}

std::vector<std::complex<double>> parse_qudit(const std::string& text) {
  std::vector<std::complex<double>> values;
  for (const auto& part : split_commas(text)) values.push_back(parse_complex(part));
  return values;
}

std::string format_number(double value) { return fmt::format("{:.17g}", value); }

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stimulated-emission cloning of symmetric qudit states"};
  app.name("clonesim");
  app.require_subcommand(1);

  RunConfig cfg;
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", cfg.out_path, "Write output to PATH instead of stdout");
  };

  auto* fidelity = app.add_subcommand("fidelity", "Simulated vs closed-form cloning fidelities");
  fidelity->add_option("--d", cfg.d, "Qudit dimension");
  fidelity->add_option("--m", cfg.photons, "Number of identical input qudits M");
  fidelity->add_option("--l-max", cfg.copies_max, "Largest output copy number L");
  fidelity->add_option("--seed", cfg.seed, "Seed for the sampled input qudits");
  add_format(fidelity);

  auto* evolve_cmd = app.add_subcommand("evolve", "Emission probabilities |f_l(tau)|^2");
  auto* evolve_d = evolve_cmd->add_option("--d", cfg.d, "Qudit dimension");
  auto* evolve_m = evolve_cmd->add_option("--m", cfg.photons, "Input photon number M");
  evolve_cmd->add_option("--j", cfg.j, "Input occupation vector (sets d and M)")
      ->excludes(evolve_d)
      ->excludes(evolve_m);
  evolve_cmd->add_option("--n", cfg.atoms, "Number of excited atoms N");
  evolve_cmd->add_option("--tau", cfg.tau, "Dimensionless time gamma*t");
  add_format(evolve_cmd);

  auto* clone_cmd = app.add_subcommand("clone", "Cloning output state for l extra copies");
  auto* clone_d = clone_cmd->add_option("--d", cfg.d, "Qudit dimension (checked against the input)");
  auto* clone_m = clone_cmd->add_option("--m", cfg.photons, "Number of identical input qudits (with --x)");
  clone_cmd->add_option("--j", cfg.j, "Basis input occupation vector, e.g. 1,0");
  clone_cmd->add_option("--x", cfg.x, "Pure input qudit, e.g. 0.6,0.8i");
  clone_cmd->add_option("--l", cfg.extra, "Number of additional copies l");
  add_format(clone_cmd);

  auto* verify_cmd = app.add_subcommand("verify", "Brute-force Fock-space verification");
  auto* verify_d = verify_cmd->add_option("--d", cfg.d, "Largest qudit dimension");
  auto* verify_n = verify_cmd->add_option("--n", cfg.atoms, "Largest atom number");
  auto* verify_m = verify_cmd->add_option("--m", cfg.photons, "Largest input photon number");
  verify_cmd->add_option("--draws", cfg.draws, "Number of sampled evolution checks");
  verify_cmd->add_option("--seed", cfg.seed, "Seed for the sampled evolution checks");
  verify_cmd->add_flag("--json", cfg.json_flag, "Shorthand for --format json");
  verify_cmd->add_option("--perturb", cfg.perturbation, "Offset added to ladder elements (test hook)")
      ->group("");
  add_format(verify_cmd);

  std::vector<std::string> argv_storage{"clonesim"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }
  if (cfg.json_flag) cfg.format = "json";

  std::ofstream file;
  if (!cfg.out_path.empty()) {
    file.open(cfg.out_path);
    if (!file) {
      err << "clonesim: cannot open " << cfg.out_path << " for writing\n";
      return kUsageError;
    }
  }
  std::ostream& sink = cfg.out_path.empty() ? out : file;

  try {
    if (*fidelity) return cmd_fidelity(cfg, sink);
    if (*evolve_cmd) return cmd_evolve(cfg, sink);
    if (*clone_cmd) return cmd_clone(cfg, sink, clone_d->count() > 0, clone_m->count() > 0);
    return cmd_verify(cfg, sink, verify_d->count() > 0, verify_n->count() > 0, verify_m->count() > 0);
  } catch (const UsageError& e) {
    err << "clonesim: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::domain_error& e) {
    err << "clonesim: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::length_error& e) {
    err << "clonesim: " << e.what() << '\n';
    return kUsageError;
  }
}

}  // namespace clonesim::cli
