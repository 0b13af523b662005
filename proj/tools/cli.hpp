#pragma once

#include <complex>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace clonesim::cli {

/// Invalid flags or flag values; maps to kUsageError.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum ExitCode : int { kSuccess = 0, kCheckFailure = 1, kUsageError = 2 };

/// Runs the command line `args` (without the program name). Output goes to
/// `out` unless --out is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses `1,0,2`.
std::vector<int> parse_occupation(const std::string& text);

/// Parses `re+imi` style complex numbers; plain reals and pure imaginaries
/// (`0.5i`, `-i`) are accepted.
std::complex<double> parse_complex(const std::string& text);

/// Comma-separated list of parse_complex tokens.
std::vector<std::complex<double>> parse_qudit(const std::string& text);

/// Full round-trip precision (17 significant digits).
std::string format_number(double value);

}  // namespace clonesim::cli
