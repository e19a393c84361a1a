#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace hklab::tools {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Tolerances {
  double eigenvalue = 1e-6;
  double kernel = 1e-8;
  double overlap = 1e-8;
  double exact_operator = 1e-10;
  double route = 1e-8;
  double beta_sigma = 1e-14;
  double beta_homomorphism = 1e-12;
  /// relative tolerance on t * defect(t) against sqrt(2/e)
  double beta_constant = 0.05;
  double alpha = 5e-7;
  double compactness = 1e-6;
  double homotopy = 1e-6;
  double gamma = 1e-8;
  double algebra = 1e-12;
  double reduced_norm = 1e-6;
};

struct RunConfig {
  double half_width = 32.0;
  std::size_t samples = 1024;
  int hermite_size = 256;

  /// aligned t values for exact operator identities
  std::vector<double> operator_t{1, 2, 4};
  /// t grid of the alpha defect suite
  std::vector<double> defect_t{1, 2, 4, 8, 16};
  /// log-spaced t grid for function-space defects
  std::vector<double> beta_t{10, 31.622776601683793, 100, 316.22776601683796, 1000, 3162.2776601683795, 10000};
  std::vector<double> s_grid{0, 0.25, 0.5, 0.75, 1};

  Tolerances tol;
  std::filesystem::path out_dir = "hklab-out";
  std::uint64_t seed = 42;
  int parallel = 1;

  /// Suites to run, in order; "all" expands to every suite.
  std::vector<std::string> suites;
};

/// Reads an INI file with sections [grid], [hermite], [t_grid], [s_grid],
/// [tolerances], [output] and [run] on top of `base`.  Unknown keys are
/// errors.
RunConfig load_config(const std::filesystem::path& path, RunConfig base = {});

/// "1, 2, 4" or "log10:1:4:0.5" (10^1 .. 10^4 in steps of 10^0.5).
std::vector<double> parse_grid(const std::string& spec);

/// Throws ConfigError describing the first violated constraint.
void validate(const RunConfig& config);

const std::vector<std::string>& suite_names();

}  // namespace hklab::tools
