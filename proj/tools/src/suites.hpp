#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <string>
#include <vector>

#include "config.hpp"
#include "hklab/discretization.hpp"
#include "hklab/hermite_model.hpp"
#include "hklab/morphisms.hpp"
#include "report.hpp"

namespace hklab::tools {

/// Operators shared between suites of one run: the grid Dirac calculus and
/// the Hermite models, built on first use.
class SuiteContext {
 public:
  explicit SuiteContext(RunConfig config);

  const RunConfig& config() const { return config_; }
  GridSpec grid() const { return GridSpec(config_.half_width, config_.samples); }
  const DiracCalculus& dirac();
  const HermiteModel& hermite() { return hermite(config_.hermite_size); }
  const HermiteModel& hermite(int size);

  /// Independent stream per suite, so suites can run alone or in any order.
  std::mt19937_64 rng(const std::string& suite) const;

 private:
  RunConfig config_;
  std::mutex mutex_;
  std::unique_ptr<DiracCalculus> dirac_;
  std::map<int, std::unique_ptr<HermiteModel>> hermite_;
};

SuiteResult spectrum_suite(SuiteContext& ctx);
SuiteResult beta_suite(SuiteContext& ctx);
SuiteResult alpha_suite(SuiteContext& ctx);
SuiteResult gamma_homotopy_suite(SuiteContext& ctx);
SuiteResult tensor_suite(SuiteContext& ctx);
SuiteResult crossed_suite(SuiteContext& ctx);
SuiteResult properness_suite(SuiteContext& ctx);

/// Runs one suite by name ("all" is not accepted here).  Numerical errors
/// are caught and recorded as an aborted, failing result.
SuiteResult evaluate_suite(const std::string& name, SuiteContext& ctx);

/// Runs the named suite ("all" runs every suite), writes the reports under
/// config.out_dir and returns the exit code: 0 if every check passed, 1
/// otherwise, 2 for an invalid configuration.
int run_suite(const std::string& name, const RunConfig& config);

}  // namespace hklab::tools
