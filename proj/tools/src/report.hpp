#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "hklab/convergence.hpp"

namespace hklab::tools {

enum class Verdict { pass, fail, report };

struct Check {
  std::string suite;
  std::string check;
  /// the statement the check verifies
  std::string anchor;
  std::string parameter;
  double value = 0.0;
  /// printed as "<=1e-06", ">=0.99999999", "==1" or empty
  std::string threshold;
  Verdict verdict = Verdict::report;
};

struct SuiteResult {
  std::string suite;
  std::vector<Check> checks;
  std::vector<ConvergenceReport> convergence;
  /// extra data files (name, contents)
  std::vector<std::pair<std::string, std::string>> files;
  /// set when the suite stopped on a numerical failure
  std::optional<std::string> aborted;

  Check& below(const std::string& check, const std::string& anchor, const std::string& parameter, double value,
               double bound);
  Check& at_least(const std::string& check, const std::string& anchor, const std::string& parameter, double value,
                  double bound);
  Check& within(const std::string& check, const std::string& anchor, const std::string& parameter, double value,
                double lower, double upper);
  Check& equals(const std::string& check, const std::string& anchor, const std::string& parameter, double value,
                double expected);
  Check& measured(const std::string& check, const std::string& anchor, const std::string& parameter, double value);

  bool passed() const;
};

const char* to_string(Verdict v);

/// suite,check,paper_anchor,parameter,value,threshold,verdict
std::string checks_csv(const std::vector<Check>& checks);

/// Human-readable overview: one table per suite listing every check group
/// with its anchor and verdict counts, then the failing rows.
std::string summary_markdown(const std::vector<SuiteResult>& results);

/// <suite>.csv, <suite>_convergence.csv when there are reports, the extra
/// files, and summary.md, all under dir.
void write_reports(const std::filesystem::path& dir, const std::vector<SuiteResult>& results);

}  // namespace hklab::tools
