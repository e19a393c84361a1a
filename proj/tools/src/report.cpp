#include "report.hpp"

#include <fmt/format.h>

#include <fstream>
#include <map>
#include <stdexcept>

namespace hklab::tools {

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string md_cell(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '|') out += '\\';
    out += c;
  }
  return out;
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << contents;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::pass:
      return "pass";
    case Verdict::fail:
      return "fail";
    case Verdict::report:
      break;
  }
  return "report";
}

Check& SuiteResult::below(const std::string& check, const std::string& anchor, const std::string& parameter,
                          double value, double bound) {
  checks.push_back({suite, check, anchor, parameter, value, fmt::format("<={:.3g}", bound),
                    value <= bound ? Verdict::pass : Verdict::fail});
  return checks.back();
}

Check& SuiteResult::at_least(const std::string& check, const std::string& anchor, const std::string& parameter,
                             double value, double bound) {
  checks.push_back({suite, check, anchor, parameter, value, fmt::format(">={:.12g}", bound),
                    value >= bound ? Verdict::pass : Verdict::fail});
  return checks.back();
}

Check& SuiteResult::within(const std::string& check, const std::string& anchor, const std::string& parameter,
                           double value, double lower, double upper) {
  checks.push_back({suite, check, anchor, parameter, value, fmt::format("in [{:.3g};{:.3g}]", lower, upper),
                    value >= lower && value <= upper ? Verdict::pass : Verdict::fail});
  return checks.back();
}

Check& SuiteResult::equals(const std::string& check, const std::string& anchor, const std::string& parameter,
                           double value, double expected) {
  checks.push_back({suite, check, anchor, parameter, value, fmt::format("=={:.12g}", expected),
                    value == expected ? Verdict::pass : Verdict::fail});
  return checks.back();
}

Check& SuiteResult::measured(const std::string& check, const std::string& anchor, const std::string& parameter,
                             double value) {
  checks.push_back({suite, check, anchor, parameter, value, "", Verdict::report});
  return checks.back();
}

bool SuiteResult::passed() const {
  if (aborted) return false;
  for (const auto& c : checks)
    if (c.verdict == Verdict::fail) return false;
  for (const auto& r : convergence)
    if (!r.passed()) return false;
  return true;
}

std::string checks_csv(const std::vector<Check>& checks) {
  std::string out = "suite,check,paper_anchor,parameter,value,threshold,verdict\n";
  for (const auto& c : checks) {
    out += fmt::format("{},{},{},{},{:.12g},{},{}\n", csv_field(c.suite), csv_field(c.check), csv_field(c.anchor),
                       csv_field(c.parameter), c.value, csv_field(c.threshold), to_string(c.verdict));
  }
  return out;
}

std::string summary_markdown(const std::vector<SuiteResult>& results) {
  std::string out = "# hklab verification summary\n\n";
  out += "| suite | checks | failed | verdict |\n|---|---:|---:|---|\n";
  for (const auto& r : results) {
    std::size_t failed = 0;
    for (const auto& c : r.checks) failed += c.verdict == Verdict::fail;
    for (const auto& c : r.convergence) failed += !c.passed();
    out += fmt::format("| {} | {} | {} | {} |\n", r.suite, r.checks.size() + r.convergence.size(), failed,
                       r.passed() ? "PASS" : "FAIL");
  }

  for (const auto& r : results) {
    out += fmt::format("\n## {}\n\n", r.suite);
    if (r.aborted) out += fmt::format("Stopped early: {}\n\n", *r.aborted);

    struct Group {
      std::string anchor;
      int pass = 0, fail = 0, report = 0;
    };
    std::vector<std::string> order;
    std::map<std::string, Group> groups;
    for (const auto& c : r.checks) {
      auto [it, fresh] = groups.try_emplace(c.check, Group{c.anchor});
      if (fresh) order.push_back(c.check);
      (c.verdict == Verdict::pass ? it->second.pass : c.verdict == Verdict::fail ? it->second.fail
                                                                                  : it->second.report)++;
    }
    if (!order.empty()) {
      out += "| check | verifies | pass | fail | report |\n|---|---|---:|---:|---:|\n";
      for (const auto& name : order) {
        const auto& g = groups.at(name);
        out += fmt::format("| {} | {} | {} | {} | {} |\n", name, md_cell(g.anchor), g.pass, g.fail, g.report);
      }
    }
    if (!r.convergence.empty()) {
      out += "\n| defect | generator | g | slope | expectation | verdict |\n|---|---|---|---:|---|---|\n";
      for (const auto& c : r.convergence) {
        out += fmt::format("| {}:{} | {} | {} | {} | {} | {} |\n", c.family, c.defect, c.generator,
                           c.element.empty() ? "-" : c.element, c.slope ? fmt::format("{:.4f}", *c.slope) : "NA",
                           c.expectation.describe(), c.verdict);
      }
    }
    bool header = false;
    for (const auto& c : r.checks) {
      if (c.verdict != Verdict::fail) continue;
      if (!header) out += "\nFailures:\n\n";
      header = true;
      out += fmt::format("- {} [{}]: {:.6g} (threshold {})\n", c.check, c.parameter, c.value, c.threshold);
    }
  }
  return out;
}

void write_reports(const std::filesystem::path& dir, const std::vector<SuiteResult>& results) {
  std::filesystem::create_directories(dir);
  for (const auto& r : results) {
    write_file(dir / (r.suite + ".csv"), checks_csv(r.checks));
    if (!r.convergence.empty()) write_file(dir / (r.suite + "_convergence.csv"), to_csv(r.convergence));
    for (const auto& [name, contents] : r.files) write_file(dir / name, contents);
  }
  write_file(dir / "summary.md", summary_markdown(results));
}

}  // namespace hklab::tools
