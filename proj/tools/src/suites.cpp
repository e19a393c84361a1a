#include "suites.hpp"

#include <fmt/format.h>

#include <chrono>
#include <iostream>

namespace hklab::tools {

SuiteContext::SuiteContext(RunConfig config) : config_(std::move(config)) {}

const DiracCalculus& SuiteContext::dirac() {
  std::lock_guard lock(mutex_);
  if (!dirac_) dirac_ = std::make_unique<DiracCalculus>(grid());
  return *dirac_;
}

const HermiteModel& SuiteContext::hermite(int size) {
  std::lock_guard lock(mutex_);
  auto& slot = hermite_[size];
  if (!slot) slot = std::make_unique<HermiteModel>(HermiteBasis(size));
  return *slot;
}

std::mt19937_64 SuiteContext::rng(const std::string& suite) const {
  std::seed_seq seq(suite.begin(), suite.end());
  std::vector<std::uint64_t> mixed(1);
  seq.generate(mixed.begin(), mixed.end());
  return std::mt19937_64(config_.seed ^ mixed.front());
}

SuiteResult evaluate_suite(const std::string& name, SuiteContext& ctx) {
  using Fn = SuiteResult (*)(SuiteContext&);
  static const std::map<std::string, Fn> table{
      {"spectrum", spectrum_suite}, {"beta", beta_suite},       {"alpha", alpha_suite},
      {"gamma-homotopy", gamma_homotopy_suite},                 {"tensor", tensor_suite},
      {"crossed", crossed_suite},   {"properness", properness_suite}};
  const auto it = table.find(name);
  if (it == table.end()) throw ConfigError(fmt::format("unknown suite '{}'", name));
  try {
    return it->second(ctx);
  } catch (const KernelMultiplicityError& e) {
    SuiteResult r{name};
    r.aborted = fmt::format("kernel multiplicity invariant failed: {}", e.what());
    return r;
  } catch (const MisalignmentError& e) {
    SuiteResult r{name};
    r.aborted = fmt::format("grid alignment invariant failed: {}", e.what());
    return r;
  } catch (const std::exception& e) {
    SuiteResult r{name};
    r.aborted = fmt::format("numerical failure: {}", e.what());
    return r;
  }
}

int run_suite(const std::string& name, const RunConfig& config) {
  RunConfig c = config;
  c.suites = {name};
  try {
    validate(c);
  } catch (const ConfigError& e) {
    std::cerr << "hklab: config error: " << e.what() << "\n";
    return 2;
  }
  const std::vector<std::string> names = name == "all" ? suite_names() : std::vector<std::string>{name};

  SuiteContext ctx(c);
  std::vector<SuiteResult> results;
  bool ok = true;
  for (const auto& n : names) {
    const auto start = std::chrono::steady_clock::now();
    results.push_back(evaluate_suite(n, ctx));
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const auto& r = results.back();
    std::cerr << fmt::format("{:<15} {} ({:.1f} s)\n", n, r.passed() ? "PASS" : "FAIL", secs);
    if (r.aborted) std::cerr << "  " << *r.aborted << "\n";
    for (const auto& check : r.checks)
      if (check.verdict == Verdict::fail)
        std::cerr << fmt::format("  failed {} [{}] value {:.6g} threshold {}\n", check.check, check.parameter,
                                 check.value, check.threshold);
    for (const auto& rep : r.convergence)
      if (!rep.passed())
        std::cerr << fmt::format("  failed {}:{} {} {} ({})\n", rep.family, rep.defect, rep.generator, rep.element,
                                 rep.expectation.describe());
    ok = ok && r.passed();
  }
  try {
    write_reports(c.out_dir, results);
  } catch (const std::exception& e) {
    std::cerr << "hklab: " << e.what() << "\n";
    return 2;
  }
  return ok ? 0 : 1;
}

}  // namespace hklab::tools
