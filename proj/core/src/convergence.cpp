#include "hklab/convergence.hpp"

#include <fmt/format.h>

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace hklab {

void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& task) {
  const std::size_t threads = std::min<std::size_t>(count, static_cast<std::size_t>(std::max(1, workers)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          task(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

std::optional<double> fit_loglog_slope(const std::vector<double>& t, const std::vector<double>& values,
                                       double noise_floor) {
  if (t.size() != values.size()) throw std::invalid_argument("fit_loglog_slope: size mismatch");
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (values[i] > noise_floor && t[i] > 0.0) {
      xs.push_back(std::log(t[i]));
      ys.push_back(std::log(values[i]));
    }
  }
  if (xs.size() < 5) return std::nullopt;
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  if (sxx == 0.0) return std::nullopt;
  return sxy / sxx;
}

std::string Expectation::describe() const {
  switch (kind) {
    case Kind::all_below:
      return fmt::format("all<={:.3g}", upper);
    case Kind::last_below:
      return fmt::format("last<={:.3g}", upper);
    case Kind::slope_between:
      return fmt::format("slope in [{:.3g};{:.3g}]", lower, upper);
    case Kind::decreasing:
      return "decreasing";
    case Kind::report_only:
      break;
  }
  return "none";
}

void finalize(ConvergenceReport& report, double noise_floor) {
  report.slope = fit_loglog_slope(report.t, report.values, noise_floor);
  const auto& v = report.values;
  bool ok = true;
  switch (report.expectation.kind) {
    case Expectation::Kind::all_below:
      for (double x : v) ok = ok && x <= report.expectation.upper;
      break;
    case Expectation::Kind::last_below:
      ok = !v.empty() && v.back() <= report.expectation.upper;
      break;
    case Expectation::Kind::slope_between:
      ok = report.slope && *report.slope >= report.expectation.lower && *report.slope <= report.expectation.upper;
      break;
    case Expectation::Kind::decreasing:
      ok = v.size() >= 2 && v.back() < v.front();
      break;
    case Expectation::Kind::report_only:
      report.verdict = "report";
      return;
  }
  bool exact = true;
  for (double x : v) exact = exact && x <= noise_floor;
  report.verdict = !ok ? "fail" : (exact ? "exact" : "pass");
}

std::string to_csv(const std::vector<ConvergenceReport>& reports) {
  std::string out = "defect,generator,g,s,t,value,slope,threshold,verdict\n";
  for (const auto& r : reports) {
    const std::string slope = r.slope ? fmt::format("{:.6f}", *r.slope) : "NA";
    for (std::size_t i = 0; i < r.t.size(); ++i) {
      out += fmt::format("{}:{},\"{}\",{},{},{:.17g},{:.17g},{},{},{}\n", r.family, r.defect, r.generator,
                         r.element.empty() ? "-" : r.element, r.s, r.t[i], r.values[i], slope,
                         r.expectation.describe(), r.verdict);
    }
  }
  return out;
}

}  // namespace hklab
