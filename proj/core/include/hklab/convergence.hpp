#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hklab/graded_core.hpp"
#include "hklab/group.hpp"

namespace hklab {

/// Runs task(i) for i in [0, count) on up to `workers` threads.  Each index
/// runs exactly once; results should be stored by index so the outcome does
/// not depend on scheduling.
void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& task);

/// Least-squares slope of log(value) against log(t), using only values above
/// the noise floor.  nullopt when fewer than five points remain.
std::optional<double> fit_loglog_slope(const std::vector<double>& t, const std::vector<double>& values,
                                       double noise_floor = 1e-13);

/// What a defect sequence is expected to do.
struct Expectation {
  enum class Kind {
    /// every value <= bound
    all_below,
    /// value at the largest t <= bound
    last_below,
    /// fitted slope in [lower, upper]
    slope_between,
    /// value at the largest t < value at the smallest t
    decreasing,
    /// measured only, no verdict
    report_only,
  };
  Kind kind = Kind::report_only;
  double lower = 0.0;
  double upper = 0.0;

  static Expectation all_below(double bound) { return {Kind::all_below, 0.0, bound}; }
  static Expectation last_below(double bound) { return {Kind::last_below, 0.0, bound}; }
  static Expectation slope_between(double lo, double hi) { return {Kind::slope_between, lo, hi}; }
  static Expectation decreasing() { return {Kind::decreasing, 0.0, 0.0}; }
  static Expectation report_only() { return {}; }

  std::string describe() const;
};

struct ConvergenceReport {
  std::string family;
  std::string defect;
  std::string generator;
  std::string element;  // group element, empty for algebraic defects
  double s = 1.0;
  std::vector<double> t;
  std::vector<double> values;
  std::optional<double> slope;
  Expectation expectation;
  /// exact, pass, fail or report
  std::string verdict;

  bool passed() const { return verdict != "fail"; }
};

/// Fills slope and verdict from t, values and expectation.  Sequences that
/// sit entirely at or below the noise floor are flagged "exact" unless the
/// expectation fails.
void finalize(ConvergenceReport& report, double noise_floor = 1e-13);

/// CSV with header defect,generator,g,s,t,value,slope,threshold,verdict;
/// one row per (report, t).  Numbers are printed with 17 significant digits.
std::string to_csv(const std::vector<ConvergenceReport>& reports);

template <class T>
struct AlgebraOps {
  std::function<T(const T&, const T&)> multiply;
  std::function<T(const T&, const T&)> add;
  std::function<T(Complex, const T&)> scale;
  std::function<T(const T&)> star;
  std::function<T(const T&)> grade;
};

/// t -> phi_t : S -> T with the algebra structure on both sides and,
/// optionally, group actions for the equivariance defect.
template <class S, class T>
struct AsymptoticFamily {
  std::string name;
  std::function<T(double, const S&)> evaluate;
  AlgebraOps<S> source;
  AlgebraOps<T> target;
  std::function<double(const T&, const T&)> distance;
  /// g . a on the source; empty when the family has no equivariance data.
  std::function<S(const DihedralElement&, const S&)> act_source;
  /// g ._t b on the target at parameter t.
  std::function<T(const DihedralElement&, double, const T&)> act_target;
};

struct DefectSuiteOptions {
  std::vector<double> t_grid;
  /// lambda used in phi_t(lambda a) - lambda phi_t(a)
  Complex scalar{0.75, -1.25};
  double noise_floor = 1e-13;
  /// Expectations keyed by "defect" or "defect@element"; the element form
  /// wins.  Missing names are report-only.
  std::vector<std::pair<std::string, Expectation>> expectations;
  /// Recorded in the report's s column.
  double s = 1.0;
  int parallel = 1;

  Expectation expectation_for(const std::string& defect, const std::string& element = {}) const {
    if (!element.empty())
      for (const auto& [name, e] : expectations)
        if (name == defect + "@" + element) return e;
    for (const auto& [name, e] : expectations)
      if (name == defect) return e;
    return Expectation::report_only();
  }
};

template <class S>
struct NamedElement {
  std::string name;
  S value;
};

/// Measures multiplicativity and additivity on the given index pairs,
/// homogeneity, *-compatibility and grading on every generator, and
/// equivariance on every (generator, group element).  Requires at least
/// five t values.
template <class S, class T>
std::vector<ConvergenceReport> defect_suite(const AsymptoticFamily<S, T>& family,
                                            const std::vector<NamedElement<S>>& generators,
                                            const std::vector<std::pair<std::size_t, std::size_t>>& pairs,
                                            const std::vector<NamedElement<DihedralElement>>& elements,
                                            const DefectSuiteOptions& options) {
  if (options.t_grid.size() < 5) throw std::invalid_argument("defect_suite: need at least five t values");

  struct Job {
    std::string defect;
    std::string generator;
    std::string element;
    std::function<double(double)> measure;
  };
  std::vector<Job> jobs;

  for (const auto& [i, j] : pairs) {
    const S a = generators.at(i).value;
    const S b = generators.at(j).value;
    const std::string label = generators.at(i).name + "," + generators.at(j).name;
    jobs.push_back({"multiplicativity", label, "",
                    [=, &family](double t) {
                      return family.distance(family.evaluate(t, family.source.multiply(a, b)),
                                             family.target.multiply(family.evaluate(t, a), family.evaluate(t, b)));
                    }});
    jobs.push_back({"additivity", label, "",
                    [=, &family](double t) {
                      return family.distance(family.evaluate(t, family.source.add(a, b)),
                                             family.target.add(family.evaluate(t, a), family.evaluate(t, b)));
                    }});
  }
  const Complex lambda = options.scalar;
  for (const auto& gen : generators) {
    const S a = gen.value;
    jobs.push_back({"homogeneity", gen.name, "",
                    [=, &family](double t) {
                      return family.distance(family.evaluate(t, family.source.scale(lambda, a)),
                                             family.target.scale(lambda, family.evaluate(t, a)));
                    }});
    jobs.push_back({"star", gen.name, "",
                    [=, &family](double t) {
                      return family.distance(family.evaluate(t, family.source.star(a)),
                                             family.target.star(family.evaluate(t, a)));
                    }});
    jobs.push_back({"grading", gen.name, "",
                    [=, &family](double t) {
                      return family.distance(family.target.grade(family.evaluate(t, a)),
                                             family.evaluate(t, family.source.grade(a)));
                    }});
    if (family.act_source && family.act_target) {
      for (const auto& el : elements) {
        const DihedralElement g = el.value;
        jobs.push_back({"equivariance", gen.name, el.name,
                        [=, &family](double t) {
                          return family.distance(family.evaluate(t, family.act_source(g, a)),
                                                 family.act_target(g, t, family.evaluate(t, a)));
                        }});
      }
    }
  }

  // t-major order keeps evaluations at one t together, which is what the
  // operator caches of the families expect.
  const std::size_t nt = options.t_grid.size();
  const std::size_t nj = jobs.size();
  std::vector<double> values(nj * nt, 0.0);
  parallel_for(values.size(), options.parallel, [&](std::size_t k) {
    values[(k % nj) * nt + k / nj] = jobs[k % nj].measure(options.t_grid[k / nj]);
  });

  std::vector<ConvergenceReport> reports;
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    ConvergenceReport r;
    r.family = family.name;
    r.defect = jobs[j].defect;
    r.generator = jobs[j].generator;
    r.element = jobs[j].element;
    r.s = options.s;
    r.t = options.t_grid;
    r.values.assign(values.begin() + static_cast<std::ptrdiff_t>(j * nt),
                    values.begin() + static_cast<std::ptrdiff_t>((j + 1) * nt));
    r.expectation = options.expectation_for(r.defect, r.element);
    finalize(r, options.noise_floor);
    reports.push_back(std::move(r));
  }
  return reports;
}

}  // namespace hklab
