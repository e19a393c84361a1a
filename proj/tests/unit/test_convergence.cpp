#include <gtest/gtest.h>

#include <algorithm>
#include <atomic>
#include <cmath>

#include "hklab/convergence.hpp"

using namespace hklab;

namespace {

const std::vector<double> kT{1.0, 2.0, 4.0, 8.0, 16.0};

ConvergenceReport report_of(std::vector<double> values, Expectation e) {
  ConvergenceReport r;
  r.family = "toy";
  r.defect = "d";
  r.generator = "a";
  r.t = kT;
  r.values = std::move(values);
  r.expectation = e;
  finalize(r);
  return r;
}

/// phi_t(a) = a + 1/t on C: every defect is an explicit multiple of 1/t.
AsymptoticFamily<Complex, Complex> toy_family() {
  AsymptoticFamily<Complex, Complex> fam;
  fam.name = "toy";
  fam.evaluate = [](double t, const Complex& a) { return a + 1.0 / t; };
  const AlgebraOps<Complex> ops{[](const Complex& a, const Complex& b) { return a * b; },
                                [](const Complex& a, const Complex& b) { return a + b; },
                                [](Complex c, const Complex& a) { return c * a; },
                                [](const Complex& a) { return std::conj(a); },
                                [](const Complex& a) { return a; }};
  fam.source = ops;
  fam.target = ops;
  fam.distance = [](const Complex& a, const Complex& b) { return std::abs(a - b); };
  fam.act_source = [](const DihedralElement& g, const Complex& a) { return static_cast<double>(sign(g)) * a; };
  fam.act_target = [](const DihedralElement& g, double, const Complex& b) {
    return static_cast<double>(sign(g)) * b;
  };
  return fam;
}

}  // namespace

TEST(ParallelFor, RunsEveryIndexOnce) {
  for (int workers : {1, 3, 8}) {
    std::vector<std::atomic<int>> hits(100);
    parallel_for(hits.size(), workers, [&](std::size_t i) { ++hits[i]; });
    for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
  }
}

TEST(ParallelFor, PropagatesExceptions) {
  EXPECT_THROW(parallel_for(10, 4,
                            [](std::size_t i) {
                              if (i == 7) throw std::runtime_error("boom");
                            }),
               std::runtime_error);
}

TEST(Slope, RecoversPowerLaws) {
  std::vector<double> inv, inv_sq;
  for (double t : kT) {
    inv.push_back(3.0 / t);
    inv_sq.push_back(0.5 / (t * t));
  }
  EXPECT_NEAR(*fit_loglog_slope(kT, inv), -1.0, 1e-12);
  EXPECT_NEAR(*fit_loglog_slope(kT, inv_sq), -2.0, 1e-12);
}

TEST(Slope, NeedsFivePointsAboveTheFloor) {
  EXPECT_FALSE(fit_loglog_slope(kT, {1.0, 0.5, 0.25, 0.125, 0.0}).has_value());
  EXPECT_FALSE(fit_loglog_slope({1, 2, 3, 4}, {1, 1, 1, 1}).has_value());
  EXPECT_THROW(fit_loglog_slope({1, 2}, {1.0}), std::invalid_argument);
}

TEST(Finalize, Verdicts) {
  EXPECT_EQ(report_of({0, 0, 0, 0, 0}, Expectation::all_below(1e-12)).verdict, "exact");
  EXPECT_EQ(report_of({1e-11, 0, 0, 0, 0}, Expectation::all_below(1e-12)).verdict, "fail");
  EXPECT_EQ(report_of({1e-11, 0, 0, 0, 0}, Expectation::all_below(1e-10)).verdict, "pass");
  EXPECT_EQ(report_of({1, 0.5, 0.25, 0.125, 0.0625}, Expectation::slope_between(-1.2, -0.8)).verdict, "pass");
  EXPECT_EQ(report_of({1, 0.25, 0.0625, 0.015625, 0.00390625}, Expectation::slope_between(-1.2, -0.8)).verdict,
            "fail");
  EXPECT_EQ(report_of({1, 2, 0.5, 3, 0.9}, Expectation::decreasing()).verdict, "pass");
  EXPECT_EQ(report_of({1, 0.5, 0.2, 0.1, 1.5}, Expectation::decreasing()).verdict, "fail");
  EXPECT_EQ(report_of({5, 5, 5, 5, 1e-3}, Expectation::last_below(1e-2)).verdict, "pass");
  const auto r = report_of({1, 1, 1, 1, 1}, Expectation::report_only());
  EXPECT_EQ(r.verdict, "report");
  EXPECT_TRUE(r.passed());
  EXPECT_NEAR(*r.slope, 0.0, 1e-15);
}

TEST(Expectations, ElementKeyWins) {
  DefectSuiteOptions opt;
  opt.expectations = {{"equivariance", Expectation::all_below(1.0)},
                      {"equivariance@sigma", Expectation::slope_between(-2, 0)}};
  EXPECT_EQ(opt.expectation_for("equivariance", "sigma").kind, Expectation::Kind::slope_between);
  EXPECT_EQ(opt.expectation_for("equivariance", "rho").kind, Expectation::Kind::all_below);
  EXPECT_EQ(opt.expectation_for("star").kind, Expectation::Kind::report_only);
}

TEST(DefectSuite, ToyFamilyDefects) {
  const Complex a(0.5, 1.0), b(-2.0, 0.25);
  DefectSuiteOptions opt;
  opt.t_grid = kT;
  opt.expectations = {{"additivity", Expectation::slope_between(-1.1, -0.9)},
                      {"star", Expectation::all_below(1e-15)},
                      {"equivariance@rho", Expectation::all_below(0.0)}};
  for (int workers : {1, 4}) {
    opt.parallel = workers;
    const auto reports = defect_suite(toy_family(), {{"a", a}, {"b", b}}, {{0, 1}},
                                      {{"rho", DihedralElement::rho()}, {"sigma", DihedralElement::sigma()}}, opt);
    // 2 pair defects, then per generator homogeneity, star, grading and two equivariances.
    ASSERT_EQ(reports.size(), 2u + 2u * 5u);
    for (const auto& r : reports) {
      ASSERT_EQ(r.values.size(), kT.size());
      for (std::size_t i = 0; i < kT.size(); ++i) {
        const double t = kT[i];
        double want = 0.0;
        if (r.defect == "multiplicativity") want = std::abs(1.0 / t - (a + b) / t - 1.0 / (t * t));
        if (r.defect == "additivity") want = 1.0 / t;
        if (r.defect == "homogeneity") want = std::abs(Complex(1.0) - opt.scalar) / t;
        if (r.defect == "equivariance" && r.element == "sigma") want = 2.0 / t;
        EXPECT_NEAR(r.values[i], want, 1e-14) << r.defect << " " << r.generator << " " << r.element << " t=" << t;
      }
      if (r.defect == "additivity") EXPECT_EQ(r.verdict, "pass");
      if (r.defect == "star" || (r.defect == "equivariance" && r.element == "rho")) EXPECT_EQ(r.verdict, "exact");
      if (r.defect == "grading") EXPECT_EQ(r.verdict, "report");
    }
  }
}

TEST(DefectSuite, RequiresFiveT) {
  DefectSuiteOptions opt;
  opt.t_grid = {1, 2, 3, 4};
  EXPECT_THROW(defect_suite(toy_family(), {{"a", Complex(1.0)}}, {}, {}, opt), std::invalid_argument);
}

TEST(DefectSuite, CsvRows) {
  const auto r = report_of({1, 0.5, 0.25, 0.125, 0.0625}, Expectation::slope_between(-1.2, -0.8));
  const std::string csv = to_csv({r});
  EXPECT_EQ(csv.rfind("defect,generator,g,s,t,value,slope,threshold,verdict\n", 0), 0u);
  EXPECT_NE(csv.find("toy:d,\"a\",-,1,1,1,-1.000000,slope in [-1.2;-0.8],pass\n"), std::string::npos) << csv;
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 6);
}
