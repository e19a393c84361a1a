#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "generators.hpp"
#include "hklab/hermite_model.hpp"
#include "hklab/morphisms.hpp"

using namespace hklab;
using hklab::testing::Gen;

namespace {

const GridSpec kSmall(16.0, 256);

double distance(const DenseOperator& a, const DenseOperator& b) { return operator_norm(a - b); }

const DiracCalculus& small_calculus() {
  static const DiracCalculus calc(kSmall);
  return calc;
}

const HermiteModel& small_model() {
  static const HermiteModel model(hermite_basis(32, kSmall));
  return model;
}

}  // namespace

TEST(Beta, Formula) {
  const SFunction v = SFunction::odd_gaussian();
  const GridSpec grid = beta_grid(10.0);
  const CliffFunction b = beta(10.0, v, grid);
  for (std::size_t j = 0; j < grid.size(); j += 1001) {
    const double x = grid.point(j);
    EXPECT_EQ(b(x).z, v(x / 10.0));
    EXPECT_EQ(b(x).w, v(-x / 10.0));
  }
  EXPECT_DOUBLE_EQ(grid.half_width(), 80.0);
}

TEST(Beta, IsAGradedStarHomomorphism) {
  const SFunction u = SFunction::gaussian();
  const SFunction w = Complex(0.5, 2.0) * SFunction::odd_gaussian();
  const GridSpec grid = beta_grid(10.0);
  const auto sup = [](const CliffFunction& F, const CliffFunction& G) { return sup_norm(F - G); };
  EXPECT_EQ(sup(beta(10.0, u * w, grid), beta(10.0, u, grid) * beta(10.0, w, grid)), 0.0);
  EXPECT_EQ(sup(beta(10.0, star(w), grid), star(beta(10.0, w, grid))), 0.0);
  EXPECT_EQ(sup(beta(10.0, grade(w), grid), grade(beta(10.0, w, grid))), 0.0);
}

TEST(Beta, SigmaDefectVanishes) {
  for (const auto& f : {SFunction::gaussian(), SFunction::odd_gaussian()}) {
    for (double t : {1.0, 10.0, 100.0}) {
      EXPECT_LE(beta_defect(t, f, DihedralElement::sigma(), {1.0}), 1e-15) << f.name() << " t=" << t;
      EXPECT_EQ(beta_defect(t, f, DihedralElement::identity(), {1.0}), 0.0);
    }
  }
}

TEST(Beta, RhoDefectDecaysLikeOneOverT) {
  const SFunction u = SFunction::gaussian();
  const double constant = std::sqrt(2.0 / std::exp(1.0));
  double previous = 1.0;
  for (double t : {10.0, 100.0, 1000.0, 10000.0}) {
    const double d = beta_defect(t, u, DihedralElement::rho(), {1.0});
    EXPECT_LT(d, previous);
    previous = d;
    if (t >= 1000.0) EXPECT_NEAR(t * d / constant, 1.0, 1e-2) << t;
  }
  EXPECT_EQ(beta_defect(100.0, u, DihedralElement::rho(), {0.0}), 0.0);
}

TEST(DiracCalculus, CachesAndTagsParity) {
  const DiracCalculus& calc = small_calculus();
  const DenseOperator a = calc(SFunction::odd_gaussian(), 2.0);
  const DenseOperator b = calc(SFunction::odd_gaussian(), 2.0);
  EXPECT_EQ(distance(a, b), 0.0);
  EXPECT_EQ(a.parity(), Parity::odd);
  EXPECT_EQ(calc(SFunction::gaussian(), 1.0).parity(), Parity::even);
  EXPECT_EQ(classify_parity(a, swap_grading(kSmall)), Parity::odd);
}

TEST(SCTensor, ProductCarriesTheKoszulSign) {
  const SFunction u = SFunction::gaussian();
  const SFunction v = SFunction::odd_gaussian();
  const CliffFunction odd = CliffFunction::from_components(kSmall, v, Complex(-1.0) * v);
  const CliffFunction even = CliffFunction::from_components(kSmall, u, u);
  // deg F1 = 1 (odd Cliff part), deg f2 = 1: sign -1.
  const SCTensor p = SCTensor(u, odd) * SCTensor(v, even);
  ASSERT_EQ(p.terms().size(), 1u);
  EXPECT_EQ(p.terms()[0].coefficient, Complex(-1.0));
  const SCTensor q = SCTensor(v, even) * SCTensor(u, odd);
  ASSERT_EQ(q.terms().size(), 1u);
  EXPECT_EQ(q.terms()[0].coefficient, Complex(1.0));
}

TEST(SCTensor, StarSignAndHomogeneousSplit) {
  const SFunction u = SFunction::gaussian();
  const SFunction v = SFunction::odd_gaussian();
  const CliffFunction odd = CliffFunction::from_components(kSmall, v, Complex(-1.0) * v);
  const SCTensor s = star(SCTensor(v, odd, Complex(0.0, 1.0)));
  ASSERT_EQ(s.terms().size(), 1u);
  EXPECT_EQ(s.terms()[0].coefficient, Complex(0.0, 1.0));  // conj(i) times the sign -1

  const CliffFunction mixed = CliffFunction::from_components(kSmall, u, v);
  const SCTensor split = SCTensor(u + v, mixed).homogeneous();
  EXPECT_EQ(split.terms().size(), 4u);
  for (const auto& term : split.terms()) {
    EXPECT_NE(term.f.parity(), Parity::mixed);
    EXPECT_NE(term.F.parity(1e-15), Parity::mixed);
  }
}

TEST(Alpha, ZeroInputsGiveZero) {
  const CliffFunction Fuu = CliffFunction::from_components(kSmall, SFunction::gaussian(), SFunction::gaussian());
  const CliffFunction Z = CliffFunction::diagonal(kSmall, SFunction::zero());
  EXPECT_EQ(alpha(small_calculus(), 1.0, SFunction::zero(), Fuu).max_abs(), 0.0);
  EXPECT_EQ(alpha(small_calculus(), 1.0, SFunction::gaussian(), Z).max_abs(), 0.0);
}

TEST(Alpha, IsTheProductOfCalculusAndMultiplier) {
  const DiracCalculus& calc = small_calculus();
  const SFunction v = SFunction::odd_gaussian();
  const CliffFunction Fuv = CliffFunction::from_components(kSmall, SFunction::gaussian(), v);
  const DenseOperator want = calc(v, 2.0) * mult_operator(Fuv.dilated(2.0));
  EXPECT_LE(distance(alpha(calc, 2.0, v, Fuv), want), 1e-14);
}

TEST(Alpha, EquivarianceOnAlignedGrid) {
  const DiracCalculus& calc = small_calculus();
  const SFunction u = SFunction::gaussian();
  const SFunction v = SFunction::odd_gaussian();
  const std::vector<CliffFunction> Fs{CliffFunction::from_components(kSmall, u, u),
                                      CliffFunction::from_components(kSmall, u, v)};
  for (double t : {1.0, 2.0}) {
    for (const auto& f : {u, v}) {
      for (const auto& F : Fs) {
        for (const auto& g : {DihedralElement::rho(), DihedralElement::sigma()}) {
          EXPECT_LE(alpha_defect(calc, t, f, F, g), 5e-7) << t << " " << g.str();
          EXPECT_LE(mult_identity_residual(t, F, g), 1e-10) << t << " " << g.str();
        }
        EXPECT_EQ(alpha_defect(calc, t, f, F, DihedralElement::identity()), 0.0);
        EXPECT_EQ(mult_identity_residual(t, F, DihedralElement::identity()), 0.0);
      }
    }
  }
}

TEST(Alpha, MisalignedScaleThrows) {
  const CliffFunction Fuu = CliffFunction::from_components(kSmall, SFunction::gaussian(), SFunction::gaussian());
  EXPECT_THROW(alpha_defect(small_calculus(), 1.0, SFunction::gaussian(), Fuu, DihedralElement::rho(), {0.3}),
               MisalignmentError);
}

TEST(Oscillator, SpectrumIsExact) {
  const HermiteModel& model = small_model();
  EXPECT_EQ(model.dimension(), 63);
  EXPECT_LE(model.invariance_defect(), 1e-10);
  const Eigen::VectorXd& ev = model.spectrum().eigenvalues;
  std::vector<double> want{0.0};
  for (int n = 1; n < 32; ++n) {
    want.push_back(std::sqrt(2.0 * n));
    want.push_back(-std::sqrt(2.0 * n));
  }
  std::sort(want.begin(), want.end());
  ASSERT_EQ(ev.size(), static_cast<Eigen::Index>(want.size()));
  for (std::size_t i = 0; i < want.size(); ++i) EXPECT_NEAR(ev(static_cast<Eigen::Index>(i)), want[i], 1e-12);
  EXPECT_EQ(classify_parity(model.oscillator(), model.grading()), Parity::odd);
}

TEST(Oscillator, ComponentsRoundTrip) {
  const HermiteModel& model = small_model();
  Gen gen(41);
  Eigen::VectorXcd a(32), b(32);
  for (auto& x : a) x = gen.complex();
  for (auto& x : b) x = gen.complex();
  b(31) = a(31);  // e_{M-1}^- is outside the subspace
  const Eigen::VectorXcd back = model.to_components(model.from_components(a, b));
  EXPECT_LE((back.head(32) - a).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_LE((back.tail(32) - b).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Oscillator, GroupUnitaries) {
  const HermiteModel& model = small_model();
  const DenseOperator I = DenseOperator::identity(model.dimension());
  const DenseOperator us = model.unitary(DihedralElement::sigma(), {1.0});
  EXPECT_LE(distance(us * us, I), 1e-12);
  EXPECT_LE(distance(model.unitary(DihedralElement::rho(), {0.0}), I), 0.0);
  const DenseOperator ur = model.unitary(DihedralElement::rho(), {0.25});
  EXPECT_LE(distance(ur.adjoint() * ur, I), 1e-10);
}

TEST(Gamma, StarHomomorphism) {
  const HermiteModel& model = small_model();
  const SFunction u = SFunction::gaussian();
  const SFunction v = SFunction::odd_gaussian();
  for (double t : {1.0, 2.0}) {
    EXPECT_LE(distance(gamma(model, t, u * v), gamma(model, t, u) * gamma(model, t, v)), 1e-10);
    EXPECT_LE(distance(gamma(model, t, star(v)), gamma(model, t, v).adjoint()), 1e-12);
    EXPECT_EQ(gamma(model, t, SFunction::zero()).max_abs(), 0.0);
  }
  EXPECT_EQ(classify_parity(gamma(model, 1.0, v), model.grading()), Parity::odd);
  EXPECT_EQ(classify_parity(gamma(model, 1.0, u), model.grading()), Parity::even);
}

TEST(Gamma, KernelProjection) {
  const HermiteModel& model = small_model();
  const DenseOperator p = kernel_projection(model);
  EXPECT_NEAR(std::abs(p.trace() - Complex(1.0)), 0.0, 1e-8);
  Eigen::VectorXcd e0 = Eigen::VectorXcd::Zero(model.dimension());
  e0(0) = 1.0;
  EXPECT_LE((p.apply(e0) - e0).norm(), 1e-8);
  Eigen::VectorXcd phi1 = Eigen::VectorXcd::Zero(32);
  phi1(1) = 1.0;
  EXPECT_LE(p.apply(model.from_components(Eigen::VectorXcd::Zero(32), phi1)).norm(), 1e-8);
  EXPECT_THROW(kernel_projection(model, 2.0), KernelMultiplicityError);
}

TEST(Gamma, HomotopyEndpointsAndGap) {
  const HermiteModel& model = small_model();
  const SFunction u = SFunction::gaussian();
  const SFunction v = SFunction::odd_gaussian();
  const DenseOperator p = kernel_projection(model);
  EXPECT_EQ(distance(homotopy_H(model, u, 0.0), p), 0.0);
  EXPECT_EQ(homotopy_H(model, v, 0.0).max_abs(), 0.0);
  EXPECT_EQ(distance(homotopy_H(model, u, 1.0), gamma(model, 1.0, u)), 0.0);
  for (double s : {1.0, 0.5, 0.25}) {
    EXPECT_NEAR(distance(homotopy_H(model, u, s), p), std::exp(-2.0 / (s * s)), 1e-10) << s;
    EXPECT_NEAR(homotopy_gap_bound(model, u, s), std::exp(-2.0 / (s * s)), 1e-14) << s;
  }
  EXPECT_EQ(homotopy_gap_bound(model, u, 0.0), 0.0);
}
