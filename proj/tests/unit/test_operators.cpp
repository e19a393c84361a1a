#include <gtest/gtest.h>

#include <cmath>

#include "generators.hpp"
#include "hklab/discretization.hpp"
#include "hklab/operators.hpp"

using namespace hklab;
using hklab::testing::Gen;

namespace {

const GridSpec kSmall(16.0, 256);

HilbertVector random_vector(const GridSpec& grid, Gen& gen) {
  Eigen::VectorXcd data(2 * static_cast<Eigen::Index>(grid.size()));
  for (auto& x : data) x = gen.complex();
  return {grid, data};
}

DenseOperator random_hermitian(Eigen::Index n, Gen& gen) {
  Eigen::MatrixXcd a(n, n);
  for (auto& x : a.reshaped()) x = gen.complex();
  return DenseOperator(Eigen::MatrixXcd(a + a.adjoint()));
}

double distance(const DenseOperator& a, const DenseOperator& b) { return operator_norm(a - b); }

ScalarFunction heat() {
  return [](double x) { return Complex(std::exp(-x * x)); };
}

}  // namespace

TEST(DenseOperator, RealStorageAndPromotion) {
  const DenseOperator id = DenseOperator::identity(3);
  EXPECT_TRUE(id.is_real());
  EXPECT_TRUE((Complex(2.0) * id).is_real());
  const DenseOperator z = Complex(0.0, 1.0) * id;
  EXPECT_FALSE(z.is_real());
  EXPECT_THROW(z.real(), std::logic_error);
  EXPECT_EQ((id * z)(1, 1), Complex(0.0, 1.0));
  EXPECT_EQ(z.adjoint()(2, 2), Complex(0.0, -1.0));
  EXPECT_EQ(id.trace(), Complex(3.0));
  EXPECT_THROW(DenseOperator::identity(3) * DenseOperator::identity(2), std::invalid_argument);
}

TEST(DenseOperator, ParityTagsFollowTheGradingRules) {
  const DenseOperator D = dirac_matrix(kSmall);
  const DenseOperator C = clifford_mult_matrix(kSmall);
  EXPECT_EQ(D.parity(), Parity::odd);
  EXPECT_EQ((D * C).parity(), Parity::even);
  EXPECT_EQ((D + C).parity(), Parity::odd);
  EXPECT_EQ((D + D * C).parity(), Parity::mixed);
}

TEST(DenseOperator, CompressAndRestrict) {
  Eigen::MatrixXd m(3, 3);
  m << 1, 2, 3, 4, 5, 6, 7, 8, 9;
  const DenseOperator op(m);
  const DenseOperator c = op.compress({0, 2});
  EXPECT_EQ(c(0, 1), Complex(3.0));
  EXPECT_EQ(c(1, 0), Complex(7.0));
  const DenseOperator r = op.restrict_columns({1});
  EXPECT_EQ(r.rows(), 3);
  EXPECT_EQ(r(2, 0), Complex(8.0));
}

TEST(OperatorNorm, Examples) {
  EXPECT_DOUBLE_EQ(operator_norm(DenseOperator::identity(5)), 1.0);
  const CliffFunction Fuu = CliffFunction::from_components(kSmall, SFunction::gaussian(), SFunction::gaussian());
  EXPECT_DOUBLE_EQ(operator_norm(mult_operator(Fuu)), 1.0);
  Eigen::MatrixXd rank_one = Eigen::MatrixXd::Ones(4, 4);
  EXPECT_NEAR(operator_norm(DenseOperator(rank_one)), 4.0, 1e-12);
}

TEST(OperatorNorm, IsSubmultiplicativeAndMatchesSpectralRadius) {
  Gen gen(31);
  for (int i = 0; i < 20; ++i) {
    const DenseOperator a = random_hermitian(12, gen);
    const DenseOperator b = random_hermitian(12, gen);
    EXPECT_LE(operator_norm(a * b), operator_norm(a) * operator_norm(b) * (1 + 1e-12));
    const Eigen::VectorXd ev = spectral_decomposition(a).eigenvalues;
    EXPECT_NEAR(operator_norm(a), std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1))), 1e-10);
  }
}

TEST(Dirac, DifferentiatesGaussian) {
  const SFunction phi0("phi0", [](double x) { return Complex(std::exp(-x * x / 2.0)); }, Parity::even);
  const SFunction x_phi0("x phi0", [](double x) { return Complex(x * std::exp(-x * x / 2.0)); }, Parity::odd);
  const HilbertVector F = HilbertVector::from_functions(kSmall, SFunction::zero(), phi0);
  const HilbertVector DF = dirac_matrix(kSmall).apply(F);
  EXPECT_LE((DF.first() + x_phi0.sample(kSmall)).cwiseAbs().maxCoeff(), 1e-8);
  EXPECT_LE(DF.second().cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Dirac, SymmetricAndOdd) {
  const DenseOperator D = dirac_matrix(kSmall);
  EXPECT_EQ(self_adjointness_defect(D), 0.0);
  EXPECT_EQ(classify_parity(D, swap_grading(kSmall)), Parity::odd);
  Gen gen(32);
  for (int i = 0; i < 20; ++i) {
    const HilbertVector F = random_vector(kSmall, gen);
    const HilbertVector G = random_vector(kSmall, gen);
    EXPECT_LE(std::abs(inner(D.apply(F), G) - inner(F, D.apply(G))), 1e-10);
  }
}

TEST(Dirac, DerivativeMatrixIsAntisymmetric) {
  const Eigen::MatrixXd d = spectral_derivative_matrix(kSmall);
  EXPECT_EQ((d + d.transpose()).cwiseAbs().maxCoeff(), 0.0);
  const Eigen::VectorXd xi = fourier_wavenumbers(kSmall);
  EXPECT_EQ(xi(0), 0.0);
  EXPECT_EQ(xi(static_cast<Eigen::Index>(kSmall.size() / 2)), 0.0);
  EXPECT_DOUBLE_EQ(xi(1), 2.0 * M_PI / 32.0);
}

TEST(Clifford, MultiplicationMatrix) {
  const DenseOperator C = clifford_mult_matrix(kSmall);
  EXPECT_EQ(self_adjointness_defect(C), 0.0);
  EXPECT_EQ(classify_parity(C, swap_grading(kSmall)), Parity::odd);
  const SFunction u = SFunction::gaussian();
  const HilbertVector CF = C.apply(HilbertVector::from_functions(kSmall, u, u));
  const Eigen::VectorXcd xu = kSmall.points().cast<Complex>().cwiseProduct(u.sample(kSmall));
  EXPECT_LE((CF.first() - xu).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LE((CF.second() + xu).cwiseAbs().maxCoeff(), 1e-15);
  const auto zero_row = static_cast<Eigen::Index>(kSmall.size() / 2);
  for (Eigen::Index j = 0; j < C.cols(); ++j) EXPECT_EQ(C(zero_row, j), Complex(0.0));
}

TEST(Clifford, SquaresOfCAndDAddUpToTheOscillatorSquare) {
  const DenseOperator C = clifford_mult_matrix(kSmall);
  const DenseOperator D = dirac_matrix(kSmall);
  const DenseOperator B = C + D;
  const DenseOperator B2 = B * B;
  EXPECT_LE((B2 - (C * C + D * D + C * D + D * C)).max_abs(), 1e-12 * B2.max_abs());
}

TEST(MultOperator, UnitAndGrading) {
  const SFunction one("one", [](double) { return Complex(1.0); }, Parity::even);
  const DenseOperator I = mult_operator(CliffFunction::diagonal(kSmall, one));
  EXPECT_EQ(I.max_abs(), 1.0);
  EXPECT_EQ((I - DenseOperator::identity(I.rows())).max_abs(), 0.0);
  const CliffFunction Fuv =
      CliffFunction::from_components(kSmall, SFunction::gaussian(), SFunction::odd_gaussian());
  const DenseOperator M = mult_operator(Fuv);
  const SignedIndexMap swap = swap_grading(kSmall);
  EXPECT_EQ((conjugate(M, swap, swap) - mult_operator(grade(Fuv))).max_abs(), 0.0);
}

TEST(FunctionalCalculus, PolynomialsAndZero) {
  Gen gen(33);
  for (int i = 0; i < 10; ++i) {
    const DenseOperator a = random_hermitian(16, gen);
    const SpectralData sd = spectral_decomposition(a);
    const double scale = std::max(1.0, operator_norm(a));
    EXPECT_LE(distance(sd.reconstruct(sd.eigenvalues.cast<Complex>()), a), 1e-8 * scale);
    EXPECT_LE(distance(functional_calculus(sd, [](double x) { return Complex(x * x); }), a * a), 1e-10 * scale * scale);
    EXPECT_LE(distance(functional_calculus(sd, [](double x) { return Complex(x); }, 2.0), Complex(0.5) * a),
              1e-10 * scale);
    EXPECT_EQ(functional_calculus(sd, [](double) { return Complex(0.0); }).max_abs(), 0.0);
  }
}

TEST(FunctionalCalculus, EigenvaluesAscendAndAreReal) {
  Gen gen(34);
  const SpectralData sd = spectral_decomposition(random_hermitian(20, gen));
  for (Eigen::Index i = 1; i < sd.size(); ++i) EXPECT_LE(sd.eigenvalues(i - 1), sd.eigenvalues(i));
}

TEST(FunctionalCalculus, RejectsNonSelfAdjoint) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2, 2);
  m(0, 1) = 1.0;
  EXPECT_THROW(spectral_decomposition(DenseOperator(m)), std::invalid_argument);
  EXPECT_THROW(functional_calculus(DenseOperator::identity(2), heat(), 0.0), std::invalid_argument);
}

TEST(DiracCalculus, HeatRoutesAgree) {
  const SpectralData sd = spectral_decomposition(dirac_matrix(kSmall));
  for (NyquistMode mode : {NyquistMode::discarded, NyquistMode::zero_wavenumber}) {
    for (double t : {1.0, 2.0, 4.0, 8.0}) {
      EXPECT_LE(distance(dirac_calculus(sd, kSmall, heat(), t, mode), heat_multiplier_route(kSmall, t, mode)), 1e-8)
          << "t=" << t;
    }
  }
}

TEST(DiracCalculus, HeatOperatorHasNormOne) {
  const SpectralData sd = spectral_decomposition(dirac_matrix(kSmall));
  EXPECT_NEAR(operator_norm(dirac_calculus(sd, kSmall, heat(), 1.0)), 1.0, 1e-10);
}

TEST(DiracCalculus, NyquistProjector) {
  const DenseOperator P = nyquist_projector(kSmall);
  const DenseOperator D = dirac_matrix(kSmall);
  EXPECT_LE(distance(P * P, P), 1e-12);
  EXPECT_NEAR(std::real(P.trace()), 2.0, 1e-12);
  EXPECT_LE((D * P).max_abs(), 1e-10);
  const SpectralData sd = spectral_decomposition(D);
  const DenseOperator one = dirac_calculus(sd, kSmall, [](double) { return Complex(1.0); }, 1.0);
  EXPECT_LE(distance(one + P, DenseOperator::identity(D.rows())), 1e-10);
}

TEST(Compactness, ProfileDecreases) {
  const SpectralData sd = spectral_decomposition(dirac_matrix(kSmall));
  const DenseOperator heat_op = dirac_calculus(sd, kSmall, heat(), 1.0);
  const Eigen::VectorXd sv = compactness_profile(heat_op, 30);
  ASSERT_EQ(sv.size(), 30);
  for (Eigen::Index i = 1; i < sv.size(); ++i) EXPECT_LE(sv(i), sv(i - 1) + 1e-14);
  EXPECT_NEAR(sv(0), 1.0, 1e-10);
}

TEST(ConjugateAction, IdentityAndSigmaInvariance) {
  const DenseOperator C = clifford_mult_matrix(kSmall);
  const DenseOperator D = dirac_matrix(kSmall);
  EXPECT_EQ((conjugate_action(DihedralElement::identity(), D, kSmall, {1.0}) - D).max_abs(), 0.0);
  // Off the seam x = -L (identified with L, where x changes sign) sigma fixes C exactly.
  const auto n = static_cast<Eigen::Index>(kSmall.size());
  std::vector<Eigen::Index> off_seam;
  for (Eigen::Index i = 0; i < 2 * n; ++i)
    if (i % n != 0) off_seam.push_back(i);
  const DenseOperator diff = conjugate_action(DihedralElement::sigma(), C, kSmall, {1.0}) - C;
  EXPECT_EQ(diff.compress(off_seam).max_abs(), 0.0);
  EXPECT_DOUBLE_EQ(diff.max_abs(), 2.0 * kSmall.half_width());
  EXPECT_THROW(conjugate_action(DihedralElement::rho(), D, GridSpec(15.0, 256), {1.0}), MisalignmentError);
}

TEST(ConjugateAction, IsAHomomorphismOnInteriorOperators) {
  // Zero extension only loses the Gaussian tails, below 1e-60 here.
  const CliffFunction F = CliffFunction::from_components(kSmall, SFunction::gaussian(), SFunction::odd_gaussian());
  const DenseOperator M = mult_operator(F);
  Gen gen(35);
  for (int i = 0; i < 20; ++i) {
    const auto g = gen.element(3);
    const auto h = gen.element(3);
    const DenseOperator lhs = conjugate_action(g * h, M, kSmall, {1.0});
    const DenseOperator rhs = conjugate_action(g, conjugate_action(h, M, kSmall, {1.0}), kSmall, {1.0});
    EXPECT_LE(distance(lhs, rhs), 1e-60) << g.str() << " " << h.str();
  }
}
