#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "generators.hpp"
#include "hklab/group.hpp"

using hklab::DihedralElement;
using hklab::properness_ball;
using hklab::ScaledAction;
using hklab::testing::Gen;

namespace {

const auto e = DihedralElement::identity();
const auto rho = DihedralElement::rho();
const auto sigma = DihedralElement::sigma();

// The affine map x -> a x + c representing g at scale s.
struct Affine {
  double a, c;
};

Affine affine(const DihedralElement& g, double s) { return {g.is_reflection() ? -1.0 : 1.0, -g.power() * s}; }

Affine compose(const Affine& f, const Affine& g) { return {f.a * g.a, f.a * g.c + f.c}; }

}  // namespace

TEST(Dihedral, SigmaSquaredIsIdentity) { EXPECT_EQ(sigma * sigma, e); }

TEST(Dihedral, IdentityIsNeutral) {
  Gen gen(1);
  for (int i = 0; i < 100; ++i) {
    const auto g = gen.element();
    EXPECT_EQ(e * g, g);
    EXPECT_EQ(g * e, g);
  }
}

TEST(Dihedral, ProductMatchesAffineComposition) {
  const auto p = DihedralElement::rho(2) * sigma;
  const auto q = DihedralElement::rho(3) * sigma;
  EXPECT_EQ(p, DihedralElement(2, true));
  EXPECT_EQ(p * q, DihedralElement::rho(-1));

  Gen gen(2);
  for (int i = 0; i < 1000; ++i) {
    const auto g = gen.element();
    const auto h = gen.element();
    const Affine want = compose(affine(g, 1.0), affine(h, 1.0));
    const Affine got = affine(g * h, 1.0);
    EXPECT_EQ(got.a, want.a);
    EXPECT_EQ(got.c, want.c);
  }
}

TEST(Dihedral, SigmaConjugatesRhoToInverse) { EXPECT_EQ(sigma * rho * sigma, DihedralElement::rho(-1)); }

TEST(Dihedral, Associativity) {
  Gen gen(3);
  for (int i = 0; i < 1000; ++i) {
    const auto a = gen.element(1000);
    const auto b = gen.element(1000);
    const auto c = gen.element(1000);
    EXPECT_EQ((a * b) * c, a * (b * c));
  }
}

TEST(Dihedral, Inverse) {
  EXPECT_EQ(inverse(sigma), sigma);
  EXPECT_EQ(inverse(rho), DihedralElement::rho(-1));
  EXPECT_EQ(inverse(DihedralElement(2, true)), DihedralElement(2, true));
  Gen gen(4);
  for (int i = 0; i < 1000; ++i) {
    const auto g = gen.element(1000);
    EXPECT_EQ(g * inverse(g), e);
    EXPECT_EQ(inverse(g) * g, e);
  }
}

TEST(Dihedral, OverflowIsReported) {
  const auto big = DihedralElement::rho(std::numeric_limits<std::int64_t>::max());
  EXPECT_THROW(big * rho, std::overflow_error);
}

TEST(Dihedral, SignHomomorphism) {
  EXPECT_EQ(sign(rho), 1);
  EXPECT_EQ(sign(sigma), -1);
  EXPECT_EQ(sign(DihedralElement(5, true)), -1);
  Gen gen(5);
  for (int i = 0; i < 1000; ++i) {
    const auto g = gen.element();
    const auto h = gen.element();
    EXPECT_EQ(sign(g * h), sign(g) * sign(h));
  }
}

TEST(Dihedral, Names) {
  EXPECT_EQ(e.str(), "e");
  EXPECT_EQ(rho.str(), "rho");
  EXPECT_EQ(DihedralElement(-2, true).str(), "rho^-2 sigma");
}

TEST(Action, Examples) {
  EXPECT_EQ(act(rho, 0.75), -0.25);
  EXPECT_EQ(act(e, 0.3, {0.5}), 0.3);
  EXPECT_EQ(act(DihedralElement(2, true), 3.0), -5.0);
  EXPECT_EQ(act(rho, 2.0, {0.0}), 2.0);
}

TEST(Action, IsLeftActionExactlyOnDyadics) {
  Gen gen(6);
  for (int i = 0; i < 1000; ++i) {
    const auto g = gen.element();
    const auto h = gen.element();
    const double x = gen.dyadic(100);
    const ScaledAction s{static_cast<double>(gen.integer(0, 8)) / 4.0};
    EXPECT_EQ(act(g, act(h, x, s), s), act(g * h, x, s));
  }
}

TEST(Properness, Examples) {
  const auto ball = properness_ball(0.0, 3.5);
  EXPECT_EQ(ball.size(), 14u);
  const auto fixed = properness_ball(0.0, 0.0);
  ASSERT_EQ(fixed.size(), 2u);
  EXPECT_EQ(fixed[0], e);
  EXPECT_EQ(fixed[1], sigma);
}

TEST(Properness, RejectsUnscaledAction) { EXPECT_THROW(properness_ball(1.0, 2.0, {0.0}), std::invalid_argument); }

TEST(Properness, MatchesBruteForce) {
  Gen gen(7);
  for (int i = 0; i < 300; ++i) {
    const double x = gen.real(-20.0, 20.0);
    const double radius = gen.real(0.0, 25.0);
    const ScaledAction s{gen.real(0.1, 2.0)};
    const auto bound = 2 * static_cast<std::int64_t>(std::ceil((radius + 2.0 * std::abs(x)) / s.s)) + 5;
    std::vector<DihedralElement> brute;
    for (std::int64_t n = -bound; n <= bound; ++n)
      for (bool eps : {false, true})
        if (std::abs(x - act(DihedralElement(n, eps), x, s)) <= radius) brute.emplace_back(n, eps);
    std::sort(brute.begin(), brute.end());
    EXPECT_EQ(properness_ball(x, radius, s), brute) << "x=" << x << " R=" << radius << " s=" << s.s;
  }
}

TEST(Properness, ReflectionsObeyTheDistanceInequality) {
  Gen gen(8);
  for (int i = 0; i < 1000; ++i) {
    const double x = gen.dyadic(50);
    const auto l = gen.integer(-200, 200);
    const double moved = std::abs(x - act(DihedralElement(l, true), x));
    EXPECT_GE(moved, std::abs(std::abs(static_cast<double>(l)) - std::abs(2.0 * x)));
  }
  for (const auto& g : properness_ball(1.25, 6.0, {0.5})) {
    if (!g.is_reflection()) continue;
    EXPECT_LE(std::abs(std::abs(g.power() * 0.5) - 2.5), 6.0);
  }
}
