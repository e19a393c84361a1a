#include <fmt/format.h>

#include <cmath>
#include <random>

#include "hklab/crossed_product.hpp"
#include "hklab/graded_core.hpp"
#include "hklab/group.hpp"
#include "suites.hpp"

namespace hklab::tools {

namespace {

using AlgebraPtr = std::shared_ptr<const FiniteGradedAlgebra>;

Complex random_complex(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  const double re = unit(rng);
  return {re, unit(rng)};
}

/// Random element of the given degree: uniform coordinates on the basis
/// elements of that degree, zero elsewhere.
Eigen::MatrixXcd random_homogeneous(const FiniteGradedAlgebra& alg, int degree, std::mt19937_64& rng) {
  Eigen::VectorXcd coords = Eigen::VectorXcd::Zero(alg.dimension());
  for (int i = 0; i < alg.dimension(); ++i)
    if (alg.degree(i) == degree) coords(i) = random_complex(rng);
  return alg.element(coords);
}

Eigen::MatrixXcd random_coefficient(const FiniteGradedAlgebra& alg, std::mt19937_64& rng) {
  Eigen::VectorXcd coords(alg.dimension());
  for (auto& c : coords) c = random_complex(rng);
  return alg.element(coords);
}

struct Elementary {
  Eigen::MatrixXcd a, b;
  int da, db;
};

void tensor_pair(SuiteResult& r, const AlgebraPtr& left, const AlgebraPtr& right, int trials, double tol,
                 std::mt19937_64& rng) {
  std::bernoulli_distribution coin;
  auto draw = [&] {
    Elementary e;
    e.da = coin(rng);
    e.db = coin(rng);
    e.a = random_homogeneous(*left, e.da, rng);
    e.b = random_homogeneous(*right, e.db, rng);
    return e;
  };
  auto lift = [&](const Elementary& e) { return GradedTensorElement::elementary(left, e.a, right, e.b); };

  double assoc = 0, antimult = 0, formula = 0, involutive = 0, grading = 0;
  int degree_errors = 0;
  for (int k = 0; k < trials; ++k) {
    const Elementary ex = draw(), ey = draw(), ez = draw();
    const auto x = lift(ex), y = lift(ey), z = lift(ez);
    const auto xy = graded_tensor_mul(x, y);
    assoc = std::max(assoc, coefficient_distance(graded_tensor_mul(xy, z), graded_tensor_mul(x, graded_tensor_mul(y, z))));
    const auto direct = graded_tensor_star(xy);
    antimult = std::max(antimult, coefficient_distance(direct, graded_tensor_mul(graded_tensor_star(y), graded_tensor_star(x))));
    // (a1 a2 (x) b1 b2) with sign (-1)^{db1 da2}, then the star sign of the product.
    const int sign_mul = (ex.db * ey.da) % 2 ? -1 : 1;
    const int sign_star = (((ex.da + ey.da) % 2) * ((ex.db + ey.db) % 2)) ? -1 : 1;
    const Eigen::MatrixXcd ab = ex.a * ey.a;
    const Eigen::MatrixXcd bb = ex.b * ey.b;
    const auto via_formula = Complex(sign_mul * sign_star) *
                             GradedTensorElement::elementary(left, ab.adjoint(), right, bb.adjoint());
    formula = std::max(formula, coefficient_distance(direct, via_formula));
    involutive = std::max(involutive, coefficient_distance(graded_tensor_star(graded_tensor_star(x)), x));
    grading = std::max(grading, coefficient_distance(grade(xy), graded_tensor_mul(grade(x), grade(y))));
    const Parity expected = (ex.da + ex.db + ey.da + ey.db) % 2 ? Parity::odd : Parity::even;
    const Parity got = xy.parity();
    degree_errors += got != expected && coefficient_distance(xy, 0.0 * xy) > 0.0;
  }
  const std::string pair = fmt::format("{}(x){};triples={}", left->name(), right->name(), trials);
  constexpr const char* kProduct = "graded tensor product: (a1(x)b1)(a2(x)b2) = (-1)^{db1 da2} a1a2(x)b1b2";
  constexpr const char* kStar = "graded tensor product: (a(x)b)^* = (-1)^{da db} a^*(x)b^*";
  r.below("associativity", kProduct, pair, assoc, tol);
  r.below("involution_antimultiplicative", kStar, pair, antimult, tol);
  r.below("involution_sign_formula", kStar, pair, formula, tol);
  r.below("involution_involutive", kStar, pair, involutive, tol);
  r.below("grading_multiplicative", "grading is an automorphism of the graded tensor product", pair, grading, tol);
  r.equals("degree_additive", "degree of a(x)b is da + db mod 2", pair, degree_errors, 0.0);
}

}  // namespace

SuiteResult tensor_suite(SuiteContext& ctx) {
  SuiteResult r{"tensor"};
  auto rng = ctx.rng("tensor");
  const auto cliff = FiniteGradedAlgebra::clifford();
  const auto m2 = FiniteGradedAlgebra::block_matrices(1, 1);
  tensor_pair(r, cliff, cliff, 1000, ctx.config().tol.algebra, rng);
  tensor_pair(r, m2, cliff, 1000, ctx.config().tol.algebra, rng);
  return r;
}

// ---------------------------------------------------------------------------

namespace {

/// Largest singular value of the difference, restricted to interior columns.
double interior_distance(const DenseOperator& a, const DenseOperator& b, const TruncatedL2& trunc) {
  return operator_norm(interior_restriction(a - b, trunc));
}

void crossed_axioms(SuiteResult& r, const std::shared_ptr<const DihedralAlgebra>& alg, double tol,
                    std::mt19937_64& rng) {
  constexpr int kRadius = 3;
  constexpr int kTerms = 5;
  constexpr int kTrials = 200;
  constexpr int kRepTrials = 20;
  std::uniform_int_distribution<int> power(-kRadius, kRadius);
  std::bernoulli_distribution coin;

  double assoc = 0, involutive = 0, antimult = 0, covariance = 0, grading = 0;
  double rep_mult = 0, rep_star = 0, rep_cov = 0;
  const TruncatedL2 trunc{16, alg->dimension()};
  for (int k = 0; k < kTrials; ++k) {
    const auto f1 = random_element(alg, kRadius, kTerms, rng);
    const auto f2 = random_element(alg, kRadius, kTerms, rng);
    const auto f3 = random_element(alg, kRadius, kTerms, rng);
    const auto f12 = convolve(f1, f2);
    assoc = std::max(assoc, coefficient_distance(convolve(f12, f3), convolve(f1, convolve(f2, f3))));
    involutive = std::max(involutive, coefficient_distance(involution(involution(f1)), f1));
    antimult = std::max(antimult, coefficient_distance(involution(f12), convolve(involution(f2), involution(f1))));
    grading = std::max(grading, coefficient_distance(grade(f12), convolve(grade(f1), grade(f2))));

    const DihedralElement g(power(rng), coin(rng));
    const Eigen::MatrixXcd a = random_coefficient(alg->algebra(), rng);
    const auto dg = GroupAlgebraElement::delta(alg, g);
    const auto ae = GroupAlgebraElement::delta(alg, DihedralElement::identity(), a);
    const auto moved = GroupAlgebraElement::delta(alg, DihedralElement::identity(), alg->act(g, a));
    covariance = std::max(covariance, coefficient_distance(convolve(convolve(dg, ae), involution(dg)), moved));

    if (k < kRepTrials) {
      const DenseOperator r1 = regular_representation(f1, trunc);
      const DenseOperator r2 = regular_representation(f2, trunc);
      rep_mult = std::max(rep_mult, interior_distance(regular_representation(f12, trunc), r1 * r2, trunc));
      rep_star = std::max(rep_star, interior_distance(regular_representation(involution(f1), trunc), r1.adjoint(), trunc));
      const DenseOperator rg = regular_representation(dg, trunc);
      rep_cov = std::max(rep_cov, interior_distance(rg * regular_representation(ae, trunc) * rg.adjoint(),
                                                    regular_representation(moved, trunc), trunc));
    }
  }
  const std::string p = fmt::format("A={};trials={};support<={}", alg->name(), kTrials, kTerms);
  const std::string prep = fmt::format("A={};trials={};R'={};interior columns", alg->name(), kRepTrials, trunc.radius);
  constexpr const char* kConv = "crossed product: convolution (f1*f2)(g) = sum_h f1(h) h.f2(h^-1 g)";
  constexpr const char* kInv = "crossed product: involution f^*(g) = g.(f(g^-1)^*)";
  r.below("associativity", kConv, p, assoc, tol);
  r.below("involution_involutive", kInv, p, involutive, tol);
  r.below("involution_antimultiplicative", kInv, p, antimult, tol);
  r.below("covariance", "covariance: delta_g a delta_g^* = (g.a)", p, covariance, tol);
  r.below("grading_multiplicative", "pointwise grading is an automorphism of the crossed product", p, grading, tol);
  r.below("representation_multiplicative", "regular representation is multiplicative", prep, rep_mult, tol);
  r.below("representation_star", "regular representation is a *-representation", prep, rep_star, tol);
  r.below("representation_covariance", "regular representation satisfies the covariance relation", prep, rep_cov,
          tol);
}

}  // namespace

SuiteResult crossed_suite(SuiteContext& ctx) {
  const RunConfig& cfg = ctx.config();
  SuiteResult r{"crossed"};
  auto rng = ctx.rng("crossed");
  const auto scalars = std::make_shared<const DihedralAlgebra>(DihedralAlgebra::scalars());
  for (const auto& alg : {scalars, std::make_shared<const DihedralAlgebra>(DihedralAlgebra::clifford()),
                          std::make_shared<const DihedralAlgebra>(DihedralAlgebra::block_matrices())}) {
    crossed_axioms(r, alg, cfg.tol.algebra, rng);
  }

  // ||delta_rho + delta_rho^-1|| on growing truncations against the path
  // graph eigenvalue 2 cos(pi / (m + 1)), m = 2 floor(R'/2) + 1 per coset.
  const auto hop = GroupAlgebraElement::delta(scalars, DihedralElement::rho()) +
                   GroupAlgebraElement::delta(scalars, DihedralElement::rho(-1));
  std::string csv = "element,radius,norm,increment,oracle\n";
  const std::vector<int> radii{8, 16, 32, 64};
  for (const auto& est : reduced_norm_estimate(hop, radii)) {
    const int m = 2 * (est.radius / 2) + 1;
    const double oracle = 2.0 * std::cos(M_PI / (m + 1));
    csv += fmt::format("rho+rho^-1,{},{:.15g},{:.15g},{:.15g}\n", est.radius, est.norm, est.increment, oracle);
    r.below("reduced_norm_oracle", "reduced norm of delta_rho + delta_rho^-1 against the path-graph eigenvalue",
            fmt::format("R'={};m={}", est.radius, m), std::abs(est.norm - oracle), cfg.tol.reduced_norm);
    if (est.radius == radii.back()) {
      r.at_least("reduced_norm_lower", "reduced norm of delta_rho + delta_rho^-1 approaches 2",
                 fmt::format("R'={}", est.radius), est.norm, 1.99);
    }
  }
  for (const auto& [label, g] : {std::pair{"e", DihedralElement::identity()}, std::pair{"sigma", DihedralElement::sigma()}}) {
    const auto est = reduced_norm_estimate(GroupAlgebraElement::delta(scalars, g), {16}).front();
    csv += fmt::format("{},{},{:.15g},{:.15g},1\n", label, est.radius, est.norm, est.increment);
    r.below("reduced_norm_unitary", "delta_g is unitary in the reduced crossed product", fmt::format("g={};R'=16", label),
            std::abs(est.norm - 1.0), cfg.tol.reduced_norm);
  }
  r.files.emplace_back("crossed_norms.csv", csv);
  return r;
}

// ---------------------------------------------------------------------------

SuiteResult properness_suite(SuiteContext& ctx) {
  SuiteResult r{"properness"};
  auto rng = ctx.rng("properness");

  std::uniform_real_distribution<double> xs(-20.0, 20.0);
  std::uniform_real_distribution<double> rs(0.0, 30.0);
  int mismatches = 0;
  constexpr int kBalls = 100;
  for (int k = 0; k < kBalls; ++k) {
    const double x = xs(rng);
    const double radius = rs(rng);
    const auto bound = static_cast<std::int64_t>(std::ceil(2.0 * std::abs(x) + radius)) + 2;
    std::vector<DihedralElement> brute;
    for (std::int64_t n = -bound; n <= bound; ++n)
      for (bool eps : {false, true}) {
        const DihedralElement g(n, eps);
        if (std::abs(x - act(g, x)) <= radius) brute.push_back(g);
      }
    std::sort(brute.begin(), brute.end());
    mismatches += properness_ball(x, radius) != brute;
  }
  r.equals("ball_enumeration", "metric properness: {g : |x - g.x| <= R} is finite and matches enumeration",
           fmt::format("pairs={};s=1", kBalls), mismatches, 0.0);

  // Dyadic x and integer l keep every quantity exact in double precision.
  std::uniform_int_distribution<int> ks(-20 * 1024, 20 * 1024);
  std::uniform_int_distribution<int> ls(-100, 100);
  int violations = 0;
  double min_slack = std::numeric_limits<double>::infinity();
  constexpr int kSamples = 1000;
  for (int k = 0; k < kSamples; ++k) {
    const double x = ks(rng) / 1024.0;
    const int l = ls(rng);
    const double lhs = std::abs(x - act(DihedralElement(l, true), x));
    const double rhs = std::abs(std::abs(l) - std::abs(2.0 * x));
    violations += lhs < rhs;
    min_slack = std::min(min_slack, lhs - rhs);
  }
  r.equals("reflection_inequality", "|x - rho^l sigma.x| >= ||l| - |2x||", fmt::format("samples={}", kSamples),
           violations, 0.0);
  r.measured("reflection_inequality_slack", "|x - rho^l sigma.x| >= ||l| - |2x||", "min(lhs - rhs)", min_slack);
  return r;
}

}  // namespace hklab::tools
