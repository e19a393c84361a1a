#include <fmt/format.h>

#include <cmath>

#include "hklab/convergence.hpp"
#include "suites.hpp"

namespace hklab::tools {

namespace {

constexpr const char* kSigma = "dual-Dirac beta_t: sigma-equivariance holds exactly";
constexpr const char* kRho = "dual-Dirac beta_t: rho-equivariance defect vanishes as t grows";
constexpr const char* kHomomorphism = "dual-Dirac beta_t is a graded *-homomorphism for each t";

double sup_distance(const CliffFunction& a, const CliffFunction& b) { return sup_norm(a - b); }

AsymptoticFamily<SFunction, CliffFunction> beta_family(const BetaWindow& window) {
  AsymptoticFamily<SFunction, CliffFunction> fam;
  fam.name = "beta";
  fam.evaluate = [window](double t, const SFunction& f) { return beta(t, f, window); };
  fam.source = {[](const SFunction& a, const SFunction& b) { return a * b; },
                [](const SFunction& a, const SFunction& b) { return a + b; },
                [](Complex c, const SFunction& a) { return c * a; },
                [](const SFunction& a) { return star(a); },
                [](const SFunction& a) { return grade(a); }};
  fam.target = {[](const CliffFunction& a, const CliffFunction& b) { return a * b; },
                [](const CliffFunction& a, const CliffFunction& b) { return a + b; },
                [](Complex c, const CliffFunction& a) { return c * a; },
                [](const CliffFunction& a) { return star(a); },
                [](const CliffFunction& a) { return grade(a); }};
  fam.distance = sup_distance;
  // D_inf acts trivially on S.
  fam.act_source = [](const DihedralElement&, const SFunction& f) { return f; };
  fam.act_target = [](const DihedralElement& g, double, const CliffFunction& F) {
    return act_on_cliff_function(g, F, ScaledAction::standard(), ActionMode::callable).value;
  };
  return fam;
}

}  // namespace

SuiteResult beta_suite(SuiteContext& ctx) {
  const RunConfig& cfg = ctx.config();
  SuiteResult r{"beta"};
  const BetaWindow window;
  const SFunction u = SFunction::gaussian();
  const SFunction v = SFunction::odd_gaussian();
  const std::vector<SFunction> fs{u, v};
  const auto rho = DihedralElement::rho();
  const auto sigma = DihedralElement::sigma();

  std::vector<double> sigma_t{1.0};
  for (double t : cfg.beta_t)
    if (t != 1.0) sigma_t.push_back(t);

  for (const auto& f : fs) {
    for (double t : sigma_t) {
      r.below("sigma_defect", kSigma, fmt::format("f={};t={:g};s=1", f.name(), t),
              beta_defect(t, f, sigma, ScaledAction::standard(), window), cfg.tol.beta_sigma);
    }
    r.equals("identity_defect", "the identity element acts trivially", fmt::format("f={};t=10", f.name()),
             beta_defect(10.0, f, DihedralElement::identity(), ScaledAction::standard(), window), 0.0);
    for (const auto& g : {rho, sigma}) {
      r.equals("unscaled_defect", "at s=0 every group element fixes beta_t(f)",
               fmt::format("f={};g={};t=10;s=0", f.name(), g.str()), beta_defect(10.0, f, g, {0.0}, window), 0.0);
    }
  }

  // rho rate: defect ~ sup|f'| / t.
  const double constant = std::sqrt(2.0 / std::exp(1.0));
  for (const auto& f : fs) {
    std::vector<double> values;
    for (double t : cfg.beta_t) {
      values.push_back(beta_defect(t, f, rho, ScaledAction::standard(), window));
      r.measured("rho_defect", kRho, fmt::format("f={};t={:g}", f.name(), t), values.back());
    }
    const auto slope = fit_loglog_slope(cfg.beta_t, values);
    if (f.name() == u.name()) {
      r.within("rho_slope", kRho, "f=u;log-log slope", slope.value_or(NAN), -1.2, -0.8);
      const double scaled = cfg.beta_t.back() * values.back();
      r.below("rho_rate_constant", "rho defect of beta_t(u) times t tends to max|u'| = sqrt(2/e)",
              fmt::format("f=u;t={:g};t*defect={:.12g}", cfg.beta_t.back(), scaled),
              std::abs(scaled - constant) / constant, cfg.tol.beta_constant);
    } else {
      r.measured("rho_slope", kRho, fmt::format("f={};log-log slope", f.name()), slope.value_or(NAN));
    }
  }

  // Pointwise homomorphism identities.
  for (double t : {1.0, 10.0, 100.0}) {
    const CliffFunction bu = beta(t, u, window);
    const CliffFunction bv = beta(t, v, window);
    r.below("multiplicative", kHomomorphism, fmt::format("beta(u*v);t={:g}", t),
            sup_distance(beta(t, u * v, window), bu * bv), cfg.tol.beta_homomorphism);
    for (const auto& f : fs) {
      const CliffFunction bf = beta(t, f, window);
      r.below("star_compatible", kHomomorphism, fmt::format("f={};t={:g}", f.name(), t),
              sup_distance(beta(t, star(f), window), star(bf)), cfg.tol.beta_homomorphism);
      r.below("grading_compatible", kHomomorphism, fmt::format("f={};t={:g}", f.name(), t),
              sup_distance(beta(t, grade(f), window), grade(bf)), cfg.tol.beta_homomorphism);
    }
  }
  const CliffordElement at_one = beta(1.0, v, window)(1.0);
  const double e1 = std::exp(-1.0);
  r.below("value_check", "beta_1(v)(1) = (v(1), v(-1))", "f=v;t=1;x=1",
          std::max(std::abs(at_one.z - e1), std::abs(at_one.w + e1)), 1e-15);

  DefectSuiteOptions opt;
  opt.t_grid = cfg.beta_t;
  opt.parallel = cfg.parallel;
  opt.expectations = {{"multiplicativity", Expectation::all_below(cfg.tol.beta_homomorphism)},
                      {"additivity", Expectation::all_below(cfg.tol.beta_homomorphism)},
                      {"homogeneity", Expectation::all_below(cfg.tol.beta_homomorphism)},
                      {"star", Expectation::all_below(cfg.tol.beta_homomorphism)},
                      {"grading", Expectation::all_below(cfg.tol.beta_homomorphism)},
                      {"equivariance@rho", Expectation::slope_between(-1.2, -0.8)},
                      {"equivariance@sigma", Expectation::all_below(cfg.tol.beta_sigma)}};
  r.convergence = defect_suite(beta_family(window), {{"u", u}, {"v", v}}, {{0, 0}, {0, 1}, {1, 1}},
                               {{"rho", rho}, {"sigma", sigma}}, opt);
  return r;
}

}  // namespace hklab::tools
