#include <fmt/format.h>

#include <cmath>

#include "hklab/convergence.hpp"
#include "hklab/operators.hpp"
#include "suites.hpp"

namespace hklab::tools {

namespace {

constexpr const char* kEquivariance = "Dirac alpha_t: alpha_t(f (x) g.F) = g._t alpha_t(f (x) F) exactly";
constexpr const char* kMultIdentity = "multiplication operators: M_{(g.F)_t} = g._t M_{F_t}";

AsymptoticFamily<SCTensor, DenseOperator> alpha_family(const DiracCalculus& calc) {
  const SignedIndexMap swap = swap_grading(calc.grid());
  AsymptoticFamily<SCTensor, DenseOperator> fam;
  fam.name = "alpha";
  fam.evaluate = [&calc](double t, const SCTensor& a) { return alpha(calc, t, a); };
  fam.source = {[](const SCTensor& a, const SCTensor& b) { return a * b; },
                [](const SCTensor& a, const SCTensor& b) { return a + b; },
                [](Complex c, const SCTensor& a) { return c * a; },
                [](const SCTensor& a) { return star(a); },
                [](const SCTensor& a) { return grade(a); }};
  fam.target = {[](const DenseOperator& a, const DenseOperator& b) { return a * b; },
                [](const DenseOperator& a, const DenseOperator& b) { return a + b; },
                [](Complex c, const DenseOperator& a) { return c * a; },
                [](const DenseOperator& a) { return a.adjoint(); },
                [swap](const DenseOperator& a) { return conjugate(a, swap, swap); }};
  fam.distance = [](const DenseOperator& a, const DenseOperator& b) { return operator_norm(a - b); };
  fam.act_source = [](const DihedralElement& g, const SCTensor& a) { return act(g, a, ScaledAction::standard()); };
  fam.act_target = [grid = calc.grid()](const DihedralElement& g, double t, const DenseOperator& op) {
    return conjugate_action(g, op, grid, ScaledAction{t});
  };
  return fam;
}

}  // namespace

SuiteResult alpha_suite(SuiteContext& ctx) {
  const RunConfig& cfg = ctx.config();
  SuiteResult r{"alpha"};
  const GridSpec grid = ctx.grid();
  const DiracCalculus& calc = ctx.dirac();

  const SFunction u = SFunction::gaussian();
  const SFunction v = SFunction::odd_gaussian();
  const CliffFunction Fuu = CliffFunction::from_components(grid, u, u);
  const CliffFunction Fuv = CliffFunction::from_components(grid, u, v);
  const std::vector<SFunction> fs{u, v};
  const std::vector<CliffFunction> Fs{Fuu, Fuv};
  const std::vector<DihedralElement> gs{DihedralElement::rho(), DihedralElement::sigma()};
  const std::string gp = fmt::format("N={};L={:g}", grid.size(), grid.half_width());

  for (double t : cfg.operator_t) {
    for (const auto& F : Fs) {
      for (const auto& g : gs) {
        r.below("mult_identity_residual", kMultIdentity, fmt::format("{};t={:g};g={};F={}", gp, t, g.str(), F.name()),
                mult_identity_residual(t, F, g), cfg.tol.exact_operator);
      }
      r.equals("mult_identity_residual", kMultIdentity, fmt::format("{};t={:g};g=e;F={}", gp, t, F.name()),
               mult_identity_residual(t, F, DihedralElement::identity()), 0.0);
    }
  }

  struct Job {
    double t;
    double s;
    DihedralElement g;
    const SFunction* f;
    const CliffFunction* F;
    bool sweep;
  };
  std::vector<Job> jobs;
  for (double t : cfg.operator_t)
    for (const auto& g : gs)
      for (const auto& f : fs)
        for (const auto& F : Fs) jobs.push_back({t, 1.0, g, &f, &F, false});
  // s-scaled actions, at the middle aligned t.
  const double sweep_t = cfg.operator_t[cfg.operator_t.size() / 2];
  for (double s : cfg.s_grid)
    for (const auto& g : gs) jobs.push_back({sweep_t, s, g, &u, &Fuu, true});

  std::vector<double> defects(jobs.size());
  parallel_for(jobs.size(), cfg.parallel, [&](std::size_t i) {
    const Job& j = jobs[i];
    defects[i] = alpha_defect(calc, j.t, *j.f, *j.F, j.g, ScaledAction{j.s});
  });
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const Job& j = jobs[i];
    r.below(j.sweep ? "alpha_defect_scaled" : "alpha_defect", kEquivariance,
            fmt::format("{};t={:g};s={:g};g={};f={};F={}", gp, j.t, j.s, j.g.str(), j.f->name(), j.F->name()),
            defects[i], cfg.tol.alpha);
  }
  for (const auto& f : fs) {
    const DenseOperator id = alpha(calc, 1.0, f, Fuu);
    r.equals("alpha_defect", kEquivariance, fmt::format("{};t=1;g=e;f={};F=(u,u)", gp, f.name()),
             operator_norm(id - conjugate_action(DihedralElement::identity(), id, grid, {1.0})), 0.0);
  }
  r.equals("alpha_zero", "alpha_t(0 (x) F) = 0", "t=1;F=(u,u)", alpha(calc, 1.0, SFunction::zero(), Fuu).max_abs(),
           0.0);

  const double t0 = cfg.operator_t.front();
  const DenseOperator a0 = alpha(calc, t0, u, Fuu);
  const Eigen::VectorXd sv = compactness_profile(a0, 50);
  r.below("compactness", "alpha_t(f (x) F) is compact: singular values decay",
          fmt::format("{};t={:g};sigma_50/sigma_1", gp, t0), sv(sv.size() - 1) / sv(0), cfg.tol.compactness);

  const double norm_calc = operator_norm(calc(u, t0));
  const double norm_mult = operator_norm(mult_operator(Fuu.dilated(t0)));
  const double norm_alpha = operator_norm(a0);
  r.below("calculus_norm", "||u(D/t)|| = sup|u| = 1", fmt::format("t={:g}", t0), std::abs(norm_calc - 1.0),
          cfg.tol.route);
  r.below("multiplier_norm", "||M_{F_t}|| = sup|F| = 1", fmt::format("t={:g};F=(u,u)", t0), std::abs(norm_mult - 1.0),
          cfg.tol.route);
  r.below("norm_bound", "||alpha_t(u (x) (u,u))|| <= ||u(D/t)|| ||M_{u_t}||",
          fmt::format("t={:g};norm={:.15g}", t0, norm_alpha), norm_alpha - norm_calc * norm_mult, 1e-12);

  DefectSuiteOptions opt;
  opt.t_grid = cfg.defect_t;
  opt.parallel = cfg.parallel;
  opt.expectations = {{"multiplicativity", Expectation::decreasing()},
                      {"additivity", Expectation::all_below(cfg.tol.exact_operator)},
                      {"homogeneity", Expectation::all_below(cfg.tol.exact_operator)},
                      {"star", Expectation::decreasing()},
                      {"grading", Expectation::all_below(cfg.tol.exact_operator)}};
  // Equivariance over the whole defect grid is measured only: once t L^-1 is
  // large the dilated inputs reach the window edge and zero extension
  // dominates.  The thresholded identity is the alpha_defect rows above.
  r.convergence = defect_suite(alpha_family(calc), {{"u(x)(u,u)", SCTensor(u, Fuu)}, {"v(x)(u,v)", SCTensor(v, Fuv)}},
                               {{0, 0}, {0, 1}}, {{"rho", gs[0]}, {"sigma", gs[1]}}, opt);
  return r;
}

}  // namespace hklab::tools
