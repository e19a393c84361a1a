#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>

#include "hklab/operators.hpp"
#include "suites.hpp"

namespace hklab::tools {

namespace {

constexpr const char* kProjection = "p is the orthogonal projection onto ker B";
constexpr const char* kContinuity = "homotopy H(f,s) is continuous at s=0: ||H(f,s)-f(0)p|| <= sup_{|mu|>=sqrt2/s}|f|";
constexpr const char* kGamma = "gamma_t(f) = f(B/t) is a *-homomorphism";

double distance(const DenseOperator& a, const DenseOperator& b) { return operator_norm(a - b); }

}  // namespace

SuiteResult gamma_homotopy_suite(SuiteContext& ctx) {
  const RunConfig& cfg = ctx.config();
  SuiteResult r{"gamma-homotopy"};
  const HermiteModel& model = ctx.hermite();
  const Eigen::Index dim = model.dimension();
  const int m = model.hermite_size();
  const SFunction u = SFunction::gaussian();
  const SFunction v = SFunction::odd_gaussian();

  const DenseOperator p = kernel_projection(model, cfg.tol.kernel);
  r.below("projection_idempotent", kProjection, "||p^2-p||", distance(p * p, p), cfg.tol.exact_operator);
  r.below("projection_self_adjoint", kProjection, "max|p-p^*|", self_adjointness_defect(p), cfg.tol.exact_operator);
  r.below("projection_trace", "ker B is one-dimensional: trace p = 1", "|trace p - 1|",
          std::abs(p.trace() - Complex(1.0)), cfg.tol.kernel);

  Eigen::VectorXcd ground = Eigen::VectorXcd::Zero(dim);
  ground(0) = 1.0;  // (phi_0, phi_0)/sqrt2
  r.below("projection_fixes_ground_state", kProjection, "||p e_0 - e_0||;e_0=(phi_0,phi_0)/sqrt2",
          (p.apply(ground) - ground).norm(), cfg.tol.kernel);
  Eigen::VectorXcd phi1 = Eigen::VectorXcd::Zero(m);
  phi1(1) = 1.0;
  const Eigen::VectorXcd second = model.from_components(Eigen::VectorXcd::Zero(m), phi1);
  r.below("projection_kills_excited_state", kProjection, "||p (0,phi_1)||", p.apply(second).norm(), cfg.tol.kernel);

  // Homotopy endpoints.
  r.equals("homotopy_endpoint_zero", "H(f,0) = f(0) p", "f=u", distance(homotopy_H(model, u, 0.0), p), 0.0);
  r.equals("homotopy_endpoint_zero", "H(f,0) = f(0) p", "f=v", homotopy_H(model, v, 0.0).max_abs(), 0.0);
  for (const auto& f : {u, v}) {
    r.equals("homotopy_endpoint_one", "H(f,1) = gamma_1(f)", fmt::format("f={}", f.name()),
             distance(homotopy_H(model, f, 1.0), gamma(model, 1.0, f)), 0.0);
  }

  std::set<double> s_values{1.0, 0.5, 0.25};
  for (double s : cfg.s_grid)
    if (s > 0.0) s_values.insert(s);
  for (double s : s_values) {
    const double gap = distance(homotopy_H(model, u, s), p);
    const double bound = std::exp(-2.0 / (s * s));
    if (s == 1.0 || s == 0.5 || s == 0.25) {
      r.below("homotopy_gap_value", "||H(u,s)-p|| = u(sqrt2/s) = exp(-2/s^2)", fmt::format("s={:g}", s),
              std::abs(gap - bound), cfg.tol.homotopy);
    }
    r.below("homotopy_continuity", kContinuity, fmt::format("f=u;s={:g};bound={:.12g}", s, bound), gap - bound,
            1e-14);
    for (const auto& f : {u, v}) {
      const DenseOperator h0 = homotopy_H(model, f, 0.0);
      r.below("homotopy_gap_identity", "||H(f,s)-H(f,0)|| = max over nonzero lambda of |f(lambda/s)|",
              fmt::format("f={};s={:g}", f.name(), s),
              std::abs(distance(homotopy_H(model, f, s), h0) - homotopy_gap_bound(model, f, s, cfg.tol.kernel)),
              cfg.tol.gamma);
    }
  }

  // Spectral mapping for gamma_1(u).
  const DenseOperator g1u = gamma(model, 1.0, u);
  Eigen::VectorXd mapped = spectral_decomposition(g1u).eigenvalues;
  std::sort(mapped.data(), mapped.data() + mapped.size(), std::greater<>());
  std::vector<double> expected{1.0};
  for (int n = 1; n < m; ++n) expected.insert(expected.end(), 2, std::exp(-2.0 * n));
  double mapping_error = 0.0;
  for (std::size_t i = 0; i < expected.size(); ++i)
    mapping_error = std::max(mapping_error, std::abs(mapped(static_cast<Eigen::Index>(i)) - expected[i]));
  r.below("spectral_mapping", "spectrum of gamma_1(u) is {1} and exp(-2n) twice for n>=1", fmt::format("M={}", m),
          mapping_error, cfg.tol.gamma);

  for (double t : cfg.operator_t) {
    r.below("gamma_multiplicative", kGamma, fmt::format("t={:g};u*v", t),
            distance(gamma(model, t, u * v), gamma(model, t, u) * gamma(model, t, v)), cfg.tol.gamma);
    r.below("gamma_star", kGamma, fmt::format("t={:g};f=v", t),
            distance(gamma(model, t, star(v)), gamma(model, t, v).adjoint()), cfg.tol.gamma);
    r.equals("gamma_zero", "gamma_t(0) = 0", fmt::format("t={:g}", t), gamma(model, t, SFunction::zero()).max_abs(),
             0.0);
  }

  for (const auto& g : {DihedralElement::rho(), DihedralElement::sigma()}) {
    r.below("gamma_equivariance_unscaled", "at s=0 gamma_1(u) commutes with the group unitaries",
            fmt::format("g={};s=0", g.str()), distance(model.conjugate_action(g, g1u, {0.0}), g1u), cfg.tol.gamma);
  }
  // No rate is known at s > 0: measured only.
  for (double s : cfg.s_grid) {
    if (s == 0.0) continue;
    r.measured("gamma_equivariance_scaled", "gamma_1(u) equivariance at s>0 (no asserted bound)",
               fmt::format("g=rho;s={:g}", s),
               distance(model.conjugate_action(DihedralElement::rho(), g1u, {s}), g1u));
  }
  return r;
}

}  // namespace hklab::tools
