#include <fmt/format.h>

#include <cmath>
#include <set>

#include "hklab/convergence.hpp"
#include "hklab/operators.hpp"
#include "suites.hpp"

namespace hklab::tools {

namespace {

constexpr const char* kSpectrumLaw = "oscillator B = C + D: nonzero eigenvalues are +-sqrt(2n)";
constexpr const char* kKernel = "oscillator B: kernel is one-dimensional";
constexpr const char* kKernelVector = "oscillator B: kernel spanned by (phi_0, phi_0)/sqrt2";

/// Largest error of the eigenvalues +-sqrt(2n), n = 1..count, assuming the
/// ascending spectrum is symmetric around its middle entry.
double eigenvalue_error(const HermiteModel& model, int count) {
  const auto& ev = model.spectrum().eigenvalues;
  const Eigen::Index mid = model.hermite_size() - 1;
  double worst = 0.0;
  for (int n = 1; n <= count; ++n) {
    const double exact = std::sqrt(2.0 * n);
    worst = std::max({worst, std::abs(ev(mid + n) - exact), std::abs(ev(mid - n) + exact)});
  }
  return worst;
}

int kernel_count(const HermiteModel& model, double tol) {
  int count = 0;
  for (double l : model.spectrum().eigenvalues) count += std::abs(l) <= tol;
  return count;
}

/// max |G A G + A|: zero iff A is odd for the grading G.
double oddness_defect(const DenseOperator& op, const SignedIndexMap& grading) {
  return (conjugate(op, grading, grading) + op).max_abs();
}

}  // namespace

SuiteResult spectrum_suite(SuiteContext& ctx) {
  const RunConfig& cfg = ctx.config();
  SuiteResult r{"spectrum"};

  // Oscillator in the Hermite model.
  const HermiteModel& model = ctx.hermite();
  const auto& ev = model.spectrum().eigenvalues;
  const Eigen::Index mid = model.hermite_size() - 1;
  for (int n = 1; n <= 20; ++n) {
    const double exact = std::sqrt(2.0 * n);
    r.below("eigenvalue_error", kSpectrumLaw, fmt::format("M={};n={}", model.hermite_size(), n),
            std::max(std::abs(ev(mid + n) - exact), std::abs(ev(mid - n) + exact)), cfg.tol.eigenvalue);
  }
  r.equals("kernel_count", kKernel, fmt::format("M={};|lambda|<={:g}", model.hermite_size(), cfg.tol.kernel),
           kernel_count(model, cfg.tol.kernel), 1.0);

  double gap = std::numeric_limits<double>::infinity();
  Eigen::Index kernel_index = 0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (std::abs(ev(i)) > cfg.tol.kernel)
      gap = std::min(gap, std::abs(ev(i)));
    else
      kernel_index = i;
  }
  r.below("spectral_gap", "oscillator B: |lambda| >= sqrt2 off the kernel", "min nonzero |lambda| - sqrt2",
          std::abs(gap - std::sqrt(2.0)), cfg.tol.eigenvalue);
  const auto& vecs = std::get<Eigen::MatrixXd>(model.spectrum().eigenvectors);
  r.at_least("kernel_overlap", kKernelVector, "|<v_0,(phi_0,phi_0)/sqrt2>|", std::abs(vecs(0, kernel_index)),
             1.0 - cfg.tol.overlap);

  r.below("invariant_subspace", "oscillator B preserves the truncated Hermite subspace", "max|(1-QQ^T)BQ|",
          model.invariance_defect(), cfg.tol.algebra);
  r.below("oscillator_self_adjoint", "oscillator B is self-adjoint", "max|B-B^*|",
          self_adjointness_defect(model.oscillator()), cfg.tol.algebra);
  r.below("oscillator_odd", "oscillator B is odd", "max|GBG+B|", oddness_defect(model.oscillator(), model.grading()),
          cfg.tol.algebra);

  // trace u(B) = 1 + 2 sum_{n=1}^{M-1} e^{-2n}
  double expected_trace = 1.0;
  for (int n = 1; n < model.hermite_size(); ++n) expected_trace += 2.0 * std::exp(-2.0 * n);
  const double trace = functional_calculus(model.spectrum(), SFunction::gaussian().callable()).trace().real();
  r.below("trace_u_of_B", "spectral mapping for u(B) on the oscillator spectrum",
          fmt::format("trace={:.15g};expected={:.15g}", trace, expected_trace), std::abs(trace - expected_trace),
          cfg.tol.exact_operator);

  // Convergence in the Hermite truncation.
  std::set<int> sizes{64, 128, cfg.hermite_size};
  for (int m : sizes) {
    if (m > cfg.hermite_size || m < 21) continue;
    const HermiteModel& mm = ctx.hermite(m);
    r.below("truncation_eigenvalue_error", kSpectrumLaw, fmt::format("M={};n=1..20", m), eigenvalue_error(mm, 20),
            cfg.tol.eigenvalue);
    r.equals("truncation_kernel_count", kKernel, fmt::format("M={}", m), kernel_count(mm, cfg.tol.kernel), 1.0);
  }

  // Grid operators.
  const GridSpec grid = ctx.grid();
  const SignedIndexMap swap = swap_grading(grid);
  const DenseOperator& D = ctx.dirac().dirac();
  const DenseOperator C = clifford_mult_matrix(grid);
  const std::string gp = fmt::format("N={};L={:g}", grid.size(), grid.half_width());
  r.below("dirac_self_adjoint", "Dirac operator D is self-adjoint", gp, self_adjointness_defect(D), cfg.tol.algebra);
  r.below("dirac_odd", "Dirac operator D is odd for the component swap", gp, oddness_defect(D, swap),
          cfg.tol.algebra);
  r.below("clifford_self_adjoint", "Clifford multiplication C is self-adjoint", gp, self_adjointness_defect(C),
          cfg.tol.algebra);
  r.below("clifford_odd", "Clifford multiplication C is odd for the component swap", gp, oddness_defect(C, swap),
          cfg.tol.algebra);

  // u(D/t) by eigendecomposition against the FFT multiplier.
  const SpectralData& dspec = ctx.dirac().spectrum();
  struct RouteJob {
    NyquistMode mode;
    double t;
  };
  std::vector<RouteJob> jobs;
  for (NyquistMode mode : {NyquistMode::discarded, NyquistMode::zero_wavenumber})
    for (double t : cfg.defect_t) jobs.push_back({mode, t});
  std::vector<double> gaps(jobs.size());
  const auto u = SFunction::gaussian().callable();
  parallel_for(jobs.size(), cfg.parallel, [&](std::size_t i) {
    const DenseOperator eig = dirac_calculus(dspec, grid, u, jobs[i].t, jobs[i].mode);
    gaps[i] = operator_norm(eig - heat_multiplier_route(grid, jobs[i].t, jobs[i].mode));
  });
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    r.below("heat_route_agreement", "functional calculus u(D/t): eigendecomposition equals Fourier multiplier",
            fmt::format("{};t={:g};nyquist={}", gp, jobs[i].t,
                        jobs[i].mode == NyquistMode::discarded ? "discarded" : "zero"),
            gaps[i], cfg.tol.route);
  }
  return r;
}

}  // namespace hklab::tools
