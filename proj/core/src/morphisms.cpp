#include "hklab/morphisms.hpp"

#include <cmath>
#include <stdexcept>

namespace hklab {

namespace {

int degree(Parity p) {
  if (p == Parity::mixed) throw std::logic_error("degree of an inhomogeneous element");
  return p == Parity::odd ? 1 : 0;
}

void require_t(double t) {
  if (!(t > 0.0) || !std::isfinite(t)) throw std::invalid_argument("t must be positive and finite");
}

Eigen::VectorXcd stacked(const CliffFunction& F) {
  Eigen::VectorXcd d(2 * F.first().size());
  d << F.first(), F.second();
  return d;
}

}  // namespace

GridSpec beta_grid(double t, const BetaWindow& window) {
  require_t(t);
  return GridSpec(window.half_width * t, window.samples);
}

CliffFunction beta(double t, const SFunction& f, const GridSpec& grid) {
  require_t(t);
  return CliffFunction(
      grid, [fn = f.callable(), t](double x) { return CliffordElement{fn(x / t), fn(-x / t)}; },
      "beta(" + f.name() + ")");
}

CliffFunction beta(double t, const SFunction& f, const BetaWindow& window) {
  return beta(t, f, beta_grid(t, window));
}

double beta_defect(double t, const SFunction& f, const DihedralElement& g, ScaledAction action,
                   const BetaWindow& window) {
  const CliffFunction b = beta(t, f, window);
  const CliffFunction moved = act_on_cliff_function(g, b, action, ActionMode::callable).value;
  return std::max((b.first() - moved.first()).cwiseAbs().maxCoeff(),
                  (b.second() - moved.second()).cwiseAbs().maxCoeff());
}

// ---------------------------------------------------------------------------

DiracCalculus::DiracCalculus(GridSpec grid, std::size_t cache_limit)
    : grid_(grid), dirac_(dirac_matrix(grid)), cache_limit_(cache_limit) {}

const SpectralData& DiracCalculus::spectrum() const {
  std::call_once(spectrum_once_, [this] { spectrum_ = spectral_decomposition(dirac_); });
  return spectrum_;
}

DenseOperator DiracCalculus::operator()(const SFunction& f, double t) const {
  require_t(t);
  const auto key = std::make_pair(f.name(), t);
  {
    std::lock_guard lock(cache_mutex_);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  }
  DenseOperator value = dirac_calculus(spectrum(), grid_, f.callable(), t).with_parity(f.parity());
  std::lock_guard lock(cache_mutex_);
  if (cache_.size() >= cache_limit_) cache_.clear();
  cache_.emplace(key, value);
  return value;
}

// ---------------------------------------------------------------------------

SCTensor::SCTensor(const SFunction& f, const CliffFunction& F, Complex coefficient) {
  terms_.push_back({coefficient, f, F});
}

SCTensor SCTensor::homogeneous() const {
  SCTensor out;
  for (const auto& term : terms_) {
    std::vector<SFunction> fs;
    if (term.f.parity() == Parity::mixed) {
      const SFunction r = grade(term.f);
      const SFunction even = 0.5 * (term.f + r);
      const SFunction odd = 0.5 * (term.f - r);
      fs.push_back(SFunction(even.name(), even.callable(), Parity::even));
      fs.push_back(SFunction(odd.name(), odd.callable(), Parity::odd));
    } else {
      fs.push_back(term.f);
    }
    std::vector<CliffFunction> Fs;
    if (term.F.parity() == Parity::mixed) {
      const CliffFunction r = grade(term.F);
      Fs.push_back(Complex(0.5) * (term.F + r));
      Fs.push_back(Complex(0.5) * (term.F - r));
    } else {
      Fs.push_back(term.F);
    }
    for (const auto& f : fs)
      for (const auto& F : Fs) out.terms_.push_back({term.coefficient, f, F});
  }
  return out;
}

SCTensor operator+(const SCTensor& a, const SCTensor& b) {
  SCTensor out = a;
  out.terms_.insert(out.terms_.end(), b.terms_.begin(), b.terms_.end());
  return out;
}

SCTensor operator*(const SCTensor& a, const SCTensor& b) {
  const SCTensor ha = a.homogeneous();
  const SCTensor hb = b.homogeneous();
  SCTensor out;
  for (const auto& x : ha.terms_) {
    for (const auto& y : hb.terms_) {
      const double sign = (degree(x.F.parity()) * degree(y.f.parity())) % 2 == 0 ? 1.0 : -1.0;
      out.terms_.push_back({sign * x.coefficient * y.coefficient, x.f * y.f, x.F * y.F});
    }
  }
  return out;
}

SCTensor operator*(Complex c, const SCTensor& a) {
  SCTensor out = a;
  for (auto& term : out.terms_) term.coefficient *= c;
  return out;
}

SCTensor star(const SCTensor& a) {
  SCTensor out;
  const SCTensor split = a.homogeneous();
  for (const auto& term : split.terms()) {
    const double sign = degree(term.f.parity()) * degree(term.F.parity()) == 1 ? -1.0 : 1.0;
    out = out + SCTensor(star(term.f), star(term.F), sign * std::conj(term.coefficient));
  }
  return out;
}

SCTensor grade(const SCTensor& a) {
  SCTensor out;
  for (const auto& term : a.terms()) out = out + SCTensor(grade(term.f), grade(term.F), term.coefficient);
  return out;
}

SCTensor act(const DihedralElement& g, const SCTensor& a, ScaledAction action) {
  SCTensor out;
  for (const auto& term : a.terms()) {
    out = out + SCTensor(term.f, act_on_cliff_function(g, term.F, action, ActionMode::callable).value,
                         term.coefficient);
  }
  return out;
}

DenseOperator alpha(const DiracCalculus& calc, double t, const SFunction& f, const CliffFunction& F) {
  if (!(F.grid() == calc.grid())) throw std::invalid_argument("alpha: F is sampled on a different grid");
  const CliffFunction Ft = F.dilated(t);
  const Parity p = f.parity() * Ft.parity();
  return calc(f, t).scale_columns(stacked(Ft)).with_parity(p);
}

DenseOperator alpha(const DiracCalculus& calc, double t, const SCTensor& a) {
  const auto n = 2 * static_cast<Eigen::Index>(calc.grid().size());
  if (a.empty()) return DenseOperator(Eigen::MatrixXd(Eigen::MatrixXd::Zero(n, n)), Parity::even);
  DenseOperator out;
  bool first = true;
  for (const auto& term : a.terms()) {
    DenseOperator piece = term.coefficient * alpha(calc, t, term.f, term.F);
    out = first ? piece : out + piece;
    first = false;
  }
  return out;
}

double alpha_defect(const DiracCalculus& calc, double t, const SFunction& f, const CliffFunction& F,
                    const DihedralElement& g, ScaledAction action) {
  require_t(t);
  const CliffFunction moved = act_on_cliff_function(g, F, action, ActionMode::callable).value;
  const DenseOperator lhs = alpha(calc, t, f, moved);
  const DenseOperator rhs = conjugate_action(g, alpha(calc, t, f, F), calc.grid(), ScaledAction{t * action.s});
  return operator_norm(lhs - rhs);
}

double mult_identity_residual(double t, const CliffFunction& F, const DihedralElement& g, ScaledAction action) {
  require_t(t);
  const CliffFunction moved = act_on_cliff_function(g, F, action, ActionMode::callable).value;
  const DenseOperator lhs = mult_operator(moved.dilated(t));
  const DenseOperator rhs = conjugate_action(g, mult_operator(F.dilated(t)), F.grid(), ScaledAction{t * action.s});
  return operator_norm(lhs - rhs);
}

// ---------------------------------------------------------------------------

DenseOperator gamma(const HermiteModel& model, double t, const SFunction& f) {
  require_t(t);
  return functional_calculus(model.spectrum(), f.callable(), t).with_parity(f.parity());
}

DenseOperator kernel_projection(const HermiteModel& model, double tol) {
  const SpectralData& spec = model.spectrum();
  std::vector<Eigen::Index> kernel;
  for (Eigen::Index i = 0; i < spec.size(); ++i)
    if (std::abs(spec.eigenvalues(i)) <= tol) kernel.push_back(i);
  if (kernel.size() != 1) {
    throw KernelMultiplicityError("kernel of B has numerical multiplicity " + std::to_string(kernel.size()) +
                                  ", expected 1");
  }
  const auto& v = std::get<Eigen::MatrixXd>(spec.eigenvectors);
  const Eigen::VectorXd k = v.col(kernel.front());
  return DenseOperator(Eigen::MatrixXd(k * k.transpose()), Parity::even);
}

DenseOperator kernel_projection(const HermiteBasis& basis, double tol) {
  return kernel_projection(HermiteModel(basis), tol);
}

DenseOperator homotopy_H(const HermiteModel& model, const SFunction& f, double s) {
  if (!(s >= 0.0)) throw std::invalid_argument("homotopy_H: s must be in [0, 1]");
  if (s == 0.0) return (f(0.0) * kernel_projection(model)).with_parity(Parity::even);
  return functional_calculus(model.spectrum(), f.callable(), s).with_parity(f.parity());
}

double homotopy_gap_bound(const HermiteModel& model, const SFunction& f, double s, double tol) {
  if (s == 0.0) return 0.0;
  double worst = 0.0;
  const auto& ev = model.spectrum().eigenvalues;
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (std::abs(ev(i)) > tol) worst = std::max(worst, std::abs(f(ev(i) / s)));
  return worst;
}

}  // namespace hklab
