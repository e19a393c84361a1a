#include "hklab/discretization.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hklab {

GridSpec::GridSpec(double half_width, std::size_t samples) : half_width_(half_width), samples_(samples) {
  if (!(half_width > 0.0) || !std::isfinite(half_width)) {
    throw std::invalid_argument("GridSpec: half-width must be positive");
  }
  if (samples == 0 || samples % 2 != 0) throw std::invalid_argument("GridSpec: sample count must be even and positive");
}

double GridSpec::point(std::size_t j) const { return -half_width_ + static_cast<double>(j) * spacing(); }

Eigen::VectorXd GridSpec::points() const {
  Eigen::VectorXd x(static_cast<Eigen::Index>(samples_));
  for (std::size_t j = 0; j < samples_; ++j) x(static_cast<Eigen::Index>(j)) = point(j);
  return x;
}

std::optional<std::ptrdiff_t> GridSpec::steps(double shift) const {
  const double k = shift * static_cast<double>(samples_) / (2.0 * half_width_);
  const double rounded = std::round(k);
  if (std::abs(k - rounded) > 1e-9 * std::max(1.0, std::abs(k))) return std::nullopt;
  return static_cast<std::ptrdiff_t>(rounded);
}

// ---------------------------------------------------------------------------

SFunction::SFunction(std::string name, Callable fn, Parity parity)
    : name_(std::move(name)), fn_(std::move(fn)), parity_(parity) {}

SFunction SFunction::gaussian() {
  return {"u", [](double x) { return Complex{std::exp(-x * x)}; }, Parity::even};
}

SFunction SFunction::odd_gaussian() {
  return {"v", [](double x) { return Complex{x * std::exp(-x * x)}; }, Parity::odd};
}

SFunction SFunction::zero() {
  return {"0", [](double) { return Complex{}; }, Parity::even};
}

Eigen::VectorXcd SFunction::sample(const GridSpec& grid) const {
  Eigen::VectorXcd out(static_cast<Eigen::Index>(grid.size()));
  for (std::size_t j = 0; j < grid.size(); ++j) out(static_cast<Eigen::Index>(j)) = fn_(grid.point(j));
  return out;
}

bool SFunction::vanishes_at_infinity(const GridSpec& grid, double threshold) const {
  const double L = grid.half_width();
  return std::max(std::abs(fn_(-L)), std::abs(fn_(L))) <= threshold;
}

SFunction operator*(const SFunction& f, const SFunction& g) {
  return {"(" + f.name() + "*" + g.name() + ")", [a = f.callable(), b = g.callable()](double x) { return a(x) * b(x); },
          f.parity() * g.parity()};
}

SFunction operator+(const SFunction& f, const SFunction& g) {
  return {"(" + f.name() + "+" + g.name() + ")", [a = f.callable(), b = g.callable()](double x) { return a(x) + b(x); },
          combine_sum(f.parity(), g.parity())};
}

SFunction operator-(const SFunction& f, const SFunction& g) {
  return {"(" + f.name() + "-" + g.name() + ")", [a = f.callable(), b = g.callable()](double x) { return a(x) - b(x); },
          combine_sum(f.parity(), g.parity())};
}

SFunction operator*(Complex c, const SFunction& f) {
  const std::string label = c.imag() == 0.0 ? std::to_string(c.real()) : "(" + std::to_string(c.real()) + "," +
                                                                              std::to_string(c.imag()) + ")";
  return {label + "." + f.name(), [c, a = f.callable()](double x) { return c * a(x); }, f.parity()};
}

SFunction star(const SFunction& f) {
  return {"conj(" + f.name() + ")", [a = f.callable()](double x) { return std::conj(a(x)); }, f.parity()};
}

SFunction grade(const SFunction& f) {
  return {"refl(" + f.name() + ")", [a = f.callable()](double x) { return a(-x); }, f.parity()};
}

// ---------------------------------------------------------------------------

CliffFunction::CliffFunction(GridSpec grid, Callable fn, std::string name)
    : grid_(grid), fn_(std::move(fn)), name_(std::move(name)) {
  const auto n = static_cast<Eigen::Index>(grid_.size());
  first_.resize(n);
  second_.resize(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const CliffordElement v = fn_(grid_.point(static_cast<std::size_t>(j)));
    first_(j) = v.z;
    second_(j) = v.w;
  }
}

CliffFunction::CliffFunction(GridSpec grid, Eigen::VectorXcd first, Eigen::VectorXcd second, std::string name)
    : grid_(grid), first_(std::move(first)), second_(std::move(second)), name_(std::move(name)) {
  const auto n = static_cast<Eigen::Index>(grid_.size());
  if (first_.size() != n || second_.size() != n) {
    throw std::invalid_argument("CliffFunction: sample arrays do not match the grid");
  }
}

CliffFunction CliffFunction::from_components(const GridSpec& grid, const SFunction& a, const SFunction& b) {
  return {grid,
          [fa = a.callable(), fb = b.callable()](double x) { return CliffordElement{fa(x), fb(x)}; },
          "(" + a.name() + "," + b.name() + ")"};
}

CliffFunction CliffFunction::diagonal(const GridSpec& grid, const SFunction& f) { return from_components(grid, f, f); }

CliffordElement CliffFunction::operator()(double x) const {
  if (!fn_) throw std::logic_error("CliffFunction '" + name_ + "' has no callable form");
  return fn_(x);
}

CliffFunction CliffFunction::dilated(double t) const {
  if (!fn_) throw std::logic_error("CliffFunction::dilated needs a callable form");
  if (!(t > 0.0)) throw std::invalid_argument("CliffFunction::dilated: t must be positive");
  return {grid_, [f = fn_, t](double x) { return f(x / t); }, name_ + "_t"};
}

CliffFunction CliffFunction::resampled(const GridSpec& grid) const {
  if (!fn_) throw std::logic_error("CliffFunction::resampled needs a callable form");
  return {grid, fn_, name_};
}

Parity CliffFunction::parity(double tol) const {
  const double odd_part = (first_ - second_).cwiseAbs().maxCoeff();
  const double even_part = (first_ + second_).cwiseAbs().maxCoeff();
  if (odd_part <= tol) return Parity::even;
  if (even_part <= tol) return Parity::odd;
  return Parity::mixed;
}

namespace {

void require_same_grid(const CliffFunction& F, const CliffFunction& G) {
  if (!(F.grid() == G.grid())) throw std::invalid_argument("CliffFunction: grid mismatch");
}

template <class Op>
CliffFunction combine(const CliffFunction& F, const CliffFunction& G, const std::string& name, Op op) {
  require_same_grid(F, G);
  if (F.has_callable() && G.has_callable()) {
    return {F.grid(), [f = F.callable(), g = G.callable(), op](double x) { return op(f(x), g(x)); }, name};
  }
  const auto n = F.first().size();
  Eigen::VectorXcd a(n), b(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const CliffordElement v = op(CliffordElement{F.first()(j), F.second()(j)}, CliffordElement{G.first()(j), G.second()(j)});
    a(j) = v.z;
    b(j) = v.w;
  }
  return {F.grid(), std::move(a), std::move(b), name};
}

template <class Op>
CliffFunction transform(const CliffFunction& F, const std::string& name, Op op) {
  if (F.has_callable()) {
    return {F.grid(), [f = F.callable(), op](double x) { return op(f(x)); }, name};
  }
  const auto n = F.first().size();
  Eigen::VectorXcd a(n), b(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const CliffordElement v = op(CliffordElement{F.first()(j), F.second()(j)});
    a(j) = v.z;
    b(j) = v.w;
  }
  return {F.grid(), std::move(a), std::move(b), name};
}

}  // namespace

CliffFunction operator*(const CliffFunction& F, const CliffFunction& G) {
  return combine(F, G, "(" + F.name() + "*" + G.name() + ")",
                 [](const CliffordElement& a, const CliffordElement& b) { return clifford_mul(a, b); });
}

CliffFunction operator+(const CliffFunction& F, const CliffFunction& G) {
  return combine(F, G, "(" + F.name() + "+" + G.name() + ")",
                 [](const CliffordElement& a, const CliffordElement& b) { return a + b; });
}

CliffFunction operator-(const CliffFunction& F, const CliffFunction& G) {
  return combine(F, G, "(" + F.name() + "-" + G.name() + ")",
                 [](const CliffordElement& a, const CliffordElement& b) { return a - b; });
}

CliffFunction operator*(Complex c, const CliffFunction& F) {
  return transform(F, "c." + F.name(), [c](const CliffordElement& a) { return c * a; });
}

CliffFunction star(const CliffFunction& F) {
  return transform(F, "conj(" + F.name() + ")", [](const CliffordElement& a) { return star(a); });
}

CliffFunction grade(const CliffFunction& F) {
  return transform(F, "swap(" + F.name() + ")", [](const CliffordElement& a) { return grade(a); });
}

double sup_norm(const CliffFunction& F) {
  return std::max(F.first().cwiseAbs().maxCoeff(), F.second().cwiseAbs().maxCoeff());
}

// ---------------------------------------------------------------------------

HilbertVector::HilbertVector(GridSpec grid, Eigen::VectorXcd stacked) : grid_(grid), data_(std::move(stacked)) {
  if (data_.size() != 2 * static_cast<Eigen::Index>(grid_.size())) {
    throw std::invalid_argument("HilbertVector: expected 2N samples");
  }
}

HilbertVector::HilbertVector(GridSpec grid, const Eigen::VectorXcd& first, const Eigen::VectorXcd& second)
    : grid_(grid) {
  const auto n = static_cast<Eigen::Index>(grid_.size());
  if (first.size() != n || second.size() != n) throw std::invalid_argument("HilbertVector: expected N samples each");
  data_.resize(2 * n);
  data_ << first, second;
}

HilbertVector HilbertVector::from_functions(const GridSpec& grid, const SFunction& a, const SFunction& b) {
  return {grid, a.sample(grid), b.sample(grid)};
}

HilbertVector HilbertVector::swapped() const { return {grid_, Eigen::VectorXcd(second()), Eigen::VectorXcd(first())}; }

Complex inner(const HilbertVector& F, const HilbertVector& G) {
  if (!(F.grid() == G.grid())) throw std::invalid_argument("inner: grid mismatch");
  return F.grid().spacing() * F.data().dot(G.data());
}

double l2_norm(const HilbertVector& F) { return std::sqrt(F.grid().spacing()) * F.data().norm(); }

// ---------------------------------------------------------------------------

Eigen::VectorXcd SignedIndexMap::apply(const Eigen::VectorXcd& in) const {
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(source.size()));
  for (std::size_t i = 0; i < source.size(); ++i) {
    if (source[i] >= 0) out(static_cast<Eigen::Index>(i)) = sign[i] * in(source[i]);
  }
  return out;
}

double SignedIndexMap::discarded_mass(const Eigen::VectorXcd& in) const {
  std::vector<bool> used(static_cast<std::size_t>(in.size()), false);
  for (auto s : source) {
    if (s >= 0) used[static_cast<std::size_t>(s)] = true;
  }
  double mass = 0.0;
  for (Eigen::Index k = 0; k < in.size(); ++k) {
    if (!used[static_cast<std::size_t>(k)]) mass += std::abs(in(k));
  }
  return mass;
}

SignedIndexMap grid_unitary(const DihedralElement& g, const GridSpec& grid, ScaledAction action) {
  const auto n = static_cast<std::ptrdiff_t>(grid.size());
  std::ptrdiff_t shift = 0;
  if (g.power() != 0 && action.s != 0.0) {
    const auto k = grid.steps(action.s);
    if (!k) {
      throw MisalignmentError("translation by s = " + std::to_string(action.s) +
                              " is not a multiple of the grid spacing " + std::to_string(grid.spacing()));
    }
    shift = static_cast<std::ptrdiff_t>(g.power()) * *k;
  }
  // g^-1 . x_j = (-1)^eps (x_j + n s), i.e. grid index j + n k, reflected for
  // eps = 1; pi(g) sends output component b to input component b ^ eps.
  SignedIndexMap map;
  map.source.assign(static_cast<std::size_t>(2 * n), -1);
  map.sign.assign(static_cast<std::size_t>(2 * n), 1.0);
  for (std::ptrdiff_t block = 0; block < 2; ++block) {
    const std::ptrdiff_t source_block = g.is_reflection() ? 1 - block : block;
    for (std::ptrdiff_t j = 0; j < n; ++j) {
      const std::ptrdiff_t m = j + shift;
      if (m < 0 || m >= n) continue;
      const std::ptrdiff_t src = g.is_reflection() ? static_cast<std::ptrdiff_t>(grid.reflect(static_cast<std::size_t>(m))) : m;
      map.source[static_cast<std::size_t>(block * n + j)] = source_block * n + src;
    }
  }
  return map;
}

ActionResult<CliffFunction> act_on_cliff_function(const DihedralElement& g, const CliffFunction& F,
                                                  ScaledAction action, ActionMode mode) {
  const std::string name = g.str() + "." + F.name();
  if (mode == ActionMode::callable) {
    if (!F.has_callable()) throw std::logic_error("act_on_cliff_function: callable mode needs a callable");
    const DihedralElement g_inv = inverse(g);
    const bool swap = sign(g) < 0;
    return {CliffFunction{F.grid(),
                          [f = F.callable(), g_inv, swap, action](double x) {
                            const CliffordElement v = f(act(g_inv, x, action));
                            return swap ? grade(v) : v;
                          },
                          name},
            0.0};
  }
  const SignedIndexMap map = grid_unitary(g, F.grid(), action);
  Eigen::VectorXcd stacked(2 * F.first().size());
  stacked << F.first(), F.second();
  const Eigen::VectorXcd out = map.apply(stacked);
  const auto n = F.first().size();
  return {CliffFunction{F.grid(), out.head(n), out.tail(n), name}, map.discarded_mass(stacked)};
}

ActionResult<HilbertVector> act_on_hilbert(const DihedralElement& g, const HilbertVector& F, ScaledAction action) {
  const SignedIndexMap map = grid_unitary(g, F.grid(), action);
  return {HilbertVector{F.grid(), map.apply(F.data())}, map.discarded_mass(F.data())};
}

// ---------------------------------------------------------------------------

HermiteBasis::HermiteBasis(int size) : size_(size) {
  if (size < 1) throw std::invalid_argument("HermiteBasis: size must be positive");
}

Eigen::MatrixXd HermiteBasis::position_matrix(int n) {
  Eigen::MatrixXd X = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k + 1 < n; ++k) {
    const double c = std::sqrt((k + 1) / 2.0);
    X(k + 1, k) = c;
    X(k, k + 1) = c;
  }
  return X;
}

Eigen::MatrixXd HermiteBasis::derivative_matrix(int n) {
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k + 1 < n; ++k) {
    const double c = std::sqrt((k + 1) / 2.0);
    P(k + 1, k) = -c;  // phi_k' has -sqrt((k+1)/2) phi_{k+1}
    P(k, k + 1) = c;   // phi_{k+1}' has sqrt((k+1)/2) phi_k
  }
  return P;
}

Eigen::VectorXd HermiteBasis::evaluate(int count, double x) {
  Eigen::VectorXd phi(count);
  if (count == 0) return phi;
  phi(0) = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * x * x);
  if (count > 1) phi(1) = std::sqrt(2.0) * x * phi(0);
  for (int k = 1; k + 1 < count; ++k) {
    phi(k + 1) = std::sqrt(2.0 / (k + 1)) * x * phi(k) - std::sqrt(static_cast<double>(k) / (k + 1)) * phi(k - 1);
  }
  return phi;
}

const GridSpec& HermiteBasis::grid() const {
  if (!grid_) throw std::logic_error("HermiteBasis: not sampled on a grid");
  return *grid_;
}

const Eigen::MatrixXd& HermiteBasis::samples() const {
  if (!grid_) throw std::logic_error("HermiteBasis: not sampled on a grid");
  return samples_;
}

HermiteBasis hermite_basis(int size, const GridSpec& grid) {
  const double reach = std::sqrt(2.0 * size + 1.0) + 6.0;
  if (size < 1 || static_cast<std::size_t>(size) > grid.size() / 4) {
    throw std::invalid_argument("hermite_basis: need 1 <= M <= N/4");
  }
  if (grid.half_width() < reach) {
    throw std::invalid_argument("hermite_basis: L too small for M, need L >= sqrt(2M+1)+6");
  }
  if (std::numbers::pi / grid.spacing() < reach) {
    throw std::invalid_argument("hermite_basis: grid too coarse for M, need pi/h >= sqrt(2M+1)+6");
  }
  HermiteBasis basis(size);
  basis.grid_ = grid;
  basis.samples_.resize(static_cast<Eigen::Index>(grid.size()), size);
  for (std::size_t j = 0; j < grid.size(); ++j) {
    basis.samples_.row(static_cast<Eigen::Index>(j)) = HermiteBasis::evaluate(size, grid.point(j)).transpose();
  }
  return basis;
}

}  // namespace hklab
