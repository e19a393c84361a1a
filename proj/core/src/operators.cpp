#include "hklab/operators.hpp"

#include <fftw3.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hklab/backend.hpp"
#include "linalg.hpp"

namespace hklab {

namespace {

template <class F>
decltype(auto) visit_data(F&& f, const std::variant<Eigen::MatrixXd, Eigen::MatrixXcd>& d) {
  return std::visit(std::forward<F>(f), d);
}

// Gaussian tails far out on the grid produce entries whose products are
// subnormal, which slows BLAS and LAPACK kernels several-fold.  Entries
// below 1e-150 are far under every tolerance used here and are dropped.
constexpr double tiny = 1e-150;

void flush_tiny(Eigen::MatrixXd& m) {
  for (double& x : m.reshaped())
    if (std::abs(x) < tiny) x = 0.0;
}

void flush_tiny(Eigen::VectorXcd& v) {
  for (Complex& z : v) {
    if (std::abs(z.real()) < tiny) z.real(0.0);
    if (std::abs(z.imag()) < tiny) z.imag(0.0);
  }
}

void flush_tiny(Eigen::MatrixXcd& m) {
  for (Complex& z : m.reshaped()) {
    if (std::abs(z.real()) < tiny) z.real(0.0);
    if (std::abs(z.imag()) < tiny) z.imag(0.0);
  }
}

bool all_real(const Eigen::VectorXcd& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (v(i).imag() != 0.0) return false;
  return true;
}

}  // namespace

DenseOperator::DenseOperator(Eigen::MatrixXd m, Parity parity) : parity_(parity) {
  flush_tiny(m);
  data_ = std::move(m);
}

DenseOperator::DenseOperator(Eigen::MatrixXcd m, Parity parity) : parity_(parity) {
  flush_tiny(m);
  data_ = std::move(m);
}

DenseOperator DenseOperator::identity(Eigen::Index n) {
  return DenseOperator(Eigen::MatrixXd(Eigen::MatrixXd::Identity(n, n)), Parity::even);
}

DenseOperator DenseOperator::zero(Eigen::Index n) {
  // zero is both even and odd; tag it even so sums keep the other tag
  return DenseOperator(Eigen::MatrixXd(Eigen::MatrixXd::Zero(n, n)), Parity::even);
}

Eigen::Index DenseOperator::rows() const {
  return visit_data([](const auto& m) { return m.rows(); }, data_);
}

Eigen::Index DenseOperator::cols() const {
  return visit_data([](const auto& m) { return m.cols(); }, data_);
}

const Eigen::MatrixXd& DenseOperator::real() const {
  if (!is_real()) throw std::logic_error("DenseOperator::real: operator has complex entries");
  return std::get<Eigen::MatrixXd>(data_);
}

Eigen::MatrixXcd DenseOperator::to_complex() const {
  if (is_real()) return std::get<Eigen::MatrixXd>(data_).cast<Complex>();
  return std::get<Eigen::MatrixXcd>(data_);
}

DenseOperator DenseOperator::with_parity(Parity p) const {
  DenseOperator out = *this;
  out.parity_ = p;
  return out;
}

DenseOperator DenseOperator::adjoint() const {
  if (is_real()) return DenseOperator(Eigen::MatrixXd(real().transpose()), parity_);
  return DenseOperator(Eigen::MatrixXcd(std::get<Eigen::MatrixXcd>(data_).adjoint()), parity_);
}

Complex DenseOperator::trace() const {
  return visit_data([](const auto& m) { return Complex(m.trace()); }, data_);
}

Complex DenseOperator::operator()(Eigen::Index i, Eigen::Index j) const {
  return visit_data([i, j](const auto& m) { return Complex(m(i, j)); }, data_);
}

Eigen::VectorXcd DenseOperator::apply(const Eigen::VectorXcd& v) const {
  if (v.size() != cols()) throw std::invalid_argument("DenseOperator::apply: size mismatch");
  if (is_real()) {
    const auto& m = real();
    Eigen::VectorXcd out(m.rows());
    out.real() = m * v.real();
    out.imag() = m * v.imag();
    return out;
  }
  return std::get<Eigen::MatrixXcd>(data_) * v;
}

HilbertVector DenseOperator::apply(const HilbertVector& v) const { return HilbertVector(v.grid(), apply(v.data())); }

DenseOperator DenseOperator::scale_columns(const Eigen::VectorXcd& d) const {
  if (d.size() != cols()) throw std::invalid_argument("DenseOperator::scale_columns: size mismatch");
  if (is_real() && all_real(d)) {
    return DenseOperator(Eigen::MatrixXd(real() * d.real().asDiagonal()), Parity::mixed);
  }
  return DenseOperator(Eigen::MatrixXcd(to_complex() * d.asDiagonal()), Parity::mixed);
}

DenseOperator DenseOperator::compress(const std::vector<Eigen::Index>& indices) const {
  return visit_data(
      [&](const auto& m) {
        using M = std::decay_t<decltype(m)>;
        return DenseOperator(M(m(indices, indices)), parity_);
      },
      data_);
}

DenseOperator DenseOperator::restrict_columns(const std::vector<Eigen::Index>& indices) const {
  return visit_data(
      [&](const auto& m) {
        using M = std::decay_t<decltype(m)>;
        return DenseOperator(M(m(Eigen::all, indices)), Parity::mixed);
      },
      data_);
}

double DenseOperator::max_abs() const {
  return visit_data([](const auto& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }, data_);
}

bool DenseOperator::is_diagonal() const {
  return visit_data(
      [](const auto& m) {
        for (Eigen::Index j = 0; j < m.cols(); ++j)
          for (Eigen::Index i = 0; i < m.rows(); ++i)
            if (i != j && m(i, j) != 0.0) return false;
        return true;
      },
      data_);
}

DenseOperator operator+(const DenseOperator& a, const DenseOperator& b) {
  const Parity p = combine_sum(a.parity_, b.parity_);
  if (a.is_real() && b.is_real()) return DenseOperator(Eigen::MatrixXd(a.real() + b.real()), p);
  return DenseOperator(Eigen::MatrixXcd(a.to_complex() + b.to_complex()), p);
}

DenseOperator operator-(const DenseOperator& a, const DenseOperator& b) {
  const Parity p = combine_sum(a.parity_, b.parity_);
  if (a.is_real() && b.is_real()) return DenseOperator(Eigen::MatrixXd(a.real() - b.real()), p);
  return DenseOperator(Eigen::MatrixXcd(a.to_complex() - b.to_complex()), p);
}

DenseOperator operator*(const DenseOperator& a, const DenseOperator& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("DenseOperator: product size mismatch");
  require_blas_backend();
  const Parity p = a.parity_ * b.parity_;
  if (a.is_real() && b.is_real()) return DenseOperator(Eigen::MatrixXd(a.real() * b.real()), p);
  if (a.is_real()) {
    // two real products are cheaper than one complex product
    const auto& bc = std::get<Eigen::MatrixXcd>(b.data_);
    Eigen::MatrixXcd out(a.rows(), b.cols());
    out.real() = a.real() * bc.real();
    out.imag() = a.real() * bc.imag();
    return DenseOperator(std::move(out), p);
  }
  if (b.is_real()) {
    const auto& ac = std::get<Eigen::MatrixXcd>(a.data_);
    Eigen::MatrixXcd out(a.rows(), b.cols());
    out.real() = ac.real() * b.real();
    out.imag() = ac.imag() * b.real();
    return DenseOperator(std::move(out), p);
  }
  return DenseOperator(Eigen::MatrixXcd(std::get<Eigen::MatrixXcd>(a.data_) * std::get<Eigen::MatrixXcd>(b.data_)),
                       p);
}

DenseOperator operator*(Complex c, const DenseOperator& a) {
  if (a.is_real() && c.imag() == 0.0) return DenseOperator(Eigen::MatrixXd(c.real() * a.real()), a.parity_);
  return DenseOperator(Eigen::MatrixXcd(c * a.to_complex()), a.parity_);
}

double operator_norm(const DenseOperator& op) {
  if (op.rows() == 0 || op.cols() == 0) return 0.0;
  if (op.rows() == op.cols() && op.is_diagonal()) return op.max_abs();
  if (op.is_real()) return linalg::largest_singular_value(op.real());
  return linalg::largest_singular_value(op.to_complex());
}

Eigen::VectorXd compactness_profile(const DenseOperator& op, Eigen::Index k) {
  Eigen::VectorXd sv = op.is_real() ? linalg::singular_values(op.real()) : linalg::singular_values(op.to_complex());
  if (k < sv.size()) sv.conservativeResize(k);
  return sv;
}

DenseOperator conjugate(const DenseOperator& op, const SignedIndexMap& left, const SignedIndexMap& right) {
  // (L A R)_{ij} = sum_k l_i A_{src_i, k} R_{k j},  R_{k j} = r_k [src'_k = j]
  const auto n_out = static_cast<Eigen::Index>(left.size());
  const auto n_in = static_cast<Eigen::Index>(right.size());
  if (op.rows() != n_in || op.cols() != n_in) throw std::invalid_argument("conjugate: size mismatch");
  auto run = [&](const auto& a) {
    using M = std::decay_t<decltype(a)>;
    M la = M::Zero(n_out, a.cols());
    for (Eigen::Index i = 0; i < n_out; ++i) {
      const auto s = left.source[static_cast<std::size_t>(i)];
      if (s >= 0) la.row(i) = left.sign[static_cast<std::size_t>(i)] * a.row(s);
    }
    M out = M::Zero(n_out, n_in);
    for (Eigen::Index k = 0; k < n_in; ++k) {
      const auto j = right.source[static_cast<std::size_t>(k)];
      if (j >= 0) out.col(j) += right.sign[static_cast<std::size_t>(k)] * la.col(k);
    }
    return DenseOperator(std::move(out), op.parity());
  };
  if (op.is_real()) return run(op.real());
  return run(op.to_complex());
}

Parity classify_parity(const DenseOperator& op, const SignedIndexMap& grading, double tol) {
  const DenseOperator g = conjugate(op.with_parity(Parity::mixed), grading, grading);
  const double scale = std::max(1.0, op.max_abs());
  if ((g - op).max_abs() <= tol * scale) return Parity::even;
  if ((g + op).max_abs() <= tol * scale) return Parity::odd;
  return Parity::mixed;
}

// ---------------------------------------------------------------------------

SignedIndexMap swap_grading(const GridSpec& grid) {
  const auto n = static_cast<std::ptrdiff_t>(grid.size());
  SignedIndexMap map;
  map.source.resize(static_cast<std::size_t>(2 * n));
  map.sign.assign(static_cast<std::size_t>(2 * n), 1.0);
  for (std::ptrdiff_t j = 0; j < n; ++j) {
    map.source[static_cast<std::size_t>(j)] = n + j;
    map.source[static_cast<std::size_t>(n + j)] = j;
  }
  return map;
}

Eigen::MatrixXd spectral_derivative_matrix(const GridSpec& grid) {
  const auto n = static_cast<Eigen::Index>(grid.size());
  const double L = grid.half_width();
  const double pi = std::numbers::pi;
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  // periodic cotangent formula on [0, 2 pi) rescaled to period 2L
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i == j) continue;
      const Eigen::Index k = i - j;
      const double sgn = (k % 2 == 0) ? 1.0 : -1.0;
      d(i, j) = (pi / L) * 0.5 * sgn / std::tan(pi * static_cast<double>(k) / static_cast<double>(n));
    }
  }
  // exact antisymmetry
  const Eigen::MatrixXd anti = 0.5 * (d - d.transpose());
  return anti;
}

Eigen::VectorXd fourier_wavenumbers(const GridSpec& grid) {
  const auto n = static_cast<Eigen::Index>(grid.size());
  const double base = std::numbers::pi / grid.half_width();
  Eigen::VectorXd xi(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index m = (k <= n / 2) ? k : k - n;
    xi(k) = (k == n / 2) ? 0.0 : base * static_cast<double>(m);
  }
  return xi;
}

DenseOperator dirac_matrix(const GridSpec& grid) {
  const auto n = static_cast<Eigen::Index>(grid.size());
  const Eigen::MatrixXd d = spectral_derivative_matrix(grid);
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  out.topRightCorner(n, n) = d;
  out.bottomLeftCorner(n, n) = -d;
  return DenseOperator(std::move(out), Parity::odd);
}

DenseOperator clifford_mult_matrix(const GridSpec& grid) {
  const Eigen::VectorXd x = grid.points();
  const auto n = x.size();
  Eigen::VectorXd diag(2 * n);
  diag << x, -x;
  return DenseOperator(Eigen::MatrixXd(diag.asDiagonal()), Parity::odd);
}

DenseOperator mult_operator(const CliffFunction& F) {
  const auto n = F.first().size();
  Eigen::VectorXcd diag(2 * n);
  diag << F.first(), F.second();
  const Parity p = F.parity(0.0);
  if (all_real(diag)) return DenseOperator(Eigen::MatrixXd(diag.real().asDiagonal()), p);
  return DenseOperator(Eigen::MatrixXcd(diag.asDiagonal()), p);
}

DenseOperator conjugate_action(const DihedralElement& g, const DenseOperator& op, const GridSpec& grid,
                               ScaledAction action) {
  const SignedIndexMap u = grid_unitary(g, grid, action);
  const SignedIndexMap u_inv = grid_unitary(inverse(g), grid, action);
  return conjugate(op, u, u_inv);
}

// ---------------------------------------------------------------------------

DenseOperator SpectralData::reconstruct(const Eigen::VectorXcd& input) const {
  if (input.size() != size()) throw std::invalid_argument("SpectralData::reconstruct: size mismatch");
  Eigen::VectorXcd values = input;
  flush_tiny(values);
  if (std::holds_alternative<Eigen::MatrixXd>(eigenvectors)) {
    const auto& v = std::get<Eigen::MatrixXd>(eigenvectors);
    const Eigen::MatrixXd vt = v.transpose();
    Eigen::MatrixXd scaled = v * values.real().asDiagonal();
    Eigen::MatrixXd re = scaled * vt;
    if (all_real(values)) return DenseOperator(std::move(re), Parity::mixed);
    scaled = v * values.imag().asDiagonal();
    Eigen::MatrixXcd out(re.rows(), re.cols());
    out.real() = re;
    out.imag() = scaled * vt;
    return DenseOperator(std::move(out), Parity::mixed);
  }
  const auto& v = std::get<Eigen::MatrixXcd>(eigenvectors);
  const Eigen::MatrixXcd scaled = v * values.asDiagonal();
  const Eigen::MatrixXcd vh = v.adjoint();
  return DenseOperator(Eigen::MatrixXcd(scaled * vh), Parity::mixed);
}

double self_adjointness_defect(const DenseOperator& op) {
  if (op.rows() != op.cols()) throw std::invalid_argument("self_adjointness_defect: square operator required");
  return (op - op.adjoint()).max_abs();
}

SpectralData spectral_decomposition(const DenseOperator& op, double tol) {
  const double defect = self_adjointness_defect(op);
  if (defect > tol * std::max(1.0, op.max_abs())) {
    throw std::invalid_argument("spectral_decomposition: operator is not self-adjoint (defect " +
                                std::to_string(defect) + ")");
  }
  SpectralData out;
  if (op.is_real()) {
    auto e = linalg::symmetric_eigen(op.real());
    out.eigenvalues = std::move(e.values);
    out.eigenvectors = std::move(e.vectors);
  } else {
    auto e = linalg::hermitian_eigen(op.to_complex());
    out.eigenvalues = std::move(e.values);
    out.eigenvectors = std::move(e.vectors);
  }
  return out;
}

DenseOperator functional_calculus(const SpectralData& spectrum, const ScalarFunction& f, double t) {
  if (!(t > 0.0)) throw std::invalid_argument("functional_calculus: t must be positive");
  Eigen::VectorXcd values(spectrum.size());
  for (Eigen::Index i = 0; i < values.size(); ++i) values(i) = f(spectrum.eigenvalues(i) / t);
  return spectrum.reconstruct(values);
}

DenseOperator functional_calculus(const DenseOperator& op, const ScalarFunction& f, double t) {
  return functional_calculus(spectral_decomposition(op), f, t);
}

DenseOperator nyquist_projector(const GridSpec& grid) {
  const auto n = static_cast<Eigen::Index>(grid.size());
  Eigen::VectorXd mode(n);
  for (Eigen::Index j = 0; j < n; ++j) mode(j) = (j % 2 == 0) ? 1.0 : -1.0;
  const Eigen::MatrixXd block = mode * mode.transpose() / static_cast<double>(n);
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  out.topLeftCorner(n, n) = block;
  out.bottomRightCorner(n, n) = block;
  return DenseOperator(std::move(out), Parity::even);
}

DenseOperator dirac_calculus(const SpectralData& dirac_spectrum, const GridSpec& grid, const ScalarFunction& f,
                             double t, NyquistMode mode) {
  DenseOperator out = functional_calculus(dirac_spectrum, f, t);
  if (mode == NyquistMode::zero_wavenumber) return out;
  // the Nyquist pair lies in ker D, where the plain calculus applies f(0)
  const Complex at_zero = f(0.0);
  if (at_zero == Complex(0.0)) return out;
  return out - at_zero * nyquist_projector(grid);
}

DenseOperator heat_multiplier_route(const GridSpec& grid, double t, NyquistMode mode) {
  if (!(t > 0.0)) throw std::invalid_argument("heat_multiplier_route: t must be positive");
  const auto n = static_cast<Eigen::Index>(grid.size());
  const Eigen::VectorXd xi = fourier_wavenumbers(grid);
  // The operator is a circulant convolution; its first column is the
  // inverse transform of the multiplier.
  fftw_complex* buf = fftw_alloc_complex(static_cast<std::size_t>(n));
  fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double q = xi(k) / t;
    buf[k][0] = (k == n / 2 && mode == NyquistMode::discarded) ? 0.0 : std::exp(-q * q);
    buf[k][1] = 0.0;
  }
  fftw_execute(plan);
  Eigen::VectorXd column(n);
  for (Eigen::Index k = 0; k < n; ++k) column(k) = buf[k][0] / static_cast<double>(n);
  fftw_destroy_plan(plan);
  fftw_free(buf);

  Eigen::MatrixXd block(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) block(i, j) = column((i - j + n) % n);
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  out.topLeftCorner(n, n) = block;
  out.bottomRightCorner(n, n) = block;
  return DenseOperator(std::move(out), Parity::even);
}

}  // namespace hklab
