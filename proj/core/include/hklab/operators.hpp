#pragma once

#include <functional>
#include <variant>

#include <Eigen/Dense>

#include "hklab/discretization.hpp"
#include "hklab/graded_core.hpp"
#include "hklab/group.hpp"

namespace hklab {

/// Dense matrix operator with a grading tag.  Entries are stored as real
/// doubles while they are real; mixing with a complex operand promotes.
class DenseOperator {
 public:
  DenseOperator() = default;
  explicit DenseOperator(Eigen::MatrixXd m, Parity parity = Parity::mixed);
  explicit DenseOperator(Eigen::MatrixXcd m, Parity parity = Parity::mixed);

  static DenseOperator identity(Eigen::Index n);
  static DenseOperator zero(Eigen::Index n);

  Eigen::Index rows() const;
  Eigen::Index cols() const;
  bool is_real() const { return std::holds_alternative<Eigen::MatrixXd>(data_); }
  /// Throws std::logic_error if the operator holds complex entries.
  const Eigen::MatrixXd& real() const;
  Eigen::MatrixXcd to_complex() const;

  Parity parity() const { return parity_; }
  DenseOperator with_parity(Parity p) const;

  DenseOperator adjoint() const;
  Complex trace() const;
  Complex operator()(Eigen::Index i, Eigen::Index j) const;
  Eigen::VectorXcd apply(const Eigen::VectorXcd& v) const;
  HilbertVector apply(const HilbertVector& v) const;

  /// this * diag(d)
  DenseOperator scale_columns(const Eigen::VectorXcd& d) const;
  /// Principal submatrix on the given indices.
  DenseOperator compress(const std::vector<Eigen::Index>& indices) const;
  /// Column submatrix (all rows).
  DenseOperator restrict_columns(const std::vector<Eigen::Index>& indices) const;

  /// Largest |entry|.
  double max_abs() const;
  bool is_diagonal() const;

  friend DenseOperator operator+(const DenseOperator& a, const DenseOperator& b);
  friend DenseOperator operator-(const DenseOperator& a, const DenseOperator& b);
  friend DenseOperator operator*(const DenseOperator& a, const DenseOperator& b);
  friend DenseOperator operator*(Complex c, const DenseOperator& a);

 private:
  std::variant<Eigen::MatrixXd, Eigen::MatrixXcd> data_;
  Parity parity_ = Parity::mixed;
};

/// Operator norm (largest singular value).  Diagonal operators take the
/// max |entry| shortcut.
double operator_norm(const DenseOperator& op);

/// Singular values sorted descending, truncated to k.
Eigen::VectorXd compactness_profile(const DenseOperator& op, Eigen::Index k);

/// Signed-permutation conjugation U op V, with U and V given as index maps.
DenseOperator conjugate(const DenseOperator& op, const SignedIndexMap& left, const SignedIndexMap& right);

/// Parity of op relative to a grading G (a signed permutation with G^2 = 1):
/// even if G op G = op, odd if G op G = -op, to the given tolerance.
Parity classify_parity(const DenseOperator& op, const SignedIndexMap& grading, double tol = 1e-10);

// ---------------------------------------------------------------------------
// Grid model of H = L^2 + L^2
// ---------------------------------------------------------------------------

/// Component swap on stacked 2N samples.
SignedIndexMap swap_grading(const GridSpec& grid);

/// Fourier spectral differentiation on the periodic grid (N x N, exactly
/// antisymmetric; the Nyquist wavenumber is treated as 0).
Eigen::MatrixXd spectral_derivative_matrix(const GridSpec& grid);

/// Wavenumbers xi_k = 2 pi k / (2L) in FFT order, Nyquist set to 0 (the
/// derivative matrix's convention).
Eigen::VectorXd fourier_wavenumbers(const GridSpec& grid);

/// D(F1, F2) = (F2', -F1') as [[0, d], [-d, 0]]: self-adjoint, odd.
DenseOperator dirac_matrix(const GridSpec& grid);
/// (C F)(x) = (x F1(x), -x F2(x)): self-adjoint, odd.
DenseOperator clifford_mult_matrix(const GridSpec& grid);
/// Multiplication by F(x) in Cliff(R), componentwise.
DenseOperator mult_operator(const CliffFunction& F);

/// U_g op U_{g^-1} with U_g the grid action at scale s.  Throws
/// MisalignmentError for translations that are not grid multiples.
DenseOperator conjugate_action(const DihedralElement& g, const DenseOperator& op, const GridSpec& grid,
                               ScaledAction action);

// ---------------------------------------------------------------------------
// Spectral calculus
// ---------------------------------------------------------------------------

struct SpectralData {
  /// Real eigenvalues, ascending.
  Eigen::VectorXd eigenvalues;
  /// Orthonormal eigenvectors (columns), real when the operator is real.
  std::variant<Eigen::MatrixXd, Eigen::MatrixXcd> eigenvectors;

  Eigen::Index size() const { return eigenvalues.size(); }
  /// V diag(values) V^*
  DenseOperator reconstruct(const Eigen::VectorXcd& values) const;
};

using ScalarFunction = std::function<Complex(double)>;

/// Self-adjointness defect max|A - A^*|.
double self_adjointness_defect(const DenseOperator& op);

/// Eigendecomposition of a self-adjoint operator; throws
/// std::invalid_argument when max|A - A^*| > tol * max(1, max|A|).
SpectralData spectral_decomposition(const DenseOperator& op, double tol = 1e-10);

/// f(op / t) = V f(Lambda / t) V^*.
DenseOperator functional_calculus(const SpectralData& spectrum, const ScalarFunction& f, double t = 1.0);
DenseOperator functional_calculus(const DenseOperator& op, const ScalarFunction& f, double t = 1.0);

/// How the Nyquist mode (-1)^j enters a calculus of D.  The Fourier
/// derivative annihilates it, so D has a spurious kernel spanned by the
/// Nyquist mode in each component.
enum class NyquistMode {
  /// Excluded from the discrete Hilbert space: f(D/t) is the calculus of D on
  /// the complement of the Nyquist pair (multiplier 0 there).
  discarded,
  /// Kept as wavenumber 0 (plain matrix function of D).
  zero_wavenumber,
};

/// Orthogonal projection onto the Nyquist pair {((-1)^j, 0), (0, (-1)^j)}.
DenseOperator nyquist_projector(const GridSpec& grid);

/// f(D/t) from the eigendecomposition of dirac_matrix(grid), with the
/// Nyquist pair treated according to `mode`.
DenseOperator dirac_calculus(const SpectralData& dirac_spectrum, const GridSpec& grid, const ScalarFunction& f,
                             double t, NyquistMode mode = NyquistMode::discarded);

/// exp(-(D/t)^2) computed independently of any eigensolver: each component
/// is transformed with FFTW, multiplied by exp(-(xi/t)^2) and transformed
/// back.  Agrees with dirac_calculus(..., u, t, mode).
DenseOperator heat_multiplier_route(const GridSpec& grid, double t, NyquistMode mode = NyquistMode::discarded);

}  // namespace hklab
