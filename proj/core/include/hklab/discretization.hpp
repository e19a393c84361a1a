#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hklab/graded_core.hpp"
#include "hklab/group.hpp"

namespace hklab {

/// Uniform periodic grid x_j = -L + j h, j = 0..N-1, h = 2L/N, with -L
/// identified with L.  Reflection x -> -x maps the grid onto itself.
class GridSpec {
 public:
  GridSpec(double half_width, std::size_t samples);

  double half_width() const { return half_width_; }
  std::size_t size() const { return samples_; }
  double spacing() const { return 2.0 * half_width_ / static_cast<double>(samples_); }
  double point(std::size_t j) const;
  Eigen::VectorXd points() const;

  /// shift / h if it is an integer (to 1e-9 relative), otherwise nullopt.
  std::optional<std::ptrdiff_t> steps(double shift) const;
  /// Index of -x_j under the identification -L == L.
  std::size_t reflect(std::size_t j) const { return (samples_ - j) % samples_; }

  friend bool operator==(const GridSpec&, const GridSpec&) = default;

 private:
  double half_width_;
  std::size_t samples_;
};

/// Error raised when an exact-mode translation is not a multiple of the
/// grid spacing.
class MisalignmentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------------------
// S = C_0(R) graded by f(x) -> f(-x)
// ---------------------------------------------------------------------------

class SFunction {
 public:
  using Callable = std::function<Complex(double)>;

  SFunction(std::string name, Callable fn, Parity parity);

  /// u(x) = exp(-x^2)
  static SFunction gaussian();
  /// v(x) = x exp(-x^2)
  static SFunction odd_gaussian();
  static SFunction zero();

  Complex operator()(double x) const { return fn_(x); }
  const std::string& name() const { return name_; }
  Parity parity() const { return parity_; }
  const Callable& callable() const { return fn_; }

  Eigen::VectorXcd sample(const GridSpec& grid) const;
  /// max(|f(-L)|, |f(L)|) <= threshold
  bool vanishes_at_infinity(const GridSpec& grid, double threshold) const;

 private:
  std::string name_;
  Callable fn_;
  Parity parity_;
};

SFunction operator*(const SFunction& f, const SFunction& g);
SFunction operator+(const SFunction& f, const SFunction& g);
SFunction operator-(const SFunction& f, const SFunction& g);
SFunction operator*(Complex c, const SFunction& f);
SFunction star(const SFunction& f);
/// f(x) -> f(-x)
SFunction grade(const SFunction& f);

// ---------------------------------------------------------------------------
// C(R) = C_0(R, Cliff(R)) sampled on a grid
// ---------------------------------------------------------------------------

/// x -> (F1(x), F2(x)) in Cliff(R).  Always carries samples on its grid;
/// carries a callable when it was built from one, which is what off-grid
/// evaluation and F_t(x) = F(x/t) use.
class CliffFunction {
 public:
  using Callable = std::function<CliffordElement(double)>;

  CliffFunction(GridSpec grid, Callable fn, std::string name = "F");
  CliffFunction(GridSpec grid, Eigen::VectorXcd first, Eigen::VectorXcd second, std::string name = "F");

  /// x -> (a(x), b(x))
  static CliffFunction from_components(const GridSpec& grid, const SFunction& a, const SFunction& b);
  /// x -> (f(x), f(x)), the even copy of f.
  static CliffFunction diagonal(const GridSpec& grid, const SFunction& f);

  const GridSpec& grid() const { return grid_; }
  const Eigen::VectorXcd& first() const { return first_; }
  const Eigen::VectorXcd& second() const { return second_; }
  const std::string& name() const { return name_; }
  bool has_callable() const { return static_cast<bool>(fn_); }
  /// Off-grid evaluation; throws std::logic_error without a callable.
  CliffordElement operator()(double x) const;
  const Callable& callable() const { return fn_; }

  /// F_t(x) = F(x / t), evaluated from the callable.
  CliffFunction dilated(double t) const;
  /// Same function, resampled on another grid (needs the callable).
  CliffFunction resampled(const GridSpec& grid) const;

  Parity parity(double tol = 0.0) const;

 private:
  GridSpec grid_;
  Callable fn_;
  Eigen::VectorXcd first_;
  Eigen::VectorXcd second_;
  std::string name_;
};

CliffFunction operator*(const CliffFunction& F, const CliffFunction& G);
CliffFunction operator+(const CliffFunction& F, const CliffFunction& G);
CliffFunction operator-(const CliffFunction& F, const CliffFunction& G);
CliffFunction operator*(Complex c, const CliffFunction& F);
CliffFunction star(const CliffFunction& F);
/// Pointwise Cliff grading (F1, F2) -> (F2, F1).
CliffFunction grade(const CliffFunction& F);

/// max_j max(|F1(x_j)|, |F2(x_j)|)
double sup_norm(const CliffFunction& F);

// ---------------------------------------------------------------------------
// H = L^2(R) + L^2(R)
// ---------------------------------------------------------------------------

/// Samples of (F1, F2) stacked into one vector of length 2N.
class HilbertVector {
 public:
  HilbertVector(GridSpec grid, Eigen::VectorXcd stacked);
  HilbertVector(GridSpec grid, const Eigen::VectorXcd& first, const Eigen::VectorXcd& second);

  static HilbertVector from_functions(const GridSpec& grid, const SFunction& a, const SFunction& b);

  const GridSpec& grid() const { return grid_; }
  const Eigen::VectorXcd& data() const { return data_; }
  auto first() const { return data_.head(static_cast<Eigen::Index>(grid_.size())); }
  auto second() const { return data_.tail(static_cast<Eigen::Index>(grid_.size())); }

  /// Component swap (F1, F2) -> (F2, F1).
  HilbertVector swapped() const;

 private:
  GridSpec grid_;
  Eigen::VectorXcd data_;
};

/// h * sum_j (conj F1 G1 + conj F2 G2)
Complex inner(const HilbertVector& F, const HilbertVector& G);
double l2_norm(const HilbertVector& F);

// ---------------------------------------------------------------------------
// Group actions on grid data
// ---------------------------------------------------------------------------

/// Partial signed permutation: out[i] = sign[i] * in[source[i]], or 0 when
/// source[i] is negative.
struct SignedIndexMap {
  std::vector<std::ptrdiff_t> source;
  std::vector<double> sign;

  std::size_t size() const { return source.size(); }
  Eigen::VectorXcd apply(const Eigen::VectorXcd& in) const;
  /// Sum of |in[k]| over indices k that no output reads.
  double discarded_mass(const Eigen::VectorXcd& in) const;
};

/// The map F -> g._s F on stacked 2N samples:
/// (g.F)(x) = pi(g) F(g^-1 ._s x), with pi(sigma) the component swap and
/// samples shifted off the grid zero-extended.  Throws MisalignmentError if
/// s is not a multiple of h (only when g translates).
SignedIndexMap grid_unitary(const DihedralElement& g, const GridSpec& grid, ScaledAction action);

enum class ActionMode {
  /// Permute samples; requires grid-aligned translations.
  exact,
  /// Re-evaluate the callable at g^-1 . x_j.
  callable,
};

template <class T>
struct ActionResult {
  T value;
  /// Sum of |samples| pushed off the grid (always 0 in callable mode).
  double boundary_mass = 0.0;
};

ActionResult<CliffFunction> act_on_cliff_function(const DihedralElement& g, const CliffFunction& F,
                                                  ScaledAction action, ActionMode mode = ActionMode::exact);
ActionResult<HilbertVector> act_on_hilbert(const DihedralElement& g, const HilbertVector& F, ScaledAction action);

// ---------------------------------------------------------------------------
// Hermite functions
// ---------------------------------------------------------------------------

/// Orthonormal Hermite functions phi_k(x) = H_k(x) e^{-x^2/2} / norm with the
/// exact recurrences
///   x phi_k  = sqrt((k+1)/2) phi_{k+1} + sqrt(k/2) phi_{k-1}
///   phi_k'   = sqrt(k/2) phi_{k-1} - sqrt((k+1)/2) phi_{k+1}.
class HermiteBasis {
 public:
  /// Coefficient tables only, no grid samples.
  explicit HermiteBasis(int size);

  int size() const { return size_; }

  /// <phi_j, x phi_k> for j, k < n (tridiagonal, symmetric).
  static Eigen::MatrixXd position_matrix(int n);
  /// <phi_j, phi_k'> for j, k < n (tridiagonal, antisymmetric).
  static Eigen::MatrixXd derivative_matrix(int n);

  /// phi_0 .. phi_{count-1} at x by the three-term recurrence.
  static Eigen::VectorXd evaluate(int count, double x);

  bool is_sampled() const { return grid_.has_value(); }
  const GridSpec& grid() const;
  /// N x M matrix, column k holds phi_k on the grid.
  const Eigen::MatrixXd& samples() const;

 private:
  friend HermiteBasis hermite_basis(int size, const GridSpec& grid);

  int size_;
  std::optional<GridSpec> grid_;
  Eigen::MatrixXd samples_;
};

/// Samples phi_0..phi_{M-1} on the grid.  Requires M <= N/4 and both the
/// domain and the Nyquist frequency to clear the turning point:
/// L >= sqrt(2M+1) + 6 and pi/h >= sqrt(2M+1) + 6.
HermiteBasis hermite_basis(int size, const GridSpec& grid);

}  // namespace hklab
