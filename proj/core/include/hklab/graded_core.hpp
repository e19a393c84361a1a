#pragma once

#include <complex>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace hklab {

using Complex = std::complex<double>;

/// Grading degree of an element; `mixed` means not homogeneous.
enum class Parity { even, odd, mixed };

/// Degree of a product of homogeneous factors.
Parity operator*(Parity a, Parity b);
/// Degree of a sum: equal degrees survive, anything else is mixed.
Parity combine_sum(Parity a, Parity b);
const char* to_string(Parity p);

// ---------------------------------------------------------------------------
// Cliff(R) as C + C
// ---------------------------------------------------------------------------

/// The element (z, w) of Cliff(R) = C + C.  The grading swaps the two
/// components: even elements have z == w, odd ones z == -w.
struct CliffordElement {
  Complex z{};
  Complex w{};

  static constexpr CliffordElement unit() { return {1.0, 1.0}; }
  /// Degree-one generator e = (1, -1); e^2 = unit.
  static constexpr CliffordElement generator() { return {1.0, -1.0}; }

  friend bool operator==(const CliffordElement&, const CliffordElement&) = default;
};

CliffordElement clifford_mul(const CliffordElement& a, const CliffordElement& b);
/// C(x) = (x, -x): self-adjoint and odd.
CliffordElement clifford_embed(double x);

CliffordElement operator+(const CliffordElement& a, const CliffordElement& b);
CliffordElement operator-(const CliffordElement& a, const CliffordElement& b);
CliffordElement operator*(Complex c, const CliffordElement& a);
CliffordElement operator*(const CliffordElement& a, const CliffordElement& b);

CliffordElement grade(const CliffordElement& a);
CliffordElement star(const CliffordElement& a);
/// C*-norm of C + C: max(|z|, |w|).
double norm(const CliffordElement& a);
Parity parity(const CliffordElement& a);

/// Splits a into (a0, a1) with a0 = (a + grading(a))/2 and
/// a1 = (a - grading(a))/2, so grading fixes a0 and negates a1.
template <class T, class Grading>
std::pair<T, T> even_odd_decompose(const T& a, Grading&& grading) {
  const T graded = grading(a);
  return {0.5 * (a + graded), 0.5 * (a - graded)};
}

// ---------------------------------------------------------------------------
// Finite-dimensional graded *-algebras
// ---------------------------------------------------------------------------

/// A graded *-subalgebra of M_d(C) with a homogeneous basis that is
/// orthogonal for the Frobenius inner product.  Elements are d x d matrices;
/// the grading multiplies the odd coordinates by -1.
class FiniteGradedAlgebra {
 public:
  FiniteGradedAlgebra(std::string name, std::vector<Eigen::MatrixXcd> basis,
                      std::vector<Parity> parities);

  /// Cliff(R) as diagonal 2x2 matrices, basis {1 = (1,1), e = (1,-1)}.
  static std::shared_ptr<const FiniteGradedAlgebra> clifford();
  /// M_{n0+n1}(C) with the first n0 basis vectors even and the rest odd:
  /// diagonal blocks are even, off-diagonal blocks odd.
  static std::shared_ptr<const FiniteGradedAlgebra> block_matrices(int n0, int n1);
  /// C with the trivial grading.
  static std::shared_ptr<const FiniteGradedAlgebra> scalars();

  const std::string& name() const { return name_; }
  int dimension() const { return static_cast<int>(basis_.size()); }
  int matrix_size() const { return static_cast<int>(basis_.front().rows()); }
  const Eigen::MatrixXcd& basis(int i) const { return basis_[i]; }
  Parity basis_parity(int i) const { return parities_[i]; }
  /// 0 for even basis elements, 1 for odd ones.
  int degree(int i) const { return parities_[i] == Parity::odd ? 1 : 0; }

  Eigen::VectorXcd coordinates(const Eigen::MatrixXcd& a) const;
  Eigen::MatrixXcd element(const Eigen::VectorXcd& coords) const;
  Eigen::MatrixXcd unit() const;

  Eigen::MatrixXcd grade(const Eigen::MatrixXcd& a) const;
  Parity parity(const Eigen::MatrixXcd& a, double tol = 1e-12) const;

  /// coordinates(basis(i) * basis(k))
  const Eigen::VectorXcd& product_coordinates(int i, int k) const { return products_[i * dimension() + k]; }
  /// coordinates(basis(i)^*)
  const Eigen::VectorXcd& star_coordinates(int i) const { return stars_[i]; }

 private:
  std::string name_;
  std::vector<Eigen::MatrixXcd> basis_;
  std::vector<Parity> parities_;
  std::vector<double> basis_norms_sq_;
  std::vector<Eigen::VectorXcd> products_;
  std::vector<Eigen::VectorXcd> stars_;
};

/// C*-norm (largest singular value) of a matrix-algebra element.
double matrix_norm(const Eigen::MatrixXcd& a);

// ---------------------------------------------------------------------------
// Graded tensor product A (x) B of finite-dimensional factors
// ---------------------------------------------------------------------------

/// Sum of elementary tensors basis_A(i) (x) basis_B(j), stored as the dense
/// coefficient matrix c(i, j).
class GradedTensorElement {
 public:
  GradedTensorElement(std::shared_ptr<const FiniteGradedAlgebra> left,
                      std::shared_ptr<const FiniteGradedAlgebra> right);
  GradedTensorElement(std::shared_ptr<const FiniteGradedAlgebra> left,
                      std::shared_ptr<const FiniteGradedAlgebra> right, Eigen::MatrixXcd coefficients);

  /// a (x) b for arbitrary (not necessarily homogeneous) a and b.
  static GradedTensorElement elementary(std::shared_ptr<const FiniteGradedAlgebra> left, const Eigen::MatrixXcd& a,
                                        std::shared_ptr<const FiniteGradedAlgebra> right,
                                        const Eigen::MatrixXcd& b);

  const FiniteGradedAlgebra& left() const { return *left_; }
  const FiniteGradedAlgebra& right() const { return *right_; }
  const std::shared_ptr<const FiniteGradedAlgebra>& left_ptr() const { return left_; }
  const std::shared_ptr<const FiniteGradedAlgebra>& right_ptr() const { return right_; }
  const Eigen::MatrixXcd& coefficients() const { return coefficients_; }

  /// Degree d(a) + d(b) mod 2 if homogeneous, else mixed.
  Parity parity(double tol = 1e-12) const;

  friend GradedTensorElement operator+(const GradedTensorElement& x, const GradedTensorElement& y);
  friend GradedTensorElement operator-(const GradedTensorElement& x, const GradedTensorElement& y);
  friend GradedTensorElement operator*(Complex c, const GradedTensorElement& x);

 private:
  std::shared_ptr<const FiniteGradedAlgebra> left_;
  std::shared_ptr<const FiniteGradedAlgebra> right_;
  Eigen::MatrixXcd coefficients_;
};

/// (a1 (x) b1)(a2 (x) b2) = (-1)^{d(b1) d(a2)} a1 a2 (x) b1 b2, extended
/// bilinearly.  Throws std::invalid_argument if the factor algebras differ.
GradedTensorElement graded_tensor_mul(const GradedTensorElement& x, const GradedTensorElement& y);
/// (a (x) b)^* = (-1)^{d(a) d(b)} a^* (x) b^*, extended antilinearly.
GradedTensorElement graded_tensor_star(const GradedTensorElement& x);
/// Grading (-1)^{d(a) + d(b)} on elementary tensors.
GradedTensorElement grade(const GradedTensorElement& x);

/// Largest coefficient difference.
double coefficient_distance(const GradedTensorElement& x, const GradedTensorElement& y);
bool approx_equal(const GradedTensorElement& x, const GradedTensorElement& y, double tol = 1e-12);

}  // namespace hklab
