#pragma once

#include <functional>
#include <map>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hklab/graded_core.hpp"
#include "hklab/group.hpp"
#include "hklab/operators.hpp"

namespace hklab {

/// A finite-dimensional graded algebra with a D_inf action by graded
/// *-automorphisms.
class DihedralAlgebra {
 public:
  using Action = std::function<Eigen::MatrixXcd(const DihedralElement&, const Eigen::MatrixXcd&)>;

  DihedralAlgebra(std::shared_ptr<const FiniteGradedAlgebra> algebra, Action action, std::string action_name);

  /// C with the trivial action.
  static DihedralAlgebra scalars();
  /// Cliff(R) with g . a = grading^{eps(g)}(a): sigma acts by the swap.
  static DihedralAlgebra clifford();
  /// M_2(C) with grading diag(1, -1) and the trivial action.
  static DihedralAlgebra block_matrices();

  const FiniteGradedAlgebra& algebra() const { return *algebra_; }
  const std::shared_ptr<const FiniteGradedAlgebra>& algebra_ptr() const { return algebra_; }
  std::string name() const { return algebra_->name() + "[" + action_name_ + "]"; }
  int dimension() const { return algebra_->dimension(); }

  Eigen::MatrixXcd act(const DihedralElement& g, const Eigen::MatrixXcd& a) const { return action_(g, a); }

  /// Left multiplication by a on A, in the basis orthonormal for tr(x^* y).
  Eigen::MatrixXcd left_regular(const Eigen::MatrixXcd& a) const;

 private:
  std::shared_ptr<const FiniteGradedAlgebra> algebra_;
  Action action_;
  std::string action_name_;
  std::vector<Eigen::MatrixXcd> orthonormal_;
};

/// Finitely supported A-valued function on D_inf.  Coefficients are stored
/// as matrices of the underlying matrix algebra; exact zeros are dropped.
class GroupAlgebraElement {
 public:
  explicit GroupAlgebraElement(std::shared_ptr<const DihedralAlgebra> algebra);

  /// a delta_g
  static GroupAlgebraElement delta(std::shared_ptr<const DihedralAlgebra> algebra, const DihedralElement& g,
                                   const Eigen::MatrixXcd& a);
  /// 1_A delta_g
  static GroupAlgebraElement delta(std::shared_ptr<const DihedralAlgebra> algebra, const DihedralElement& g);

  const DihedralAlgebra& algebra() const { return *algebra_; }
  const std::shared_ptr<const DihedralAlgebra>& algebra_ptr() const { return algebra_; }
  const std::map<DihedralElement, Eigen::MatrixXcd>& support() const { return values_; }

  /// f(g), zero off the support.
  Eigen::MatrixXcd operator()(const DihedralElement& g) const;
  /// Adds a at g.
  void accumulate(const DihedralElement& g, const Eigen::MatrixXcd& a);

  /// max |n| over the support (0 for the zero element).
  std::int64_t radius() const;

  friend GroupAlgebraElement operator+(const GroupAlgebraElement& a, const GroupAlgebraElement& b);
  friend GroupAlgebraElement operator-(const GroupAlgebraElement& a, const GroupAlgebraElement& b);
  friend GroupAlgebraElement operator*(Complex c, const GroupAlgebraElement& a);

 private:
  void prune();

  std::shared_ptr<const DihedralAlgebra> algebra_;
  std::map<DihedralElement, Eigen::MatrixXcd> values_;
};

/// (f1 * f2)(g) = sum_h f1(h) (h . f2(h^-1 g))
GroupAlgebraElement convolve(const GroupAlgebraElement& f1, const GroupAlgebraElement& f2);
/// f^*(g) = g . (f(g^-1)^*)
GroupAlgebraElement involution(const GroupAlgebraElement& f);
/// Pointwise grading.
GroupAlgebraElement grade(const GroupAlgebraElement& f);
/// max over g of the C*-norm of f1(g) - f2(g).
double coefficient_distance(const GroupAlgebraElement& f1, const GroupAlgebraElement& f2);

/// Random element with support in {rho^n sigma^eps : |n| <= radius} and
/// coordinates uniform in [-1, 1] + i[-1, 1].
GroupAlgebraElement random_element(std::shared_ptr<const DihedralAlgebra> algebra, int radius, int terms,
                                   std::mt19937_64& rng);

/// l^2({rho^n sigma^eps : |n| <= R'}) tensor A.  Basis index
/// ((n + R') * 2 + eps) * dim A + k.
struct TruncatedL2 {
  int radius = 0;
  int algebra_dimension = 1;

  Eigen::Index dimension() const { return 2 * (2 * static_cast<Eigen::Index>(radius) + 1) * algebra_dimension; }
  /// Index of basis vector (g, k), or -1 outside the truncation.
  Eigen::Index index(const DihedralElement& g, int k) const;
  /// Basis indices with |n| <= floor(R'/2).
  std::vector<Eigen::Index> interior() const;
};

/// rep(f) = sum_g pi(f(g)) lambda_g with (pi(a) xi)(h) = (h^-1 . a) xi(h) and
/// lambda_g delta_h = delta_{gh}; terms leaving the truncation are dropped.
/// Throws std::invalid_argument when 2 radius(f) > R'.
DenseOperator regular_representation(const GroupAlgebraElement& f, const TruncatedL2& trunc);

/// op restricted to the interior: all rows, interior columns.
DenseOperator interior_restriction(const DenseOperator& op, const TruncatedL2& trunc);
/// P op P with P the interior projection.
DenseOperator interior_compression(const DenseOperator& op, const TruncatedL2& trunc);

struct NormEstimate {
  int radius;
  double norm;
  double increment;
};

/// ||P rep(f) P|| for each truncation radius; radii must increase.
std::vector<NormEstimate> reduced_norm_estimate(const GroupAlgebraElement& f, const std::vector<int>& radii);

}  // namespace hklab
