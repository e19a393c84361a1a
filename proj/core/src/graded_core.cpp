#include "hklab/graded_core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hklab {

Parity operator*(Parity a, Parity b) {
  if (a == Parity::mixed || b == Parity::mixed) return Parity::mixed;
  return a == b ? Parity::even : Parity::odd;
}

Parity combine_sum(Parity a, Parity b) { return a == b ? a : Parity::mixed; }

const char* to_string(Parity p) {
  switch (p) {
    case Parity::even:
      return "even";
    case Parity::odd:
      return "odd";
    case Parity::mixed:
      return "mixed";
  }
  return "mixed";
}

// ---------------------------------------------------------------------------

CliffordElement clifford_mul(const CliffordElement& a, const CliffordElement& b) {
  return {a.z * b.z, a.w * b.w};
}

CliffordElement clifford_embed(double x) { return {x, -x}; }

CliffordElement operator+(const CliffordElement& a, const CliffordElement& b) { return {a.z + b.z, a.w + b.w}; }
CliffordElement operator-(const CliffordElement& a, const CliffordElement& b) { return {a.z - b.z, a.w - b.w}; }
CliffordElement operator*(Complex c, const CliffordElement& a) { return {c * a.z, c * a.w}; }
CliffordElement operator*(const CliffordElement& a, const CliffordElement& b) { return clifford_mul(a, b); }

CliffordElement grade(const CliffordElement& a) { return {a.w, a.z}; }
CliffordElement star(const CliffordElement& a) { return {std::conj(a.z), std::conj(a.w)}; }
double norm(const CliffordElement& a) { return std::max(std::abs(a.z), std::abs(a.w)); }

Parity parity(const CliffordElement& a) {
  if (a.z == a.w) return Parity::even;
  if (a.z == -a.w) return Parity::odd;
  return Parity::mixed;
}

// ---------------------------------------------------------------------------

FiniteGradedAlgebra::FiniteGradedAlgebra(std::string name, std::vector<Eigen::MatrixXcd> basis,
                                         std::vector<Parity> parities)
    : name_(std::move(name)), basis_(std::move(basis)), parities_(std::move(parities)) {
  if (basis_.empty() || basis_.size() != parities_.size()) {
    throw std::invalid_argument("FiniteGradedAlgebra: basis and parities must be non-empty and match");
  }
  const auto d = basis_.front().rows();
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    if (basis_[i].rows() != d || basis_[i].cols() != d) {
      throw std::invalid_argument("FiniteGradedAlgebra: basis matrices must share one square size");
    }
    if (parities_[i] == Parity::mixed) {
      throw std::invalid_argument("FiniteGradedAlgebra: basis must be homogeneous");
    }
    for (std::size_t k = 0; k < i; ++k) {
      if (std::abs((basis_[k].adjoint() * basis_[i]).trace()) > 1e-12) {
        throw std::invalid_argument("FiniteGradedAlgebra: basis must be Frobenius-orthogonal");
      }
    }
    basis_norms_sq_.push_back(basis_[i].squaredNorm());
  }

  const int n = dimension();
  products_.reserve(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      const Eigen::MatrixXcd prod = basis_[i] * basis_[k];
      Eigen::VectorXcd c = coordinates(prod);
      if ((element(c) - prod).norm() > 1e-12) {
        throw std::invalid_argument("FiniteGradedAlgebra: span of the basis is not closed under products");
      }
      products_.push_back(std::move(c));
    }
    stars_.push_back(coordinates(basis_[i].adjoint()));
  }
}

std::shared_ptr<const FiniteGradedAlgebra> FiniteGradedAlgebra::clifford() {
  Eigen::MatrixXcd one = Eigen::MatrixXcd::Identity(2, 2);
  Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(2, 2);
  e(0, 0) = 1.0;
  e(1, 1) = -1.0;
  return std::make_shared<FiniteGradedAlgebra>("Cliff(R)", std::vector{one, e},
                                               std::vector{Parity::even, Parity::odd});
}

std::shared_ptr<const FiniteGradedAlgebra> FiniteGradedAlgebra::block_matrices(int n0, int n1) {
  if (n0 < 0 || n1 < 0 || n0 + n1 == 0) throw std::invalid_argument("block_matrices: bad block sizes");
  const int d = n0 + n1;
  std::vector<Eigen::MatrixXcd> basis;
  std::vector<Parity> parities;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      Eigen::MatrixXcd unit = Eigen::MatrixXcd::Zero(d, d);
      unit(i, j) = 1.0;
      basis.push_back(unit);
      parities.push_back(((i < n0) == (j < n0)) ? Parity::even : Parity::odd);
    }
  }
  return std::make_shared<FiniteGradedAlgebra>("M" + std::to_string(d) + "(" + std::to_string(n0) + "|" +
                                                   std::to_string(n1) + ")",
                                               std::move(basis), std::move(parities));
}

std::shared_ptr<const FiniteGradedAlgebra> FiniteGradedAlgebra::scalars() {
  return std::make_shared<FiniteGradedAlgebra>("C", std::vector<Eigen::MatrixXcd>{Eigen::MatrixXcd::Identity(1, 1)},
                                               std::vector{Parity::even});
}

Eigen::VectorXcd FiniteGradedAlgebra::coordinates(const Eigen::MatrixXcd& a) const {
  Eigen::VectorXcd c(dimension());
  for (int i = 0; i < dimension(); ++i) {
    c(i) = (basis_[i].adjoint() * a).trace() / basis_norms_sq_[i];
  }
  return c;
}

Eigen::MatrixXcd FiniteGradedAlgebra::element(const Eigen::VectorXcd& coords) const {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(matrix_size(), matrix_size());
  for (int i = 0; i < dimension(); ++i) out += coords(i) * basis_[i];
  return out;
}

Eigen::MatrixXcd FiniteGradedAlgebra::unit() const {
  return Eigen::MatrixXcd::Identity(matrix_size(), matrix_size());
}

Eigen::MatrixXcd FiniteGradedAlgebra::grade(const Eigen::MatrixXcd& a) const {
  Eigen::VectorXcd c = coordinates(a);
  for (int i = 0; i < dimension(); ++i) {
    if (degree(i) == 1) c(i) = -c(i);
  }
  return element(c);
}

Parity FiniteGradedAlgebra::parity(const Eigen::MatrixXcd& a, double tol) const {
  const Eigen::VectorXcd c = coordinates(a);
  double even = 0.0;
  double odd = 0.0;
  for (int i = 0; i < dimension(); ++i) (degree(i) == 1 ? odd : even) += std::abs(c(i));
  if (odd <= tol) return Parity::even;
  if (even <= tol) return Parity::odd;
  return Parity::mixed;
}

double matrix_norm(const Eigen::MatrixXcd& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
  return svd.singularValues()(0);
}

// ---------------------------------------------------------------------------

GradedTensorElement::GradedTensorElement(std::shared_ptr<const FiniteGradedAlgebra> left,
                                         std::shared_ptr<const FiniteGradedAlgebra> right)
    : GradedTensorElement(left, right, Eigen::MatrixXcd::Zero(left->dimension(), right->dimension())) {}

GradedTensorElement::GradedTensorElement(std::shared_ptr<const FiniteGradedAlgebra> left,
                                         std::shared_ptr<const FiniteGradedAlgebra> right,
                                         Eigen::MatrixXcd coefficients)
    : left_(std::move(left)), right_(std::move(right)), coefficients_(std::move(coefficients)) {
  if (coefficients_.rows() != left_->dimension() || coefficients_.cols() != right_->dimension()) {
    throw std::invalid_argument("GradedTensorElement: coefficient shape does not match the factors");
  }
}

GradedTensorElement GradedTensorElement::elementary(std::shared_ptr<const FiniteGradedAlgebra> left,
                                                    const Eigen::MatrixXcd& a,
                                                    std::shared_ptr<const FiniteGradedAlgebra> right,
                                                    const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd c = left->coordinates(a) * right->coordinates(b).transpose();
  return {std::move(left), std::move(right), std::move(c)};
}

Parity GradedTensorElement::parity(double tol) const {
  double even = 0.0;
  double odd = 0.0;
  for (int i = 0; i < left_->dimension(); ++i) {
    for (int j = 0; j < right_->dimension(); ++j) {
      ((left_->degree(i) + right_->degree(j)) % 2 == 1 ? odd : even) += std::abs(coefficients_(i, j));
    }
  }
  if (odd <= tol) return Parity::even;
  if (even <= tol) return Parity::odd;
  return Parity::mixed;
}

namespace {

void require_same_factors(const GradedTensorElement& x, const GradedTensorElement& y) {
  if (x.left().name() != y.left().name() || x.right().name() != y.right().name()) {
    throw std::invalid_argument("graded tensor: mismatched factor algebras");
  }
}

}  // namespace

GradedTensorElement operator+(const GradedTensorElement& x, const GradedTensorElement& y) {
  require_same_factors(x, y);
  return {x.left_, x.right_, x.coefficients_ + y.coefficients_};
}

GradedTensorElement operator-(const GradedTensorElement& x, const GradedTensorElement& y) {
  require_same_factors(x, y);
  return {x.left_, x.right_, x.coefficients_ - y.coefficients_};
}

GradedTensorElement operator*(Complex c, const GradedTensorElement& x) {
  return {x.left_, x.right_, c * x.coefficients_};
}

GradedTensorElement graded_tensor_mul(const GradedTensorElement& x, const GradedTensorElement& y) {
  require_same_factors(x, y);
  const auto& A = x.left();
  const auto& B = x.right();
  const int na = A.dimension();
  const int nb = B.dimension();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(na, nb);
  for (int i1 = 0; i1 < na; ++i1) {
    for (int j1 = 0; j1 < nb; ++j1) {
      const Complex c1 = x.coefficients()(i1, j1);
      if (c1 == Complex{}) continue;
      for (int i2 = 0; i2 < na; ++i2) {
        const double sign = (B.degree(j1) * A.degree(i2)) % 2 == 1 ? -1.0 : 1.0;
        for (int j2 = 0; j2 < nb; ++j2) {
          const Complex c2 = y.coefficients()(i2, j2);
          if (c2 == Complex{}) continue;
          out += (sign * c1 * c2) * (A.product_coordinates(i1, i2) * B.product_coordinates(j1, j2).transpose());
        }
      }
    }
  }
  return {x.left_ptr(), x.right_ptr(), std::move(out)};
}

GradedTensorElement graded_tensor_star(const GradedTensorElement& x) {
  const auto& A = x.left();
  const auto& B = x.right();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(A.dimension(), B.dimension());
  for (int i = 0; i < A.dimension(); ++i) {
    for (int j = 0; j < B.dimension(); ++j) {
      const Complex c = x.coefficients()(i, j);
      if (c == Complex{}) continue;
      const double sign = (A.degree(i) * B.degree(j)) % 2 == 1 ? -1.0 : 1.0;
      out += (sign * std::conj(c)) * (A.star_coordinates(i) * B.star_coordinates(j).transpose());
    }
  }
  return {x.left_ptr(), x.right_ptr(), std::move(out)};
}

GradedTensorElement grade(const GradedTensorElement& x) {
  Eigen::MatrixXcd out = x.coefficients();
  for (int i = 0; i < x.left().dimension(); ++i) {
    for (int j = 0; j < x.right().dimension(); ++j) {
      if ((x.left().degree(i) + x.right().degree(j)) % 2 == 1) out(i, j) = -out(i, j);
    }
  }
  return {x.left_ptr(), x.right_ptr(), std::move(out)};
}

double coefficient_distance(const GradedTensorElement& x, const GradedTensorElement& y) {
  require_same_factors(x, y);
  return (x.coefficients() - y.coefficients()).cwiseAbs().maxCoeff();
}

bool approx_equal(const GradedTensorElement& x, const GradedTensorElement& y, double tol) {
  return coefficient_distance(x, y) <= tol;
}

}  // namespace hklab
