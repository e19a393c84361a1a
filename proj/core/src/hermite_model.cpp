#include "hklab/hermite_model.hpp"

#include <cmath>
#include <stdexcept>

namespace hklab {

namespace {

// Columns: embedding of e_k^+ (k < M) and e_k^- (k < M-1) into the
// component basis {(phi_k, 0)} u {(0, phi_k)}, k < n.
Eigen::MatrixXd embedding(int m, int n) {
  const double r = 1.0 / std::sqrt(2.0);
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(2 * n, 2 * m - 1);
  for (int k = 0; k < m; ++k) {
    q(k, k) = r;
    q(n + k, k) = r;
  }
  for (int k = 0; k + 1 < m; ++k) {
    q(k, m + k) = r;
    q(n + k, m + k) = -r;
  }
  return q;
}

// d/dx compressed to the span of phi_0..phi_{n-1}, times i (Hermitian).
SpectralData momentum_spectrum(int n) {
  const Eigen::MatrixXcd p = Complex(0.0, 1.0) * HermiteBasis::derivative_matrix(n).cast<Complex>();
  return spectral_decomposition(DenseOperator(Eigen::MatrixXcd(p)));
}

}  // namespace

HermiteModel::HermiteModel(const HermiteBasis& basis) : size_(basis.size()) {
  if (size_ < 2) throw std::invalid_argument("HermiteModel: need at least two Hermite functions");
  // B (F1, F2) = (x F1 + F2', -x F2 - F1'); one extra row of the tables
  // lets the embedding check see leakage out of the subspace.
  const int n = size_ + 1;
  const Eigen::MatrixXd x = HermiteBasis::position_matrix(n);
  const Eigen::MatrixXd d = HermiteBasis::derivative_matrix(n);
  Eigen::MatrixXd full(2 * n, 2 * n);
  full << x, d, -d, -x;
  const Eigen::MatrixXd q = embedding(size_, n);
  const Eigen::MatrixXd bq = full * q;
  Eigen::MatrixXd b = q.transpose() * bq;
  invariance_defect_ = (bq - q * b).cwiseAbs().maxCoeff();
  b = (0.5 * (b + b.transpose())).eval();
  oscillator_ = DenseOperator(std::move(b), Parity::odd);
  spectrum_ = spectral_decomposition(oscillator_);

  const auto dim = dimension();
  grading_.source.resize(static_cast<std::size_t>(dim));
  grading_.sign.resize(static_cast<std::size_t>(dim));
  for (Eigen::Index i = 0; i < dim; ++i) {
    grading_.source[static_cast<std::size_t>(i)] = i;
    grading_.sign[static_cast<std::size_t>(i)] = i < size_ ? 1.0 : -1.0;
  }
}

Eigen::VectorXcd HermiteModel::from_components(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) const {
  if (a.size() != size_ || b.size() != size_) throw std::invalid_argument("HermiteModel::from_components: size");
  const double r = 1.0 / std::sqrt(2.0);
  Eigen::VectorXcd out(dimension());
  out.head(size_) = r * (a + b);
  out.tail(size_ - 1) = r * (a - b).head(size_ - 1);
  return out;
}

Eigen::VectorXcd HermiteModel::to_components(const Eigen::VectorXcd& coords) const {
  if (coords.size() != dimension()) throw std::invalid_argument("HermiteModel::to_components: size");
  const double r = 1.0 / std::sqrt(2.0);
  Eigen::VectorXcd minus = Eigen::VectorXcd::Zero(size_);
  minus.head(size_ - 1) = coords.tail(size_ - 1);
  Eigen::VectorXcd out(2 * size_);
  out.head(size_) = r * (coords.head(size_) + minus);
  out.tail(size_) = r * (coords.head(size_) - minus);
  return out;
}

DenseOperator HermiteModel::unitary(const DihedralElement& g, ScaledAction action) const {
  const auto dim = dimension();
  // sigma: e_k^+ -> (-1)^k e_k^+, e_k^- -> -(-1)^k e_k^-
  Eigen::VectorXd reflect(dim);
  for (int k = 0; k < size_; ++k) reflect(k) = (k % 2 == 0) ? 1.0 : -1.0;
  for (int k = 0; k + 1 < size_; ++k) reflect(size_ + k) = (k % 2 == 0) ? -1.0 : 1.0;
  const Eigen::MatrixXd sigma_part = g.is_reflection() ? Eigen::MatrixXd(reflect.asDiagonal())
                                                       : Eigen::MatrixXd(Eigen::MatrixXd::Identity(dim, dim));
  const double shift = static_cast<double>(g.power()) * action.s;
  if (shift == 0.0) return DenseOperator(sigma_part, Parity::even);

  // (rho^n F)(x) = F(x + n s) = exp(n s d/dx) F; d/dx preserves each family
  auto translation = [shift](int n) {
    return functional_calculus(momentum_spectrum(n), [shift](double lambda) { return std::exp(Complex(0.0, -shift * lambda)); })
        .to_complex();
  };
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
  rho.topLeftCorner(size_, size_) = translation(size_);
  rho.bottomRightCorner(size_ - 1, size_ - 1) = translation(size_ - 1);
  return DenseOperator(Eigen::MatrixXcd(rho * sigma_part), Parity::even);
}

DenseOperator HermiteModel::conjugate_action(const DihedralElement& g, const DenseOperator& op,
                                             ScaledAction action) const {
  const DenseOperator u = unitary(g, action);
  return (u * op * u.adjoint()).with_parity(op.parity());
}

DenseOperator oscillator_matrix(const HermiteBasis& basis) { return HermiteModel(basis).oscillator(); }

}  // namespace hklab
