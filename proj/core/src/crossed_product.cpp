#include "hklab/crossed_product.hpp"

#include <cstdlib>
#include <stdexcept>

namespace hklab {

DihedralAlgebra::DihedralAlgebra(std::shared_ptr<const FiniteGradedAlgebra> algebra, Action action,
                                 std::string action_name)
    : algebra_(std::move(algebra)), action_(std::move(action)), action_name_(std::move(action_name)) {
  for (int k = 0; k < algebra_->dimension(); ++k) {
    const Eigen::MatrixXcd& b = algebra_->basis(k);
    orthonormal_.push_back(b / b.norm());
  }
}

DihedralAlgebra DihedralAlgebra::scalars() {
  return {FiniteGradedAlgebra::scalars(), [](const DihedralElement&, const Eigen::MatrixXcd& a) { return a; },
          "trivial"};
}

DihedralAlgebra DihedralAlgebra::clifford() {
  auto alg = FiniteGradedAlgebra::clifford();
  return {alg,
          [alg](const DihedralElement& g, const Eigen::MatrixXcd& a) {
            return g.is_reflection() ? alg->grade(a) : a;
          },
          "sign"};
}

DihedralAlgebra DihedralAlgebra::block_matrices() {
  return {FiniteGradedAlgebra::block_matrices(1, 1),
          [](const DihedralElement&, const Eigen::MatrixXcd& a) { return a; }, "trivial"};
}

Eigen::MatrixXcd DihedralAlgebra::left_regular(const Eigen::MatrixXcd& a) const {
  const int d = dimension();
  Eigen::MatrixXcd out(d, d);
  for (int k = 0; k < d; ++k) {
    const Eigen::MatrixXcd image = a * orthonormal_[static_cast<std::size_t>(k)];
    for (int j = 0; j < d; ++j) out(j, k) = (orthonormal_[static_cast<std::size_t>(j)].adjoint() * image).trace();
  }
  return out;
}

// ---------------------------------------------------------------------------

GroupAlgebraElement::GroupAlgebraElement(std::shared_ptr<const DihedralAlgebra> algebra)
    : algebra_(std::move(algebra)) {
  if (!algebra_) throw std::invalid_argument("GroupAlgebraElement: null algebra");
}

GroupAlgebraElement GroupAlgebraElement::delta(std::shared_ptr<const DihedralAlgebra> algebra,
                                               const DihedralElement& g, const Eigen::MatrixXcd& a) {
  GroupAlgebraElement f(std::move(algebra));
  f.accumulate(g, a);
  return f;
}

GroupAlgebraElement GroupAlgebraElement::delta(std::shared_ptr<const DihedralAlgebra> algebra,
                                               const DihedralElement& g) {
  const Eigen::MatrixXcd unit = algebra->algebra().unit();
  return delta(std::move(algebra), g, unit);
}

Eigen::MatrixXcd GroupAlgebraElement::operator()(const DihedralElement& g) const {
  if (auto it = values_.find(g); it != values_.end()) return it->second;
  const int m = algebra_->algebra().matrix_size();
  return Eigen::MatrixXcd::Zero(m, m);
}

void GroupAlgebraElement::accumulate(const DihedralElement& g, const Eigen::MatrixXcd& a) {
  auto [it, inserted] = values_.try_emplace(g, a);
  if (!inserted) it->second += a;
  if (it->second.isZero(0.0)) values_.erase(it);
}

void GroupAlgebraElement::prune() {
  std::erase_if(values_, [](const auto& kv) { return kv.second.isZero(0.0); });
}

std::int64_t GroupAlgebraElement::radius() const {
  std::int64_t r = 0;
  for (const auto& [g, a] : values_) r = std::max(r, std::abs(g.power()));
  return r;
}

namespace {

void require_same(const GroupAlgebraElement& a, const GroupAlgebraElement& b) {
  if (a.algebra_ptr() != b.algebra_ptr()) throw std::invalid_argument("group algebra elements over different algebras");
}

}  // namespace

GroupAlgebraElement operator+(const GroupAlgebraElement& a, const GroupAlgebraElement& b) {
  require_same(a, b);
  GroupAlgebraElement out = a;
  for (const auto& [g, v] : b.values_) out.accumulate(g, v);
  return out;
}

GroupAlgebraElement operator-(const GroupAlgebraElement& a, const GroupAlgebraElement& b) {
  require_same(a, b);
  GroupAlgebraElement out = a;
  for (const auto& [g, v] : b.values_) out.accumulate(g, -v);
  return out;
}

GroupAlgebraElement operator*(Complex c, const GroupAlgebraElement& a) {
  GroupAlgebraElement out = a;
  for (auto& [g, v] : out.values_) v *= c;
  out.prune();
  return out;
}

GroupAlgebraElement convolve(const GroupAlgebraElement& f1, const GroupAlgebraElement& f2) {
  require_same(f1, f2);
  const DihedralAlgebra& A = f1.algebra();
  GroupAlgebraElement out(f1.algebra_ptr());
  for (const auto& [h, a] : f1.support()) {
    for (const auto& [k, b] : f2.support()) out.accumulate(h * k, a * A.act(h, b));
  }
  return out;
}

GroupAlgebraElement involution(const GroupAlgebraElement& f) {
  const DihedralAlgebra& A = f.algebra();
  GroupAlgebraElement out(f.algebra_ptr());
  for (const auto& [k, a] : f.support()) {
    const DihedralElement g = inverse(k);
    out.accumulate(g, A.act(g, a.adjoint()));
  }
  return out;
}

GroupAlgebraElement grade(const GroupAlgebraElement& f) {
  GroupAlgebraElement out(f.algebra_ptr());
  for (const auto& [g, a] : f.support()) out.accumulate(g, f.algebra().algebra().grade(a));
  return out;
}

double coefficient_distance(const GroupAlgebraElement& f1, const GroupAlgebraElement& f2) {
  const GroupAlgebraElement diff = f1 - f2;
  double worst = 0.0;
  for (const auto& [g, a] : diff.support()) worst = std::max(worst, matrix_norm(a));
  return worst;
}

GroupAlgebraElement random_element(std::shared_ptr<const DihedralAlgebra> algebra, int radius, int terms,
                                   std::mt19937_64& rng) {
  std::uniform_int_distribution<int> power(-radius, radius);
  std::uniform_int_distribution<int> flip(0, 1);
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  const int d = algebra->dimension();
  GroupAlgebraElement f(algebra);
  for (int i = 0; i < terms; ++i) {
    const DihedralElement g(power(rng), flip(rng) == 1);
    Eigen::VectorXcd c(d);
    for (int k = 0; k < d; ++k) {
      const double re = coord(rng);
      const double im = coord(rng);
      c(k) = Complex(re, im);
    }
    f.accumulate(g, algebra->algebra().element(c));
  }
  return f;
}

// ---------------------------------------------------------------------------

Eigen::Index TruncatedL2::index(const DihedralElement& g, int k) const {
  if (std::abs(g.power()) > radius) return -1;
  return ((g.power() + radius) * 2 + g.eps()) * algebra_dimension + k;
}

std::vector<Eigen::Index> TruncatedL2::interior() const {
  std::vector<Eigen::Index> out;
  const int half = radius / 2;
  for (int n = -half; n <= half; ++n)
    for (int e = 0; e < 2; ++e)
      for (int k = 0; k < algebra_dimension; ++k) out.push_back(index(DihedralElement(n, e == 1), k));
  return out;
}

DenseOperator regular_representation(const GroupAlgebraElement& f, const TruncatedL2& trunc) {
  const DihedralAlgebra& A = f.algebra();
  if (trunc.algebra_dimension != A.dimension()) throw std::invalid_argument("regular_representation: dimension");
  if (2 * f.radius() > trunc.radius) {
    throw std::invalid_argument("regular_representation: support radius " + std::to_string(f.radius()) +
                                " exceeds half the truncation radius " + std::to_string(trunc.radius));
  }
  const auto n = trunc.dimension();
  const int d = A.dimension();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n, n);
  // pi(a) lambda_g delta_h (x) xi = delta_{gh} (x) ((gh)^-1 . a) xi
  for (const auto& [g, a] : f.support()) {
    for (int m = -trunc.radius; m <= trunc.radius; ++m) {
      for (int e = 0; e < 2; ++e) {
        const DihedralElement h(m, e == 1);
        const DihedralElement gh = g * h;
        const Eigen::Index row = trunc.index(gh, 0);
        if (row < 0) continue;
        const Eigen::Index col = trunc.index(h, 0);
        out.block(row, col, d, d) += A.left_regular(A.act(inverse(gh), a));
      }
    }
  }
  if (out.imag().isZero(0.0)) return DenseOperator(Eigen::MatrixXd(out.real()), Parity::mixed);
  return DenseOperator(std::move(out), Parity::mixed);
}

DenseOperator interior_restriction(const DenseOperator& op, const TruncatedL2& trunc) {
  return op.restrict_columns(trunc.interior());
}

DenseOperator interior_compression(const DenseOperator& op, const TruncatedL2& trunc) {
  return op.compress(trunc.interior());
}

std::vector<NormEstimate> reduced_norm_estimate(const GroupAlgebraElement& f, const std::vector<int>& radii) {
  std::vector<NormEstimate> out;
  double previous = 0.0;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (i > 0 && radii[i] <= radii[i - 1]) throw std::invalid_argument("reduced_norm_estimate: radii must increase");
    const TruncatedL2 trunc{radii[i], f.algebra().dimension()};
    const double norm = operator_norm(interior_compression(regular_representation(f, trunc), trunc));
    out.push_back({radii[i], norm, i == 0 ? 0.0 : norm - previous});
    previous = norm;
  }
  return out;
}

}  // namespace hklab
