#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "hklab/discretization.hpp"
#include "hklab/hermite_model.hpp"
#include "hklab/operators.hpp"

namespace hklab {

// ---------------------------------------------------------------------------
// beta_t(f)(x) = (f(x/t), f(-x/t))
// ---------------------------------------------------------------------------

/// Sampling window for beta: [-w t, w t] with a fixed sample count, so the
/// resolution in the rescaled variable x/t does not depend on t.
struct BetaWindow {
  double half_width = 8.0;
  std::size_t samples = std::size_t{1} << 15;
};

GridSpec beta_grid(double t, const BetaWindow& window = {});

/// beta_t(f) as a callable Cliff function sampled on `grid`.
CliffFunction beta(double t, const SFunction& f, const GridSpec& grid);
CliffFunction beta(double t, const SFunction& f, const BetaWindow& window = {});

/// sup_x |beta_t(f)(x) - (g ._s beta_t(f))(x)| over the window samples.
double beta_defect(double t, const SFunction& f, const DihedralElement& g, ScaledAction action,
                   const BetaWindow& window = {});

// ---------------------------------------------------------------------------
// alpha_t(f (x) F) = f(D/t) M_{F_t}
// ---------------------------------------------------------------------------

/// Functional calculus of the grid Dirac operator with one cached
/// eigendecomposition and a small cache of f(D/t) keyed by (name, t).
/// Safe to share between threads.
class DiracCalculus {
 public:
  explicit DiracCalculus(GridSpec grid, std::size_t cache_limit = 12);

  const GridSpec& grid() const { return grid_; }
  const DenseOperator& dirac() const { return dirac_; }
  const SpectralData& spectrum() const;
  /// f(D/t) with the Nyquist pair discarded, tagged with the parity of f.
  DenseOperator operator()(const SFunction& f, double t) const;

 private:
  GridSpec grid_;
  DenseOperator dirac_;
  std::size_t cache_limit_;
  mutable std::once_flag spectrum_once_;
  mutable SpectralData spectrum_;
  mutable std::mutex cache_mutex_;
  mutable std::map<std::pair<std::string, double>, DenseOperator> cache_;
};

/// Elementary tensors f (x) F with complex coefficients, the algebraic
/// tensor product S (x) C(R) with the graded product
///   (f1 (x) F1)(f2 (x) F2) = (-1)^{deg F1 deg f2} f1 f2 (x) F1 F2.
class SCTensor {
 public:
  struct Term {
    Complex coefficient;
    SFunction f;
    CliffFunction F;
  };

  SCTensor() = default;
  SCTensor(const SFunction& f, const CliffFunction& F, Complex coefficient = 1.0);

  const std::vector<Term>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  /// Splits every term into homogeneous pieces.
  SCTensor homogeneous() const;

  friend SCTensor operator+(const SCTensor& a, const SCTensor& b);
  friend SCTensor operator*(const SCTensor& a, const SCTensor& b);
  friend SCTensor operator*(Complex c, const SCTensor& a);

 private:
  std::vector<Term> terms_;
};

/// (f (x) F)* = (-1)^{deg f deg F} f* (x) F*
SCTensor star(const SCTensor& a);
SCTensor grade(const SCTensor& a);
/// g ._s (f (x) F) = f (x) (g ._s F); the action on S is trivial.
SCTensor act(const DihedralElement& g, const SCTensor& a, ScaledAction action);

DenseOperator alpha(const DiracCalculus& calc, double t, const SFunction& f, const CliffFunction& F);
DenseOperator alpha(const DiracCalculus& calc, double t, const SCTensor& a);

/// ||alpha_t(f (x) g._s F) - g._{ts} alpha_t(f (x) F)||; throws
/// MisalignmentError when t s is not a grid multiple.
double alpha_defect(const DiracCalculus& calc, double t, const SFunction& f, const CliffFunction& F,
                    const DihedralElement& g, ScaledAction action = {});

/// ||M_{(g._s F)_t} - g._{ts} M_{F_t}||
double mult_identity_residual(double t, const CliffFunction& F, const DihedralElement& g,
                              ScaledAction action = {});

// ---------------------------------------------------------------------------
// gamma_t(f) = f(B/t) and the homotopy to the kernel projection
// ---------------------------------------------------------------------------

class KernelMultiplicityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

DenseOperator gamma(const HermiteModel& model, double t, const SFunction& f);

/// Projection onto ker B.  Throws KernelMultiplicityError unless exactly
/// one eigenvalue has |lambda| <= tol.
DenseOperator kernel_projection(const HermiteModel& model, double tol = 1e-8);
DenseOperator kernel_projection(const HermiteBasis& basis, double tol = 1e-8);

/// H(f, s) = f(B/s) for s > 0 and f(0) p for s = 0.
DenseOperator homotopy_H(const HermiteModel& model, const SFunction& f, double s);

/// max over nonzero eigenvalues of |f(lambda/s)| (0 at s = 0).
double homotopy_gap_bound(const HermiteModel& model, const SFunction& f, double s, double tol = 1e-8);

}  // namespace hklab
