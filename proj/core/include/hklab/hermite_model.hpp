#pragma once

#include <Eigen/Dense>

#include "hklab/discretization.hpp"
#include "hklab/operators.hpp"

namespace hklab {

/// The oscillator B = C + D on the span of
///   e_k^+ = (phi_k,  phi_k)/sqrt2,  k = 0..M-1
///   e_k^- = (phi_k, -phi_k)/sqrt2,  k = 0..M-2
/// which B maps into itself: B e_k^+ = sqrt(2k) e_{k-1}^-,
/// B e_k^- = sqrt(2k+2) e_{k+1}^+.  Coordinates list the e^+ family first.
class HermiteModel {
 public:
  explicit HermiteModel(const HermiteBasis& basis);

  int hermite_size() const { return size_; }
  /// 2M - 1
  Eigen::Index dimension() const { return 2 * static_cast<Eigen::Index>(size_) - 1; }

  /// B assembled from the position and derivative recurrences.
  const DenseOperator& oscillator() const { return oscillator_; }
  const SpectralData& spectrum() const { return spectrum_; }
  /// Swap grading: +1 on e^+, -1 on e^-.
  const SignedIndexMap& grading() const { return grading_; }
  /// max |(1 - Q Q^T) B_full Q| for the invariant-subspace embedding Q.
  double invariance_defect() const { return invariance_defect_; }

  /// Coordinates of (sum_k a_k phi_k, sum_k b_k phi_k); a and b have length
  /// M, the e_{M-1}^- part is dropped.
  Eigen::VectorXcd from_components(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) const;
  /// Inverse of from_components on the subspace: returns (a, b) stacked.
  Eigen::VectorXcd to_components(const Eigen::VectorXcd& coords) const;

  /// U_g in this basis.  At s = 0 rho acts trivially; at s > 0 translation
  /// is exp(n s d/dx) with d/dx compressed to each family.
  DenseOperator unitary(const DihedralElement& g, ScaledAction action) const;

  /// U_g op U_g^-1
  DenseOperator conjugate_action(const DihedralElement& g, const DenseOperator& op, ScaledAction action) const;

 private:
  int size_;
  DenseOperator oscillator_;
  SpectralData spectrum_;
  SignedIndexMap grading_;
  double invariance_defect_ = 0.0;
};

/// B in the Hermite model (see HermiteModel).
DenseOperator oscillator_matrix(const HermiteBasis& basis);

}  // namespace hklab
