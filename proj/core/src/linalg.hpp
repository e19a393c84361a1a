#pragma once

// Thin LAPACK wrappers for the dense kernels that dominate run time.

#include <Eigen/Dense>

namespace hklab::linalg {

struct RealEigen {
  Eigen::VectorXd values;  // ascending
  Eigen::MatrixXd vectors;
};

struct ComplexEigen {
  Eigen::VectorXd values;  // ascending
  Eigen::MatrixXcd vectors;
};

RealEigen symmetric_eigen(Eigen::MatrixXd a);
ComplexEigen hermitian_eigen(Eigen::MatrixXcd a);
Eigen::VectorXd symmetric_eigenvalues(Eigen::MatrixXd a);
Eigen::VectorXd hermitian_eigenvalues(Eigen::MatrixXcd a);

/// Largest singular value as sqrt(lambda_max(A^* A)).
double largest_singular_value(const Eigen::MatrixXd& a);
double largest_singular_value(const Eigen::MatrixXcd& a);

/// All singular values, descending.
Eigen::VectorXd singular_values(Eigen::MatrixXd a);
Eigen::VectorXd singular_values(Eigen::MatrixXcd a);

}  // namespace hklab::linalg
