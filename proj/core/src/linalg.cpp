#include "linalg.hpp"

#include "hklab/backend.hpp"

#include <cblas.h>
#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace hklab::linalg {

namespace {

void check(lapack_int info, const char* routine) {
  if (info != 0) throw std::runtime_error(std::string(routine) + " failed with info = " + std::to_string(info));
}

lapack_complex_double* as_lapack(std::complex<double>* p) { return reinterpret_cast<lapack_complex_double*>(p); }

void require_square(Eigen::Index rows, Eigen::Index cols) {
  if (rows != cols) throw std::invalid_argument("linalg: square matrix required");
}

double top_eigenvalue_upper(Eigen::MatrixXd& gram) {
  const auto n = static_cast<lapack_int>(gram.rows());
  lapack_int found = 0;
  Eigen::VectorXd w(n);
  Eigen::MatrixXd z(n, 1);
  std::vector<lapack_int> support(2);
  check(LAPACKE_dsyevr(LAPACK_COL_MAJOR, 'N', 'I', 'U', n, gram.data(), n, 0.0, 0.0, n, n, 0.0, &found, w.data(),
                       z.data(), n, support.data()),
        "dsyevr");
  return w(0);
}

double top_eigenvalue_upper(Eigen::MatrixXcd& gram) {
  const auto n = static_cast<lapack_int>(gram.rows());
  lapack_int found = 0;
  Eigen::VectorXd w(n);
  Eigen::MatrixXcd z(n, 1);
  std::vector<lapack_int> support(2);
  check(LAPACKE_zheevr(LAPACK_COL_MAJOR, 'N', 'I', 'U', n, as_lapack(gram.data()), n, 0.0, 0.0, n, n, 0.0, &found,
                       w.data(), as_lapack(z.data()), n, support.data()),
        "zheevr");
  return w(0);
}

}  // namespace

RealEigen symmetric_eigen(Eigen::MatrixXd a) {
  require_blas_backend();
  require_square(a.rows(), a.cols());
  const auto n = static_cast<lapack_int>(a.rows());
  Eigen::VectorXd w(n);
  if (n > 0) check(LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'U', n, a.data(), n, w.data()), "dsyevd");
  return {std::move(w), std::move(a)};
}

ComplexEigen hermitian_eigen(Eigen::MatrixXcd a) {
  require_blas_backend();
  require_square(a.rows(), a.cols());
  const auto n = static_cast<lapack_int>(a.rows());
  Eigen::VectorXd w(n);
  if (n > 0) check(LAPACKE_zheevd(LAPACK_COL_MAJOR, 'V', 'U', n, as_lapack(a.data()), n, w.data()), "zheevd");
  return {std::move(w), std::move(a)};
}

Eigen::VectorXd symmetric_eigenvalues(Eigen::MatrixXd a) {
  require_blas_backend();
  require_square(a.rows(), a.cols());
  const auto n = static_cast<lapack_int>(a.rows());
  Eigen::VectorXd w(n);
  if (n > 0) check(LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'N', 'U', n, a.data(), n, w.data()), "dsyevd");
  return w;
}

Eigen::VectorXd hermitian_eigenvalues(Eigen::MatrixXcd a) {
  require_blas_backend();
  require_square(a.rows(), a.cols());
  const auto n = static_cast<lapack_int>(a.rows());
  Eigen::VectorXd w(n);
  if (n > 0) check(LAPACKE_zheevd(LAPACK_COL_MAJOR, 'N', 'U', n, as_lapack(a.data()), n, w.data()), "zheevd");
  return w;
}

double largest_singular_value(const Eigen::MatrixXd& a) {
  require_blas_backend();
  if (a.size() == 0) return 0.0;
  const auto n = static_cast<int>(a.cols());
  const auto m = static_cast<int>(a.rows());
  Eigen::MatrixXd gram(n, n);
  cblas_dsyrk(CblasColMajor, CblasUpper, CblasTrans, n, m, 1.0, a.data(), m, 0.0, gram.data(), n);
  return std::sqrt(std::max(0.0, top_eigenvalue_upper(gram)));
}

double largest_singular_value(const Eigen::MatrixXcd& a) {
  require_blas_backend();
  if (a.size() == 0) return 0.0;
  const auto n = static_cast<int>(a.cols());
  const auto m = static_cast<int>(a.rows());
  Eigen::MatrixXcd gram(n, n);
  cblas_zherk(CblasColMajor, CblasUpper, CblasConjTrans, n, m, 1.0, a.data(), m, 0.0, gram.data(), n);
  return std::sqrt(std::max(0.0, top_eigenvalue_upper(gram)));
}

Eigen::VectorXd singular_values(Eigen::MatrixXd a) {
  require_blas_backend();
  const auto m = static_cast<lapack_int>(a.rows());
  const auto n = static_cast<lapack_int>(a.cols());
  Eigen::VectorXd s(std::min(m, n));
  if (s.size() == 0) return s;
  double dummy = 0.0;
  check(LAPACKE_dgesdd(LAPACK_COL_MAJOR, 'N', m, n, a.data(), m, s.data(), &dummy, 1, &dummy, 1), "dgesdd");
  return s;
}

Eigen::VectorXd singular_values(Eigen::MatrixXcd a) {
  require_blas_backend();
  const auto m = static_cast<lapack_int>(a.rows());
  const auto n = static_cast<lapack_int>(a.cols());
  Eigen::VectorXd s(std::min(m, n));
  if (s.size() == 0) return s;
  lapack_complex_double dummy{};
  check(LAPACKE_zgesdd(LAPACK_COL_MAJOR, 'N', m, n, as_lapack(a.data()), m, s.data(), &dummy, 1, &dummy, 1),
        "zgesdd");
  return s;
}

}  // namespace hklab::linalg
