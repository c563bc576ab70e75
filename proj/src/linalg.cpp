#include "dirtun/linalg.hpp"

#include <lapacke.h>

#include <stdexcept>
#include <string>

namespace dirtun::linalg {

namespace {

[[noreturn]] void fail(const char *what, int info) {
  throw std::runtime_error(std::string(what) + " failed, info=" +
                           std::to_string(info));
}

bool is_real(const MatrixXcd &a, double tol = 0.0) {
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (std::abs(a(i, j).imag()) > tol) return false;
  return true;
}

} // namespace

EighResult eigh(const MatrixXcd &a, bool with_vectors) {
  const int n = static_cast<int>(a.rows());
  if (a.cols() != n) throw std::invalid_argument("eigh: matrix not square");
  EighResult out;
  out.values.resize(n);
  if (n == 0) return out;
  const char jobz = with_vectors ? 'V' : 'N';
  if (is_real(a)) {
    MatrixXd w = a.real();
    int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, jobz, 'L', n, w.data(), n,
                              out.values.data());
    if (info != 0) fail("dsyevd", info);
    if (with_vectors) out.vectors = w.cast<std::complex<double>>();
  } else {
    MatrixXcd w = a;
    int info = LAPACKE_zheevd(LAPACK_COL_MAJOR, jobz, 'L', n,
                              reinterpret_cast<lapack_complex_double *>(w.data()),
                              n, out.values.data());
    if (info != 0) fail("zheevd", info);
    if (with_vectors) out.vectors = std::move(w);
  }
  return out;
}

VectorXd eigh_values(const MatrixXcd &a) { return eigh(a, false).values; }

double min_eigenvalue(const MatrixXcd &a) {
  VectorXd vals = eigh_values(a);
  return vals.size() ? vals(0) : 0.0;
}

VectorXd singular_values(const MatrixXd &a) {
  const int m = static_cast<int>(a.rows());
  const int n = static_cast<int>(a.cols());
  MatrixXd w = a;
  VectorXd s(std::min(m, n));
  int info = LAPACKE_dgesdd(LAPACK_COL_MAJOR, 'N', m, n, w.data(), m, s.data(),
                            nullptr, 1, nullptr, 1);
  if (info != 0) fail("dgesdd", info);
  return s;
}

VectorXd singular_values(const MatrixXcd &a) {
  if (is_real(a)) return singular_values(MatrixXd(a.real()));
  const int m = static_cast<int>(a.rows());
  const int n = static_cast<int>(a.cols());
  MatrixXcd w = a;
  VectorXd s(std::min(m, n));
  int info = LAPACKE_zgesdd(LAPACK_COL_MAJOR, 'N', m, n,
                            reinterpret_cast<lapack_complex_double *>(w.data()),
                            m, s.data(), nullptr, 1, nullptr, 1);
  if (info != 0) fail("zgesdd", info);
  return s;
}

SvdResult svd(const MatrixXd &a) {
  const int m = static_cast<int>(a.rows());
  const int n = static_cast<int>(a.cols());
  SvdResult out;
  out.sigma.resize(std::min(m, n));
  out.u.resize(m, std::min(m, n));
  MatrixXd vt(std::min(m, n), n);
  MatrixXd w = a;
  int info = LAPACKE_dgesdd(LAPACK_COL_MAJOR, 'S', m, n, w.data(), m,
                            out.sigma.data(), out.u.data(), m, vt.data(),
                            std::min(m, n));
  if (info != 0) fail("dgesdd", info);
  out.v = vt.transpose();
  return out;
}

double operator_norm(const MatrixXcd &a) {
  if (a.size() == 0) return 0.0;
  VectorXd s = singular_values(a);
  return s(0);
}

MatrixXcd shifted_solve(const MatrixXcd &a, std::complex<double> z,
                        const MatrixXcd &b) {
  const int n = static_cast<int>(a.rows());
  MatrixXcd m = a;
  m.diagonal().array() -= z;
  MatrixXcd x = b;
  std::vector<lapack_int> ipiv(n);
  int info = LAPACKE_zgesv(LAPACK_COL_MAJOR, n, static_cast<int>(b.cols()),
                           reinterpret_cast<lapack_complex_double *>(m.data()),
                           n, ipiv.data(),
                           reinterpret_cast<lapack_complex_double *>(x.data()),
                           n);
  if (info != 0) fail("zgesv", info);
  return x;
}

VectorXd banded_eigh_values(const std::vector<std::complex<double>> &band,
                            int dim, int kd) {
  VectorXd vals(dim);
  std::vector<std::complex<double>> ab = band;
  int info = LAPACKE_zhbev(
      LAPACK_COL_MAJOR, 'N', 'U', dim, kd,
      reinterpret_cast<lapack_complex_double *>(ab.data()), kd + 1,
      vals.data(), nullptr, 1);
  if (info != 0) fail("zhbev", info);
  return vals;
}

} // namespace dirtun::linalg
