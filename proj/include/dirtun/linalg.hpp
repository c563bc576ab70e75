#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

// Thin wrappers around LAPACK for the heavy factorizations. Everything else
// goes through Eigen. All matrices are column-major (Eigen default), which is
// what LAPACKE expects with LAPACK_COL_MAJOR.

namespace dirtun::linalg {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

struct EighResult {
  VectorXd values;   // ascending
  MatrixXcd vectors; // columns
};

// Hermitian eigendecomposition (zheevd / dsyevd when input is real).
EighResult eigh(const MatrixXcd &a, bool with_vectors = true);
VectorXd eigh_values(const MatrixXcd &a);

// Smallest eigenvalue of a Hermitian matrix.
double min_eigenvalue(const MatrixXcd &a);

// Singular values, descending (dgesdd / zgesdd).
VectorXd singular_values(const MatrixXd &a);
VectorXd singular_values(const MatrixXcd &a);

struct SvdResult {
  VectorXd sigma; // descending
  MatrixXd u;
  MatrixXd v; // a = u * diag(sigma) * v^T
};

// Full SVD of a real matrix.
SvdResult svd(const MatrixXd &a);

// Largest singular value.
double operator_norm(const MatrixXcd &a);

// Solve (a - z I) x = b for many right-hand sides via one LU (zgesv).
MatrixXcd shifted_solve(const MatrixXcd &a, std::complex<double> z,
                        const MatrixXcd &b);

// Eigenvalues of a Hermitian matrix given in banded storage.
// band[k + kd * j] holds A(k + j - kd, j) for the upper triangle,
// kd = number of superdiagonals. Returns ascending eigenvalues (zhbev, no
// vectors).
VectorXd banded_eigh_values(const std::vector<std::complex<double>> &band,
                            int dim, int kd);

} // namespace dirtun::linalg
