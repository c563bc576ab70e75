#pragma once

#include "dirtun/fields.hpp"
#include "dirtun/linalg.hpp"
#include "dirtun/perturbation.hpp"

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <optional>
#include <vector>

namespace dirtun::assembly {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;
using fields::FluxProfile;

struct ShapeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Radial cells r_k = (k + 1/2) h, k = 0..n-1, quadrature weights r_k h for
// the measure r dr, Dirichlet wall at r_max = n h. All operators are stored
// in the similarity-scaled representation psi~_k = sqrt(r_k h) psi(r_k), so
// that weighted-Hermitian operators become plain-Hermitian matrices.
struct RadialGrid {
  int n = 0;
  double h = 0.0;

  RadialGrid() = default;
  RadialGrid(int n_, double r_max) : n(n_), h(r_max / n_) {}

  double r_max() const { return n * h; }
  double node(int k) const { return (k + 0.5) * h; }
  double weight(int k) const { return node(k) * h; }
  VectorXd nodes() const;

  bool operator==(const RadialGrid &o) const { return n == o.n && h == o.h; }
};

// Forward-difference discretization of d_j = d/dr - j/r + A(r) with the
// multiplicative part averaged onto faces rho_k = (k+1) h. In the scaled
// representation the matrix transpose is exactly the discrete d_j^*.
MatrixXd channel_derivative(const RadialGrid &grid, const FluxProfile &profile,
                            int j);

// 2n x 2n Hermitian block h_j = [[0, d_j^*], [d_j, 0]] (spinor-major layout:
// indices [0,n) upper component, [n,2n) lower).
MatrixXd discretize_channel(const RadialGrid &grid, const FluxProfile &profile,
                            int j);

// Radial kinetic energy T = -(d^2/dr^2 + (1/r) d/dr) as an n x n symmetric
// matrix (quadratic form sum over faces of |psi'|^2 r dr).
MatrixXd kinetic_form(const RadialGrid &grid);

// Diagonal of the effective potential V_j at the nodes, spinor-major (2n).
VectorXd effective_potential_diagonal(const RadialGrid &grid,
                                      const FluxProfile &profile, int j);

// Hermitian operator on a contiguous channel range, stored as per-channel
// 2n x 2n diagonal blocks plus coupling blocks for channel distance <= band.
// Only the upper block row is stored; the lower one is its adjoint.
class BlockOperator {
 public:
  BlockOperator() = default;
  BlockOperator(RadialGrid grid, int j_min, int j_max, int band = 0);

  const RadialGrid &grid() const { return grid_; }
  int j_min() const { return j_min_; }
  int j_max() const { return j_max_; }
  int channel_count() const { return j_max_ - j_min_ + 1; }
  int band() const { return band_; }
  int block_dim() const { return 2 * grid_.n; }
  Eigen::Index dim() const {
    return static_cast<Eigen::Index>(channel_count()) * block_dim();
  }
  bool block_diagonal() const { return band_ == 0; }

  // Coupling block between channel j and channel j + d, 0 <= d <= band.
  MatrixXcd &block(int j, int d);
  const MatrixXcd &block(int j, int d) const;
  MatrixXcd &diagonal_block(int j) { return block(j, 0); }
  const MatrixXcd &diagonal_block(int j) const { return block(j, 0); }

  int channel_index(int j) const { return j - j_min_; }
  Eigen::Index channel_offset(int j) const {
    return static_cast<Eigen::Index>(channel_index(j)) * block_dim();
  }

  MatrixXcd to_dense() const;
  VectorXcd apply(const VectorXcd &x) const;

  // max over blocks of || block(j,k) - block(k,j)^H ||_inf entrywise.
  double hermiticity_error() const;
  double norm_estimate() const; // max row-sum of block norms (upper bound)

  BlockOperator &operator+=(const BlockOperator &o);
  BlockOperator &operator-=(const BlockOperator &o);
  BlockOperator &operator*=(double s);
  friend BlockOperator operator+(BlockOperator a, const BlockOperator &b) {
    a += b;
    return a;
  }
  friend BlockOperator operator-(BlockOperator a, const BlockOperator &b) {
    a -= b;
    return a;
  }

  // this * other (band adds). Both must share grid and channel range.
  BlockOperator product(const BlockOperator &other) const;
  BlockOperator squared() const { return product(*this); }

  // Add s * identity.
  void shift(double s);

  // Multiply every block entrywise by channel-pair radial factors
  // f_j(r)/f_k(r) (used for exponential-weight conjugation).
  void conjugate_channel_diagonals(
      const std::function<VectorXd(int)> &log_factor);

 private:
  RadialGrid grid_;
  int j_min_ = 0, j_max_ = -1, band_ = 0;
  // blocks_[d][i]: coupling (channel j_min+i) -> (channel j_min+i+d).
  std::vector<std::vector<MatrixXcd>> blocks_;
};

// Spinor amplitudes on (channel, node, spin) in the scaled representation.
struct StateVector {
  RadialGrid grid;
  int j_min = 0, j_max = -1;
  VectorXcd coeffs;

  StateVector() = default;
  StateVector(const RadialGrid &g, int jmin, int jmax)
      : grid(g), j_min(jmin), j_max(jmax),
        coeffs(VectorXcd::Zero(
            static_cast<Eigen::Index>(jmax - jmin + 1) * 2 * g.n)) {}

  int channel_count() const { return j_max - j_min + 1; }
  Eigen::Index channel_offset(int j) const {
    return static_cast<Eigen::Index>(j - j_min) * 2 * grid.n;
  }
  double norm() const { return coeffs.norm(); }
  // Weighted amplitude accessor: physical value psi_s(r_k) in channel j.
  std::complex<double> amplitude(int j, int k, int spin) const;
  void set_amplitude(int j, int k, int spin, std::complex<double> v);
};

// Free Hamiltonian H0 = (+) h_j over the channel range (band 0).
BlockOperator assemble_free(const RadialGrid &grid, const FluxProfile &profile,
                            int j_abs_max);

// Full Hamiltonian H = H0 + W with coupling rows W~(., j-k). The band is the
// smallest b with v_max e^(-beta b) < band_tol (capped at the table range).
BlockOperator assemble_full(const RadialGrid &grid, const FluxProfile &profile,
                            const perturbation::AngularCoupling &coupling,
                            int j_abs_max, double band_tol = 1e-12);

// Multiplication operator W alone on the channel range (no kinetic part).
BlockOperator assemble_coupling(const RadialGrid &grid,
                                const perturbation::AngularCoupling &coupling,
                                int j_abs_max, double band_tol = 1e-12);

// Channel-diagonal multiplication operator diag_j f_j(r) x (spin matrix).
// spin_diag holds the (upper, lower) spin entries.
BlockOperator multiplication_operator(
    const RadialGrid &grid, int j_min, int j_max,
    const std::function<std::pair<double, double>(int, double)> &f);

// H~ = H + sigma3 E chi with E chi = diag_j E_j chi_j(r).
BlockOperator assemble_comparison(const BlockOperator &h,
                                  const std::function<double(int)> &energy,
                                  const std::function<double(int, double)> &chi);

// e^F Op e^-F for a channel-diagonal radial weight F_j(r).
BlockOperator weight_conjugate(const BlockOperator &op,
                               const std::function<double(int, double)> &F);

// Smallest eigenvalue of (rhs - lhs); >= -tol certifies lhs <= rhs on the
// discretized space.
double form_inequality_margin(const BlockOperator &lhs,
                              const BlockOperator &rhs);

// Smallest eigenvalue of a single Hermitian block operator.
double min_eigenvalue(const BlockOperator &op);

// Smallest |eigenvalue| (spectral gap around zero).
double min_abs_eigenvalue(const BlockOperator &op);

// All eigenvalues, ascending (per-channel when block-diagonal, banded
// LAPACK storage otherwise).
VectorXd all_eigenvalues(const BlockOperator &op);

// Binary triplet export (row, col, re, im) with a JSON header. Paths get
// suffixes .bin / .json.
void export_operator(const BlockOperator &op, const std::string &path_stem);

} // namespace dirtun::assembly
