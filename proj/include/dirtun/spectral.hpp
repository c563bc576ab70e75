#pragma once

#include "dirtun/assembly.hpp"

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <vector>

namespace dirtun::spectral {

using assembly::BlockOperator;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

// Full eigendecomposition of a Hermitian block operator. When the operator
// is block-diagonal the channel structure is kept (each eigenvector lives in
// one channel); otherwise vectors are global.
struct Eigensystem {
  struct Entry {
    double value;
    int channel;        // meaningful only in the block-diagonal case
    Eigen::Index index; // column into `vectors` (per-channel or global)
  };
  bool block_diagonal = true;
  const BlockOperator *op = nullptr;
  // Block-diagonal case: vectors_per_channel[i] columns are the
  // eigenvectors of channel j_min + i; values_per_channel[i] ascending.
  std::vector<MatrixXcd> vectors_per_channel;
  std::vector<VectorXd> values_per_channel;
  // General case.
  MatrixXcd vectors;
  VectorXd values;

  // Eigenvalues of the whole operator, ascending.
  VectorXd all_values() const;
  // Largest residual ||Op v - lambda v|| over a sample of pairs.
  double residual(const BlockOperator &operator_) const;
};

Eigensystem eigensolve(const BlockOperator &op, bool with_vectors = true);

// Rank factor of the spectral projection onto I = [-E, E]: orthonormal
// columns spanning the retained eigenvectors, stored globally (channel-major
// rows); per-column channel labels for P_{m_j} slicing.
struct SpectralProjection {
  double energy = 0.0;
  assembly::RadialGrid grid;
  int j_min = 0, j_max = -1;
  MatrixXcd factor;           // dim x rank
  VectorXd values;            // eigenvalues inside I
  std::vector<int> channels;  // channel of each column; -1 when mixed
  bool boundary_warning = false; // eigenvalue within 1e-6 of +-E

  Eigen::Index rank() const { return factor.cols(); }
  // Rows of the factor belonging to channel j.
  MatrixXcd channel_rows(int j) const;
  double idempotency_error() const; // ||Q^H Q - I||_max
};

SpectralProjection spectral_projection(const BlockOperator &h, double energy);
SpectralProjection spectral_projection(const Eigensystem &eig, double energy);

// Smooth indicator g: 1 on [-E, E], supported in [-E - eps0/2, E + eps0/2],
// built from the same sin/cos smoothstep as the partitions. Derivatives up
// to order 4 in closed form.
struct SmoothIndicator {
  double energy = 1.0;
  double eps0 = 0.1;

  double value(double t) const { return derivative(t, 0); }
  double derivative(double t, int order) const; // order <= 4
};

// Almost analytic extension g~(x+iy) = sum_{k<=n} g^(k)(x) (iy)^k / k! *
// tau(y/eps0) with a smooth even cutoff tau (1 near 0, 0 beyond |s| = 1),
// plus the tensor Gauss-Legendre rule over the rectangle
// D = {|x| <= E + eps0/2, 0 < |y| <= eps0}, split at y = 0.
class AlmostAnalyticExtension {
 public:
  AlmostAnalyticExtension() = default;
  AlmostAnalyticExtension(const SmoothIndicator &g, int order = 3,
                          int nodes_x_per_panel = 32, int nodes_y = 24);

  const SmoothIndicator &g() const { return g_; }
  int order() const { return order_; }

  std::complex<double> extension(std::complex<double> z) const;   // g~
  std::complex<double> dbar(std::complex<double> z) const;        // dbar g~

  struct Node {
    std::complex<double> z;
    std::complex<double> coeff; // (1/pi) dbar g~(z) * quadrature weight
  };
  // Nodes on the upper half (y > 0); the y < 0 half is the conjugate.
  const std::vector<Node> &upper_nodes() const { return nodes_; }

  // Quadrature approximation of g(t) for real t (sum over both halves).
  double quadrature_value(double t) const;

 private:
  SmoothIndicator g_;
  int order_ = 3;
  std::vector<Node> nodes_;
};

struct HsResult {
  MatrixXcd g_of_h;       // quadrature route
  MatrixXcd g_of_h_eig;   // eigendecomposition route
  double discrepancy;     // operator norm of the difference
};

// Helffer-Sjostrand functional calculus: g(H) = (1/pi) int (H-z)^-1 dbar g~.
// Resolvents are applied through the channel eigendecompositions; the
// quadrature error against the eigendecomposition route is reported.
HsResult hs_functional_calculus(const BlockOperator &h,
                                const AlmostAnalyticExtension &ext);

struct GapCheck {
  bool pass;
  double min_abs_eigenvalue;
  double threshold; // E + eps0
};

GapCheck gap_check(const BlockOperator &h_tilde,
                   const AlmostAnalyticExtension &ext);

struct ResolventDifferenceResult {
  MatrixXcd g_of_h;        // via the resolvent-difference formula
  double vs_direct;        // distance to hs_functional_calculus(H)
  double g_of_h_tilde_norm; // ||g(H~)|| (certified small under the gap)
  GapCheck gap;
};

// g(H) = (1/pi) int [(H-z)^-1 - (H~-z)^-1] dbar g~, valid when spec(H~)
// misses the quadrature rectangle. Throws std::runtime_error when the gap
// check fails.
ResolventDifferenceResult resolvent_difference_projection(
    const BlockOperator &h, const BlockOperator &h_tilde,
    const AlmostAnalyticExtension &ext);

} // namespace dirtun::spectral
