#pragma once

#include "dirtun/fields.hpp"

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <limits>
#include <vector>

namespace dirtun::perturbation {

using Eigen::Matrix2cd;
using Eigen::MatrixXcd;
using Eigen::VectorXd;

// Angular Fourier data of the perturbation W. The table holds, per grid
// radius r_k and mode |n| <= n_max, the 2x2 coupling block
//   W~(r, n) = [[w11^(n),   w12^(n-1)],
//               [w21^(n+1), w22^(n)  ]]
// in the Fourier-coefficient normalization w^(n) = (2 pi)^-1 int W e^{-i n
// theta} d theta, so a rotationally symmetric W has W~(., 0) = W itself.
struct AngularCoupling {
  std::vector<double> radii;
  int n_max = 0;
  // table[(n + n_max) * radii.size() + k]
  std::vector<Matrix2cd> table;

  double beta = std::numeric_limits<double>::infinity();
  std::vector<double> envelope; // v(r_k)
  double mu_star = 0.0;

  bool trivial() const { return radii.empty() || n_max < 0; }
  const Matrix2cd &block(int n, size_t k) const {
    return table[static_cast<size_t>(n + n_max) * radii.size() + k];
  }
  Matrix2cd &block(int n, size_t k) {
    return table[static_cast<size_t>(n + n_max) * radii.size() + k];
  }
  double envelope_at(size_t k) const { return envelope[k]; }

  // sup over radii of max_n ||W~(r,n)|| e^{beta |n|} (the fitted envelope
  // scale when the table was built from samples).
  double norm_at(int n, size_t k) const;
};

// coth(beta/4); 1 for beta = infinity.
double coth_quarter(double beta);

// Build the coupling table from Hermitian samples W(r_k, theta_m) on a
// uniform theta grid (>= 4 n_max points). Validates Hermiticity to 1e-10.
AngularCoupling fourier_coefficients(
    const std::vector<double> &radii,
    const std::vector<std::vector<Matrix2cd>> &samples, // [radius][theta]
    int n_max);

// Reconstruct W(r_k, theta) from the table (inverse transform).
Matrix2cd reconstruct(const AngularCoupling &coupling, size_t radius_index,
                      double theta);

struct Condition2Report {
  double beta_hat = std::numeric_limits<double>::infinity();
  std::vector<double> v_hat; // per radius envelope
  double mu_star_hat = 0.0;
  bool pass = false;
};

// Fit (beta, v) to the table and evaluate the control-at-infinity ratio
// coth^2(beta/4) v^2 / A^2 over the outermost sampled decade.
Condition2Report verify_condition2(const AngularCoupling &coupling,
                                   const fields::FluxProfile &profile);

// Closed-form builders -------------------------------------------------------

// Rotationally symmetric electric term V(r) * Id.
AngularCoupling coupling_electric(const std::vector<double> &radii,
                                  const std::function<double(double)> &V);

// Single angular mode: radial(r) * cos(n theta) * (hermitian spin matrix).
// Adding several of these builds the synthetic test perturbations.
struct AngularMode {
  int n = 1;
  std::function<double(double)> radial;
  Matrix2cd spin = Matrix2cd::Identity();
};

AngularCoupling coupling_from_modes(const std::vector<double> &radii,
                                    const std::vector<AngularMode> &modes,
                                    int n_max, double beta,
                                    const std::vector<double> &envelope,
                                    double mu_star);

} // namespace dirtun::perturbation
