#pragma once

#include "dirtun/partition.hpp"
#include "dirtun/spectral.hpp"
#include "dirtun/tuning.hpp"

#include <functional>
#include <limits>
#include <vector>

namespace dirtun::verify {

using spectral::SpectralProjection;
using tuning::EnergyLevels;
using tuning::TunedParameters;

enum class WeightKind { F, G, Custom };

// Exponential weight sequence F = (F_j). The built-in kinds are
//   F_j(r) = gamma |j|^(1-sigma) (delta |j|^sigma / 4 - r)_+   for |j| > j0,
//            0 otherwise;
//   G_j(r) = gamma ((r / 4c)^(1+alpha) - <j>)_+.
struct WeightSpec {
  WeightKind kind = WeightKind::F;
  double gamma = 0.0;
  // Construction parameters (delta, c, j0, alpha, sigma, beta).
  double delta = 0.0, c = 1.0, j0 = 2.0, alpha = 1.0, sigma = 0.5;
  double beta = std::numeric_limits<double>::infinity();
  // Custom kind: value and radial derivative per (channel, radius).
  std::function<double(long long, double)> custom_value;
  std::function<double(long long, double)> custom_derivative;

  double value(long long j, double r) const;
  double derivative(long long j, double r) const;
  // Location of the positive-part kink for channel j (0 when none).
  double kink(long long j) const;
};

WeightSpec build_weight(WeightKind kind, double gamma,
                        const TunedParameters &params);

// gamma0 = min(gamma1, gamma2) with
//   gamma1 = (2c)^(2 alpha) (mu - sqrt(mu mu-_*)) (mu - sqrt(mu mu~)) / 8,
//   gamma2 = min(beta / (delta <j0>), 1).
double gamma_max(const TunedParameters &params);

struct FConditionReport {
  bool f1 = false, f2 = false, f3 = false;
  double f1_margin = 0.0; // -max |F_j chi_j| over samples
  double f2_margin = 0.0; // min of ((1-a)/2)^2 chip^2 (V - E^2) - (F')^2
  double f3_margin = 0.0; // min over pairs of (beta/2)|j-k| - sup |F_j - F_k|
};

// Margins for the admissibility conditions of the decay theorem. F2 is
// scanned per channel over the support structure; F1/F3 use the closed
// forms where available.
FConditionReport check_F_conditions(const WeightSpec &weight,
                                    const partition::PartitionOfUnity &pou,
                                    const fields::FluxProfile &profile,
                                    const EnergyLevels &levels,
                                    const std::vector<long long> &channels,
                                    int samples = 4000);

enum class TunnelSide { Interior, Exterior };

struct TunnelingSum {
  double total = 0.0;
  std::vector<double> per_channel; // indexed j = -J..J
  int j_max = 0;
  bool saturated = false; // overflow guard tripped
  // First |j| past which the interior terms are non-increasing.
  int monotone_from = 0;
};

// Interior: sum_j || e^(zeta1 |j|) 1_[0, C1 |j|^sigma] P_{m_j} P ||^2;
// exterior: sum_j || e^(zeta2 r^(1+alpha)) 1_[C2 <j>^sigma, inf) P_{m_j} P
// ||^2. Norms are largest singular values of the weighted factor rows.
TunnelingSum tunneling_sum(const SpectralProjection &proj, TunnelSide side,
                           double zeta, double c_const, int j_max,
                           double sigma, double alpha);

// Proof defaults: zeta1 = delta gamma0 / 8, C1 = 8 delta, zeta2 = gamma0 /
// (2c), C2 = 8c.
struct TunnelingConstants {
  double zeta1, c1, zeta2, c2;
};
TunnelingConstants proof_constants(const TunedParameters &params);

struct CorollaryPNorms {
  double radial_norm;  // ||(1-theta) e^(xi1 |x|^(1+alpha)) P||
  double angular_norm; // ||(1-theta) e^(xi2 |J|) P||
  bool preconditions;  // xi1 <= min(C1^(1+alpha) z1, z2), xi2 <= min(z1,
                       // z2 C2^(1+alpha))
};

CorollaryPNorms corollary_p_norms(const SpectralProjection &proj, double c1,
                                  double c2, double xi1, double xi2,
                                  double zeta1, double zeta2, double sigma,
                                  double alpha);

struct Trajectory {
  std::vector<double> times;
  std::vector<double> radius_moment;   // <phi(t), |x|^nu phi(t)>
  std::vector<double> angular_moment;  // <phi(t), |J|^mu phi(t)>
  std::vector<double> norms;           // ||phi(t)||
  double nu = 1.0, mu = 1.0;
  bool degenerate = false; // phi0 orthogonal to ran P_I

  // Least-squares slope of log(angular_moment) vs log(t) over the last
  // decade of the time window.
  double fitted_growth_exponent() const;
};

// Spectral time evolution of the projection of phi0 onto ran P_I(H);
// moments via the grid quadrature weights and |m_j|^mu channel weights.
Trajectory evolve_and_measure(const spectral::Eigensystem &eig,
                              const SpectralProjection &proj,
                              const assembly::StateVector &phi0,
                              const std::vector<double> &times, double nu,
                              double mu);

} // namespace dirtun::verify
