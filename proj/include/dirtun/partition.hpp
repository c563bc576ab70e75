#pragma once

#include "dirtun/assembly.hpp"
#include "dirtun/fields.hpp"

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace dirtun::partition {

using assembly::RadialGrid;
using Eigen::VectorXcd;
using Eigen::VectorXd;
using fields::FluxProfile;

enum class CutoffKind { Bump, Capped };

// Value and derivative of a smooth cutoff at one point.
struct CutoffSample {
  double value;
  double complement;
  double d_value;
  double d_complement;
};

// Smooth pair (g, g_perp) with g^2 + g_perp^2 = 1 exactly: the monotone
// edges are sin/cos of (pi/2) s(t) with s the quintic smoothstep, so the
// identity holds by construction and derivatives come in closed form.
//
// Bump g_{a,b}:   0 on (0, a/2], rises on [a/2, a], 1 on [a, b], falls on
//                 [b, 2b], 0 on [2b, inf).
// Capped h_{a,b}: 1 on (0, b], falls on [b, 2b], 0 on [2b, inf).
class CutoffPair {
 public:
  CutoffPair() = default;
  CutoffPair(double a, double b, CutoffKind kind);

  CutoffSample eval(double r) const;
  double value(double r) const { return eval(r).value; }

  double a() const { return a_; }
  double b() const { return b_; }
  CutoffKind kind() const { return kind_; }

  // Universal constant: sup |g'| <= C*/a (bump) resp. C*/b (capped).
  static double universal_constant();
  double derivative_bound() const;

 private:
  double a_ = 0.0, b_ = 0.0;
  CutoffKind kind_ = CutoffKind::Bump;
};

// Per-channel localization functions built with respect to (delta, c, j0):
//   eta_j = h_{delta,c}(r/<j>^sigma)      for |j| <= j0,
//           g_{delta,c}(r/|j|^sigma)      for |j| > j0;
//   chi_j = h_{delta/2,2c}(r/<j>^sigma)   for |j| <= j0,
//           g_{delta/2,2c}(r/|j|^sigma)   for |j| > j0.
class PartitionOfUnity {
 public:
  PartitionOfUnity() = default;
  PartitionOfUnity(double delta, double c, double j0, double sigma);

  double delta() const { return delta_; }
  double c() const { return c_; }
  double j0() const { return j0_; }
  double sigma() const { return sigma_; }

  double channel_scale(long long j) const; // <j>^sigma or |j|^sigma

  CutoffSample chi(long long j, double r) const;
  CutoffSample eta(long long j, double r) const;

  // Partition constant: all four derivative sups are bounded by
  // C* max(1/c, 1/(delta j0^sigma)).
  static double universal_constant();
  double derivative_sup_bound() const;

  // Support endpoints (scaled to channel j) used by the margin scans.
  struct Support {
    // eta_perp support: [0, inner] (empty if inner <= 0) and [outer, inf).
    double inner;
    double outer;
  };
  Support eta_perp_support(long long j) const;
  Support chi_perp_support(long long j) const;

  void export_csv(const std::string &path, long long j, double r_lo,
                  double r_hi, int samples) const;

 private:
  double delta_ = 0; // in (0,1)
  double c_ = 1;     // >= 1
  double j0_ = 2;
  double sigma_ = 0.5;
  CutoffPair eta_bump_, eta_capped_, chi_bump_, chi_capped_;
};

CutoffPair build_bump(double a, double b, CutoffKind kind = CutoffKind::Bump);

PartitionOfUnity build_partition(double delta, double c, double j0,
                                 double sigma);

// |<psi,T psi> - <th psi,T th psi> - <th~ psi,T th~ psi>
//  + <psi,(|th'|^2+|th~'|^2) psi>| for the discrete radial kinetic form,
// with th = theta(j, .) from the partition. psi is a spinor (2n).
double ims_residual(const RadialGrid &grid, const VectorXcd &psi,
                    const PartitionOfUnity &pou, long long j,
                    bool use_eta = false);

struct ForbiddenMargins {
  long long channel;
  bool applicable; // c >= c_mu and delta <= delta_mu_c
  double eta_margin;  // min over supp(eta_perp) of V_j - mu A^2
  double chi_margin;  // min over supp(chi_perp) of V_j - mu A(2c|j|^s)^2
  double matrix_margin; // min-eig(H0^2 + 2 eps^2 - th~ V th~), discrete
};

std::vector<ForbiddenMargins> forbidden_bound_check(
    const PartitionOfUnity &pou, const FluxProfile &profile, double mu,
    const std::vector<long long> &channels, const RadialGrid &grid,
    int scan_samples = 10000);

} // namespace dirtun::partition
