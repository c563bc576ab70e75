#pragma once

#include "dirtun/fields.hpp"

#include <utility>
#include <vector>

namespace dirtun::regions {

using fields::FluxProfile;

struct Interval {
  double lo;
  double hi;
};

// Classically allowed region of channel j at energy E_j: radii where both
// spin components of V_j stay below E_j^2.
struct AllowedRegion {
  int channel = 0;
  double energy = 0.0;
  std::vector<Interval> intervals; // disjoint, sorted
  bool truncated = false;          // region touches r_max
  double r_max = 0.0;

  bool empty() const { return intervals.empty(); }
  bool contains(double r) const;
};

struct RegionConstants {
  double c_mu;       // >= 1
  double delta_mu_c; // in (0,1)
};

// Explicit constants from the lower-bound lemma:
//   c_mu  = (2 sqrt2 + 1 + alpha)^m (1-mu)^-m,  m = max(1/alpha, 1+alpha)
//   delta = min([4(2+alpha)]^-sigma (1-mu)^sigma, 2^-(1+alpha) c^-alpha)
RegionConstants region_constants(double mu, double c, double alpha);

AllowedRegion allowed_region(const FluxProfile &profile, int j, double energy,
                             double r_max, int n_samples = 10000);

enum class Side { Interior, Exterior };

// Exterior: min over r >= c <j>^sigma of (V_j - mu A^2), worst spin.
// Interior: min over r in (0, delta |j|^sigma] of (V_j - mu A(2c|j|^sigma)^2),
// requires |j| >= 2. Nonnegative margins certify the lemma numerically.
double lower_bound_margin(const FluxProfile &profile, int j, double mu,
                          double c, double delta, Side side,
                          int n_samples = 10000);

struct Containment {
  bool applicable = true; // E_j^2 < mu |j|^(2 alpha sigma) precondition
  bool contained = false;
  double slack_lo = 0.0; // region start minus delta |j|^sigma
  double slack_hi = 0.0; // c <j>^sigma minus region end
};

Containment check_containment(const FluxProfile &profile, int j, double energy,
                              double delta, double c, double mu,
                              double r_max = -1.0, int n_samples = 10000);

} // namespace dirtun::regions
