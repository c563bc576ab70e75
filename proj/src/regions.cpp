#include "dirtun/regions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dirtun::regions {

using fields::bracket;
using fields::DomainError;
using fields::effective_potential_max;
using fields::effective_potential_min;

bool AllowedRegion::contains(double r) const {
  for (const auto &iv : intervals)
    if (r >= iv.lo && r <= iv.hi) return true;
  return false;
}

RegionConstants region_constants(double mu, double c, double alpha) {
  if (!(mu > 0.0 && mu < 1.0))
    throw DomainError("region_constants: mu must be in (0,1)");
  if (!(c >= 1.0)) throw DomainError("region_constants: c must be >= 1");
  if (!(alpha > 0.0)) throw DomainError("region_constants: alpha must be > 0");
  const double expo = std::max(1.0 / alpha, 1.0 + alpha);
  const double sigma = 1.0 / (1.0 + alpha);
  RegionConstants out;
  out.c_mu = std::pow((2.0 * std::numbers::sqrt2 + 1.0 + alpha) / (1.0 - mu),
                      expo);
  out.c_mu = std::max(out.c_mu, 1.0);
  out.delta_mu_c =
      std::min(std::pow(4.0 * (2.0 + alpha), -sigma) * std::pow(1.0 - mu, sigma),
               std::pow(2.0, -(1.0 + alpha)) * std::pow(c, -alpha));
  return out;
}

namespace {

// Log-uniform sample grid on [lo, hi].
std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> out(n);
  const double llo = std::log(lo), lhi = std::log(hi);
  for (int i = 0; i < n; ++i)
    out[i] = std::exp(llo + (lhi - llo) * i / (n - 1));
  out.front() = lo;
  out.back() = hi;
  return out;
}

// Bisect f (continuous, sign change bracketed) to relative width tol.
template <typename F>
double bisect(F &&f, double lo, double hi, double f_lo, double tol = 1e-10) {
  for (int it = 0; it < 200 && (hi - lo) > tol * hi; ++it) {
    double mid = 0.5 * (lo + hi);
    double fm = f(mid);
    if ((fm <= 0.0) == (f_lo <= 0.0)) {
      lo = mid;
      f_lo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

} // namespace

AllowedRegion allowed_region(const FluxProfile &profile, int j, double energy,
                             double r_max, int n_samples) {
  if (!(energy > 0.0)) throw DomainError("allowed_region: energy must be > 0");
  if (!(r_max > 0.0)) throw DomainError("allowed_region: r_max must be > 0");
  if (n_samples < 64) throw DomainError("allowed_region: need >= 64 samples");

  AllowedRegion region;
  region.channel = j;
  region.energy = energy;
  region.r_max = r_max;

  const double e2 = energy * energy;
  auto f = [&](double r) { return effective_potential_max(profile, j, r) - e2; };

  const double r_lo = r_max * 1e-8;
  auto grid = log_grid(r_lo, r_max, n_samples);

  double prev_r = grid.front();
  double prev_f = f(prev_r);
  double open_at = std::numeric_limits<double>::quiet_NaN();
  if (prev_f <= 0.0) open_at = prev_r;

  for (int i = 1; i < n_samples; ++i) {
    const double r = grid[i];
    const double fr = f(r);
    if (prev_f > 0.0 && fr <= 0.0) {
      open_at = bisect(f, prev_r, r, prev_f);
    } else if (prev_f <= 0.0 && fr > 0.0) {
      double close_at = bisect(f, prev_r, r, prev_f);
      region.intervals.push_back({open_at, close_at});
      open_at = std::numeric_limits<double>::quiet_NaN();
    }
    prev_r = r;
    prev_f = fr;
  }
  if (!std::isnan(open_at)) {
    region.intervals.push_back({open_at, r_max});
    region.truncated = true;
  }
  return region;
}

double lower_bound_margin(const FluxProfile &profile, int j, double mu,
                          double c, double delta, Side side, int n_samples) {
  if (!(mu > 0.0 && mu < 1.0))
    throw DomainError("lower_bound_margin: mu must be in (0,1)");
  const double sigma = profile.sigma();
  double margin = std::numeric_limits<double>::infinity();
  if (side == Side::Exterior) {
    const double r0 = c * std::pow(bracket(j), sigma);
    // Dense log scan over one decade past the threshold; V - mu A^2 grows
    // like (1-mu) A^2 beyond, so the infimum sits near the left edge.
    for (double r : log_grid(r0, 10.0 * r0, n_samples)) {
      const double v = effective_potential_min(profile, j, r);
      const double a = profile.vector_potential(r);
      margin = std::min(margin, v - mu * a * a);
    }
  } else {
    if (std::abs(j) < 2)
      throw DomainError("lower_bound_margin: interior side needs |j| >= 2");
    const double js = std::pow(std::abs(j), sigma);
    const double r_hi = delta * js;
    const double a_ref = profile.vector_potential(2.0 * c * js);
    const double floor = mu * a_ref * a_ref;
    for (double r : log_grid(r_hi * 1e-6, r_hi, n_samples)) {
      const double v = effective_potential_min(profile, j, r);
      margin = std::min(margin, v - floor);
    }
  }
  return margin;
}

Containment check_containment(const FluxProfile &profile, int j, double energy,
                              double delta, double c, double mu, double r_max,
                              int n_samples) {
  if (std::abs(j) < 2)
    throw DomainError("check_containment: needs |j| >= 2");
  Containment out;
  const double sigma = profile.sigma();
  const double alpha = profile.alpha();
  const double e2 = energy * energy;
  if (!(e2 < mu * std::pow(std::abs(j), 2.0 * alpha * sigma))) {
    out.applicable = false;
    return out;
  }
  const double lo = delta * std::pow(std::abs(j), sigma);
  const double hi = c * std::pow(bracket(j), sigma);
  if (r_max <= 0.0) r_max = 4.0 * hi;
  AllowedRegion region = allowed_region(profile, j, energy, r_max, n_samples);
  if (region.empty()) {
    out.contained = true;
    out.slack_lo = std::numeric_limits<double>::infinity();
    out.slack_hi = std::numeric_limits<double>::infinity();
    return out;
  }
  out.slack_lo = region.intervals.front().lo - lo;
  out.slack_hi = hi - region.intervals.back().hi;
  out.contained = out.slack_lo >= 0.0 && out.slack_hi >= 0.0;
  return out;
}

} // namespace dirtun::regions
