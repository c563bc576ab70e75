#include "dirtun/fields.hpp"

#include <algorithm>
#include <numbers>

namespace dirtun::fields {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

double FluxTail::value(double radius) const {
  if (kind == Kind::Power) return coef * std::pow(radius, p);
  if (r.empty()) return 0.0;
  if (radius < r.front() || radius > r.back())
    throw ExtrapolationError("flux tail sampled only on [" +
                             std::to_string(r.front()) + ", " +
                             std::to_string(r.back()) + "], asked at r=" +
                             std::to_string(radius));
  auto it = std::lower_bound(r.begin(), r.end(), radius);
  if (it == r.begin()) return phi.front();
  size_t hi = static_cast<size_t>(it - r.begin());
  size_t lo = hi - 1;
  double t = (radius - r[lo]) / (r[hi] - r[lo]);
  return (1.0 - t) * phi[lo] + t * phi[hi];
}

double FluxTail::derivative(double radius) const {
  if (kind == Kind::Power) {
    if (p == 0.0) return 0.0;
    return coef * p * std::pow(radius, p - 1.0);
  }
  // Central differences on the sample spacing scale.
  if (r.size() < 2) return 0.0;
  double h = (r.back() - r.front()) / static_cast<double>(r.size() - 1);
  h = std::min(h, 1e-3 * std::max(radius, 1.0));
  double lo = std::max(radius - h, r.front());
  double hi = std::min(radius + h, r.back());
  return (value(hi) - value(lo)) / (hi - lo);
}

FluxProfile::FluxProfile(double alpha, double phi0,
                         std::optional<FluxTail> tail)
    : alpha_(alpha), phi0_(phi0), tail_(std::move(tail)) {
  if (!(alpha_ > 0.0)) throw DomainError("FluxProfile: alpha must be > 0");
  if (!(phi0_ > 0.0)) throw DomainError("FluxProfile: phi0 must be > 0");
}

double FluxProfile::flux(double r) const {
  if (!(r > 0.0)) throw DomainError("flux: r must be > 0");
  double phi = phi0_ * std::pow(r, 1.0 + alpha_);
  if (tail_) phi += tail_->value(r);
  return phi;
}

double FluxProfile::vector_potential(double r) const {
  return flux(r) / (kTwoPi * r);
}

double FluxProfile::field_strength(double r) const {
  if (!(r > 0.0)) throw DomainError("field_strength: r must be > 0");
  double dphi = phi0_ * (1.0 + alpha_) * std::pow(r, alpha_);
  if (tail_) dphi += tail_->derivative(r);
  return dphi / (kTwoPi * r);
}

bool FluxProfile::tail_is_subleading(double tol) const {
  if (!tail_) return true;
  if (tail_->kind == FluxTail::Kind::Power) return tail_->p < 1.0 + alpha_;
  if (tail_->r.empty()) return true;
  double r_hi = tail_->r.back();
  double r_lo = std::max(tail_->r.front(), r_hi / 10.0);
  double worst = 0.0;
  const int samples = 64;
  for (int i = 0; i <= samples; ++i) {
    double r = r_lo + (r_hi - r_lo) * i / samples;
    worst = std::max(worst, std::abs(tail_->value(r)) /
                                (phi0_ * std::pow(r, 1.0 + alpha_)));
  }
  return worst <= tol;
}

FieldValues field_eval(const FluxProfile &profile, double r) {
  if (!(r > 0.0)) throw DomainError("field_eval: r must be > 0");
  return {profile.flux(r), profile.vector_potential(r),
          profile.field_strength(r)};
}

double effective_potential(const FluxProfile &profile, int j, SpinSign s,
                           double r) {
  if (!(r > 0.0)) throw DomainError("effective_potential: r must be > 0");
  const double half = (s == SpinSign::Plus) ? 0.5 : -0.5;
  const double orbital = m_j(j) + half; // j+1 for plus, j for minus
  const double a = profile.vector_potential(r);
  const double b = profile.field_strength(r);
  const double kin = orbital / r - a;
  return kin * kin + ((s == SpinSign::Plus) ? b : -b);
}

double effective_potential_max(const FluxProfile &profile, int j, double r) {
  return std::max(effective_potential(profile, j, SpinSign::Plus, r),
                  effective_potential(profile, j, SpinSign::Minus, r));
}

double effective_potential_min(const FluxProfile &profile, int j, double r) {
  return std::min(effective_potential(profile, j, SpinSign::Plus, r),
                  effective_potential(profile, j, SpinSign::Minus, r));
}

RescaleResult rescale(const FluxProfile &profile) {
  const double sigma = profile.sigma();
  const double lambda = std::pow(kTwoPi / profile.phi0(), sigma);
  RescaleMap map;
  map.lambda = lambda;
  map.zeta1_factor = 1.0;
  map.zeta2_factor = std::pow(lambda, -(1.0 + profile.alpha()));
  map.c1_factor = lambda;
  map.c2_factor = lambda;
  return RescaleResult{FluxProfile(profile.alpha(), kTwoPi), map,
                       profile.tail()};
}

double absorbed_tail_value(const RescaleResult &res, double r) {
  if (!res.absorbed_tail) return 0.0;
  const double lambda = res.map.lambda;
  // a(r) = phi(r) / (2 pi r), rescaled as a_lambda(r) = lambda a(lambda r).
  const double rl = lambda * r;
  return lambda * res.absorbed_tail->value(rl) / (kTwoPi * rl);
}

FluxProfile inverse_rescale(const RescaleResult &res, double original_phi0) {
  return FluxProfile(res.profile.alpha(), original_phi0, res.absorbed_tail);
}

} // namespace dirtun::fields
