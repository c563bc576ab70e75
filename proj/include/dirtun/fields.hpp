#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dirtun::fields {

// Half-integer total angular momentum of channel j.
inline double m_j(int j) { return j + 0.5; }

// Standard bracket <x> = (1 + x^2)^(1/2).
inline double bracket(double x) { return std::hypot(1.0, x); }

struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};
struct ExtrapolationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Subleading flux tail phi(r), either a power law coef * r^p or a sampled
// table with linear interpolation. The table must be sorted in r.
struct FluxTail {
  enum class Kind { Power, Table };
  Kind kind = Kind::Power;
  // Power: phi(r) = coef * r^p.
  double coef = 0.0;
  double p = 0.0;
  // Table samples.
  std::vector<double> r;
  std::vector<double> phi;

  double value(double radius) const;
  double derivative(double radius) const; // central differences for tables
};

// Rotationally symmetric magnetic data: Phi(r) = Phi0 r^(1+alpha) + phi(r).
class FluxProfile {
 public:
  FluxProfile(double alpha, double phi0,
              std::optional<FluxTail> tail = std::nullopt);

  double alpha() const { return alpha_; }
  double phi0() const { return phi0_; }
  const std::optional<FluxTail> &tail() const { return tail_; }
  bool has_tail() const { return tail_.has_value(); }

  // sigma = 1 / (1 + alpha).
  double sigma() const { return 1.0 / (1.0 + alpha_); }

  double flux(double r) const;           // Phi(r)
  double vector_potential(double r) const; // A(r) = Phi(r) / (2 pi r)
  double field_strength(double r) const;   // B(r) = Phi'(r) / (2 pi r)

  // Checks |phi(r)| / r^(1+alpha) over the outermost decade of the tail
  // sample range against tol. Power tails are checked symbolically (p < 1+a).
  bool tail_is_subleading(double tol = 1e-2) const;

 private:
  double alpha_;
  double phi0_;
  std::optional<FluxTail> tail_;
};

enum class SpinSign { Plus, Minus };

struct FieldValues {
  double flux;
  double vector_potential;
  double field_strength;
};

FieldValues field_eval(const FluxProfile &profile, double r);

// V_j^s(r) = ((m_j +- 1/2)/r - A(r))^2 +- B(r).
double effective_potential(const FluxProfile &profile, int j, SpinSign s,
                           double r);

// Worst (largest) spin component, used for allowed-region scans.
double effective_potential_max(const FluxProfile &profile, int j, double r);
// Best (smallest) spin component, used for lower-bound margins.
double effective_potential_min(const FluxProfile &profile, int j, double r);

// Rescaling x -> x / lambda with lambda = (2 pi / Phi0)^sigma, which maps
// A(r) to r^alpha. The tail is reported separately so callers can absorb it
// into the perturbation as a rotationally symmetric magnetic term
// a(r) sigma.e_theta with a(r) = phi(r)/(2 pi r), rescaled alongside.
struct RescaleMap {
  double lambda;
  // Multipliers for the tunneling constants of the original problem.
  double zeta1_factor; // 1
  double zeta2_factor; // lambda^-(1+alpha)
  double c1_factor;    // lambda
  double c2_factor;    // lambda
};

struct RescaleResult {
  FluxProfile profile; // Phi0' = 2 pi, no tail
  RescaleMap map;
  // Rescaled tail coefficient a_lambda(r) = lambda * a(lambda r) sampled on
  // demand; empty optional when the input had no tail.
  std::optional<FluxTail> absorbed_tail; // tail of the *original* profile
};

RescaleResult rescale(const FluxProfile &profile);

// Evaluate the absorbed magnetic perturbation a_lambda(r) of a rescale
// result at radius r (zero when there was no tail).
double absorbed_tail_value(const RescaleResult &res, double r);

// Inverse transform: restore the original (alpha, Phi0) profile. Exact for
// tail-free inputs; the absorbed tail is reattached verbatim.
FluxProfile inverse_rescale(const RescaleResult &res, double original_phi0);

} // namespace dirtun::fields
