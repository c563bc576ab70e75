#pragma once

#include "dirtun/assembly.hpp"
#include "dirtun/fields.hpp"
#include "dirtun/partition.hpp"

#include <array>
#include <limits>
#include <string>
#include <vector>

namespace dirtun::tuning {

using fields::FluxProfile;

// External parameters of the theory: (alpha, beta, mu_star, E). beta may be
// infinite (rotationally symmetric perturbation).
struct Externals {
  double alpha = 1.0;
  double beta = std::numeric_limits<double>::infinity();
  double mu_star = 0.0;
  double energy = 1.0;
};

// Quantities derived from the internal parameters:
//   mu~ = mu_* + eps1 + eps_*, mu-_* = mu_* + eps_*,
//   a = (mu~/mu)^(1/2), b = (mu-_*/mu~)^(1/2) (b = 0 when mu~ = 0),
//   delta0 = min(1-a, 1-b), C0~ = (1-a) eps0 + C/a,
//   E~^2 = (1 - eps0/delta0) U^2 - 2 eps0 delta0^2 - delta0 C/a.
// The C/a ratio is taken as 0 when C = 0 (decaying-perturbation limit).
struct Derived {
  double mu_tilde = 0.0;
  double mu_bar_star = 0.0;
  double a = 0.0;
  double b = 0.0;
  double delta0 = 1.0;
  double c_tilde0 = 0.0;
  double e_tilde_sq = 0.0;
  bool feasible = true; // E~^2 > 0 and all ratios finite

  double e_tilde() const { return feasible ? std::sqrt(e_tilde_sq) : 0.0; }
};

// The nine internal parameters (mu, delta, c, j0, eps0, eps1, eps_star, C, U)
// tuned with respect to the externals.
struct TunedParameters {
  double mu = 0.5;
  double delta = 0.1;
  double c = 1.0;
  double j0 = 2.0;
  double eps0 = 0.01;
  double eps1 = 0.0;
  double eps_star = 0.0;
  double C = 0.0;
  double U = 1.0;
  Externals externals;

  Derived derive() const;
};

struct ConditionReport {
  struct Item {
    std::string name;
    bool pass;
    double margin; // >= 0 iff pass (smallest slack among the clauses)
    std::string detail;
  };
  std::array<Item, 6> items; // P0..P5
  bool all_pass = false;
};

// Evaluates P0..P5. c_star is the partition's universal constant (P2); C0 is
// the perturbation constant from Theorem W (P3).
ConditionReport check_conditions(const TunedParameters &params,
                                 const FluxProfile &profile, double C0,
                                 double c_star);

// Deterministic tuning along the existence remark: fix mu = (1+mu_*)/2, then
// eps1/eps_*, C = C0, eps0, U, then (c, delta, j0). Output passes P0..P5.
TunedParameters auto_tune(double alpha, double beta, double mu_star,
                          double energy, double C0,
                          double c_star = partition::PartitionOfUnity::
                              universal_constant());

// lambda_j = A(2c <j>^sigma) and E_j^2 = (mu mu-_*)^(1/2) lambda_j^2
// + U^2/delta0^2.
struct EnergyLevels {
  TunedParameters params;
  Derived derived;
  long long j_max = 0;

  double lambda(long long j) const;
  double energy(long long j) const;
  double energy_sq(long long j) const;
  // Smallest |j| >= 2 with E_j^2 < mu |j|^(2 alpha sigma) (containment
  // becomes applicable from here on).
  long long applicability_threshold() const;
};

EnergyLevels energy_levels(const TunedParameters &params,
                           const FluxProfile &profile, long long j_max);

struct CongruenceReport {
  double pointwise_margin; // min over channels/samples of chi_perp^2 (V-E^2)
  double interior_floor_margin; // vs (mu delta0/2) lambda_j^2 on |j|>j0,
                                // r <= delta |j|^sigma / 4
  double exterior_floor_margin; // vs (mu delta0/2) A^2(r) on r >= 4c<j>^sigma
  bool pass;
};

CongruenceReport congruence_check(const EnergyLevels &levels,
                                  const partition::PartitionOfUnity &pou,
                                  const FluxProfile &profile,
                                  const std::vector<long long> &channels,
                                  int samples = 4000);

} // namespace dirtun::tuning
