#pragma once

#include "dirtun/assembly.hpp"
#include "dirtun/partition.hpp"
#include "dirtun/perturbation.hpp"
#include "dirtun/tuning.hpp"
#include "dirtun/verify.hpp"

namespace dirtun::perturbation {

struct C0Estimate {
  double c0 = 0.0;
  double margin = 0.0; // min-eig of (rhs + c0 - v_beta^2), >= -1e-8
  bool feasible = true;
};

// Smallest constant (grid-scan estimate) with
//   v_beta^2 <= ((mu_*+eps1+eps_*)/mu) H0^2 + (mu_*+eps_*) chi lambda^2 chi
//              + C0
// on the discretized channels |j| <= j_test. The shift enters affinely, so
// the bisection collapses to one eigensolve; infeasible when the required
// constant exceeds 1e6 (signals mu~ >= mu or bad epsilons).
C0Estimate estimate_C0(const AngularCoupling &coupling,
                       const tuning::TunedParameters &params,
                       const fields::FluxProfile &profile,
                       const assembly::RadialGrid &grid,
                       const partition::PartitionOfUnity &pou,
                       int j_test = 16);

struct TwistedNormCheck {
  double lhs; // ||e^F W e^-F psi||^2
  double rhs; // coth^2(beta/4) ||v psi||^2
  bool pass;  // lhs <= rhs (1 + 1e-8)
};

// Appendix-level twisted bound; requires F3 for beta (checked, domain error
// otherwise).
TwistedNormCheck twisted_norm_check(const AngularCoupling &coupling,
                                    const verify::WeightSpec &weight,
                                    const assembly::StateVector &psi,
                                    double band_tol = 1e-12);

} // namespace dirtun::perturbation
