#pragma once

#include <vector>

#include "oqwlab/spectral.hpp"

namespace oqwlab {

/// U^t alpha0. The norm is monitored every step; deviation beyond 1e-6 from 1
/// aborts with NormDriftError instead of renormalizing silently.
AugmentedState evolve(const QuantizedWalk& walk, const AugmentedState& alpha0, long t);

/// P(j) = sum_k ||amplitude at (j, k)||_F^2.
double node_probability(const AugmentedState& state, int j);
RVec node_distribution(const AugmentedState& state);

/// Mean of the per-step distributions over t = 1..T, accumulated streaming so
/// long horizons stay memory-flat.
RVec mean_distribution(const QuantizedWalk& walk, const AugmentedState& alpha0, long horizon);
double mean_probability(const QuantizedWalk& walk, const AugmentedState& alpha0, int j,
                        long horizon);

/// Limit of the mean distribution: the double sum
///   sum_k sum_{mu_l = mu_m} <phi_l|a0><a0|phi_m> <I (x) |j,k><j,k|, |phi_l><phi_m|>
/// evaluated with the eigensystem's eigenvalue-equality groups. alpha0 must lie
/// in the span of the eigenvectors (projection residual < 1e-8), otherwise
/// NotInSpanError reports the residual. Entries are real up to a 1e-10 residue
/// and clamped into [0, 1].
RVec asymptotic_distribution(const QuantizedWalk& walk, const UEigenSystem& eig,
                             const AugmentedState& alpha0);
double asymptotic_mean(const QuantizedWalk& walk, const UEigenSystem& eig,
                       const AugmentedState& alpha0, int j);

/// Deviation |mean_distribution(T) - asymptotic| per node per horizon, one
/// evolution pass shared across horizons. fitted_c is max_j dev(T_0, j) * T_0;
/// bound_ok records whether every later deviation stays below 1.5 * fitted_c / T.
struct ConvergenceProbe {
    std::vector<long> horizons;
    RMat deviations;  // row per horizon, column per node
    RVec asymptotic;
    double fitted_c = 0.0;
    bool bound_ok = true;
};

ConvergenceProbe convergence_probe(const QuantizedWalk& walk, const UEigenSystem& eig,
                                   const AugmentedState& alpha0, std::vector<long> horizons);

/// Evolution with per-step node distributions retained, for result files.
struct WalkRun {
    AugmentedState alpha0;
    long horizon;
    std::vector<RVec> history;  // t = 0..horizon
    AugmentedState final_state;
};

WalkRun run_walk(const QuantizedWalk& walk, const AugmentedState& alpha0, long horizon);

}  // namespace oqwlab
