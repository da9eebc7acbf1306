#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "oqwlab/density.hpp"
#include "oqwlab/kraus.hpp"

namespace oqwlab {

/// One application of the walk map rho -> sum_{j,k} (B_j^k (x) |k><j|) rho (...)^dag.
/// Only the diagonal blocks of rho feed the output, and the output is strictly
/// block-diagonal: block (k,k) = sum_j B_j^k rho_{jj} B_j^k^dag. Trace and
/// positivity are preserved.
DensityOperator oqw_step(const KrausFamily& family, const DensityOperator& rho);

/// t-fold oqw_step; t = 0 returns rho0.
DensityOperator oqw_evolve(const KrausFamily& family, const DensityOperator& rho0, long t);

/// p_j = tr(rho_jj); values in [-1e-12, 0) are clamped to zero.
RVec vertex_distribution(const DensityOperator& rho);

/// Smallest p in [1, max_period] with rho_{b+p} = rho_b (Frobenius distance
/// below tol, b = burn_in), confirmed over one further full cycle. Period 1
/// means a stationary state was reached; nullopt means no period was found, so
/// no limit can be reported at this horizon.
std::optional<int> detect_period(const KrausFamily& family, const DensityOperator& rho0,
                                 int burn_in, int max_period, double tol = 1e-10);

/// Walker with a definite position and a coin-space density, plus the seed of
/// the stream that drives its position measurements.
struct TrajectoryState {
    int node = 0;
    CMat coin_state;
    std::uint64_t rng_seed = 0;
};

struct TrajectoryResult {
    std::vector<int> path;  // length steps + 1, starts at the initial node
    CMat final_coin;
};

/// Unravelling of the walk: at node j with coin tau, target k is drawn with
/// probability tr(B_j^k tau B_j^k^dag) and the coin collapses to the
/// renormalized branch. Identical seeds reproduce identical paths.
TrajectoryResult run_trajectory(const KrausFamily& family, const TrajectoryState& start,
                                int steps);

/// Ensemble with per-trajectory streams derived from (base_seed, index).
std::vector<TrajectoryResult> run_trajectories(const KrausFamily& family, int start_node,
                                               const CMat& coin, int steps, int count,
                                               std::uint64_t base_seed);

}  // namespace oqwlab
