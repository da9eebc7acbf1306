#include "oqwlab/oqw.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "oqwlab/sampling.hpp"

namespace oqwlab {

DensityOperator oqw_step(const KrausFamily& family, const DensityOperator& rho) {
    if (rho.num_nodes() != family.num_nodes() || rho.coin_dim() != family.coin_dim()) {
        throw DimensionMismatchError("oqw_step: density operator does not match the family");
    }
    DensityOperator out(family.num_nodes(), family.coin_dim());
    for (int j = 0; j < family.num_nodes(); ++j) {
        const CMat* rho_jj = rho.block_at(j, j);
        if (!rho_jj) continue;
        for (int k : family.targets(j)) {
            const CMat& b = *family.operator_at(j, k);
            out.add_to_block(k, k, b * (*rho_jj) * b.adjoint());
        }
    }
    return out;
}

DensityOperator oqw_evolve(const KrausFamily& family, const DensityOperator& rho0, long t) {
    if (t < 0) {
        throw IndexOutOfRangeError("oqw_evolve: t must be >= 0");
    }
    DensityOperator rho = rho0;
    for (long step = 0; step < t; ++step) {
        rho = oqw_step(family, rho);
    }
    return rho;
}

RVec vertex_distribution(const DensityOperator& rho) {
    RVec p(rho.num_nodes());
    for (int j = 0; j < rho.num_nodes(); ++j) {
        const CMat* b = rho.block_at(j, j);
        double pj = b ? b->trace().real() : 0.0;
        if (pj < 0.0 && pj >= -1e-12) pj = 0.0;
        p[j] = pj;
    }
    return p;
}

std::optional<int> detect_period(const KrausFamily& family, const DensityOperator& rho0,
                                 int burn_in, int max_period, double tol) {
    DensityOperator base = oqw_evolve(family, rho0, burn_in);

    // Candidate period: first return to the burn-in state.
    DensityOperator rho = base;
    int period = 0;
    for (int p = 1; p <= max_period; ++p) {
        rho = oqw_step(family, rho);
        if (frobenius_distance(rho, base) < tol) {
            period = p;
            break;
        }
    }
    if (period == 0) return std::nullopt;

    // Confirm over one further cycle so a single coincidental return cannot pass.
    DensityOperator a = base;
    DensityOperator b = rho;  // = rho_{burn_in + period}
    for (int q = 0; q < period; ++q) {
        a = oqw_step(family, a);
        b = oqw_step(family, b);
        if (frobenius_distance(a, b) >= tol) return std::nullopt;
    }
    return period;
}

TrajectoryResult run_trajectory(const KrausFamily& family, const TrajectoryState& start,
                                int steps) {
    if (start.node < 0 || start.node >= family.num_nodes()) {
        throw IndexOutOfRangeError("run_trajectory: start node out of range");
    }
    if (start.coin_state.rows() != family.coin_dim() ||
        start.coin_state.cols() != family.coin_dim()) {
        throw ShapeMismatchError("run_trajectory: coin state has wrong shape");
    }
    if (std::abs(start.coin_state.trace().real() - 1.0) > 1e-12) {
        throw Error("run_trajectory: coin state trace must be 1");
    }
    {
        Eigen::SelfAdjointEigenSolver<CMat> coin_eig(
            0.5 * (start.coin_state + start.coin_state.adjoint()));
        if (coin_eig.eigenvalues().minCoeff() < -1e-12) {
            throw NotPSDError("run_trajectory: coin state has eigenvalue " +
                              str(coin_eig.eigenvalues().minCoeff()));
        }
    }
    if (steps < 0) {
        throw IndexOutOfRangeError("run_trajectory: steps must be >= 0");
    }

    Rng rng(start.rng_seed);
    TrajectoryResult result;
    result.path.reserve(steps + 1);
    result.path.push_back(start.node);

    int node = start.node;
    CMat coin = start.coin_state;
    for (int t = 0; t < steps; ++t) {
        const std::vector<int>& outs = family.targets(node);
        std::vector<double> weights(outs.size());
        std::vector<CMat> branches(outs.size());
        double total = 0.0;
        for (std::size_t i = 0; i < outs.size(); ++i) {
            const CMat& b = *family.operator_at(node, outs[i]);
            branches[i] = b * coin * b.adjoint();
            weights[i] = std::max(branches[i].trace().real(), 0.0);
            total += weights[i];
        }
        if (total < 1e-14) {
            throw ZeroProbabilityError("run_trajectory: all branch probabilities vanish at node " +
                                       std::to_string(node));
        }
        // Inverse CDF over the ordered out-edge list.
        const double r = rng.uniform() * total;
        double acc = 0.0;
        std::size_t pick = outs.size() - 1;
        for (std::size_t i = 0; i < outs.size(); ++i) {
            acc += weights[i];
            if (r < acc) {
                pick = i;
                break;
            }
        }
        node = outs[pick];
        coin = branches[pick] / weights[pick];
        result.path.push_back(node);
    }
    result.final_coin = coin;
    return result;
}

std::vector<TrajectoryResult> run_trajectories(const KrausFamily& family, int start_node,
                                               const CMat& coin, int steps, int count,
                                               std::uint64_t base_seed) {
    std::vector<TrajectoryResult> results;
    results.reserve(count);
    for (int i = 0; i < count; ++i) {
        TrajectoryState start{start_node, coin, derive_seed(base_seed, static_cast<std::uint64_t>(i))};
        results.push_back(run_trajectory(family, start, steps));
    }
    return results;
}

}  // namespace oqwlab
