#include "oqwlab/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace oqwlab {

namespace {

void check_unit_norm(const AugmentedState& state, long t) {
    const double drift = std::abs(state.norm() - 1.0);
    if (drift > 1e-6) {
        throw NormDriftError("evolve: norm drifted by " + str(drift) + " at step " +
                             std::to_string(t));
    }
}

}  // namespace

AugmentedState evolve(const QuantizedWalk& walk, const AugmentedState& alpha0, long t) {
    if (t < 0) {
        throw IndexOutOfRangeError("evolve: t must be >= 0");
    }
    check_unit_norm(alpha0, 0);
    AugmentedState state = alpha0;
    for (long step = 1; step <= t; ++step) {
        state = apply_U(walk, state);
        check_unit_norm(state, step);
    }
    return state;
}

double node_probability(const AugmentedState& state, int j) {
    if (j < 0 || j >= state.num_nodes()) {
        throw IndexOutOfRangeError("node_probability: node " + std::to_string(j) +
                                   " out of range");
    }
    double p = 0.0;
    const auto& amps = state.amplitudes();
    for (auto it = amps.lower_bound(std::make_pair(j, 0)); it != amps.end() && it->first.first == j;
         ++it) {
        p += it->second.squaredNorm();
    }
    return p;
}

RVec node_distribution(const AugmentedState& state) {
    RVec p = RVec::Zero(state.num_nodes());
    for (const auto& [key, a] : state.amplitudes()) {
        p[key.first] += a.squaredNorm();
    }
    return p;
}

RVec mean_distribution(const QuantizedWalk& walk, const AugmentedState& alpha0, long horizon) {
    if (horizon < 1) {
        throw IndexOutOfRangeError("mean_distribution: horizon must be >= 1");
    }
    check_unit_norm(alpha0, 0);
    AugmentedState state = alpha0;
    RVec accum = RVec::Zero(walk.num_nodes());
    for (long t = 1; t <= horizon; ++t) {
        state = apply_U(walk, state);
        check_unit_norm(state, t);
        accum += node_distribution(state);
    }
    return accum / static_cast<double>(horizon);
}

double mean_probability(const QuantizedWalk& walk, const AugmentedState& alpha0, int j,
                        long horizon) {
    if (j < 0 || j >= walk.num_nodes()) {
        throw IndexOutOfRangeError("mean_probability: node " + std::to_string(j) +
                                   " out of range");
    }
    return mean_distribution(walk, alpha0, horizon)[j];
}

RVec asymptotic_distribution(const QuantizedWalk& walk, const UEigenSystem& eig,
                             const AugmentedState& alpha0) {
    // Expansion coefficients and the span check.
    std::vector<Complex> coeff(eig.pairs.size());
    AugmentedState projection(walk.num_nodes(), walk.coin_dim());
    for (std::size_t l = 0; l < eig.pairs.size(); ++l) {
        coeff[l] = eig.pairs[l].vector.inner(alpha0);
        if (coeff[l] != Complex(0.0, 0.0)) {
            projection.add_scaled(coeff[l], eig.pairs[l].vector);
        }
    }
    const double residual = distance(alpha0, projection);
    if (residual >= 1e-8) {
        throw NotInSpanError(residual);
    }

    CVec acc = CVec::Zero(walk.num_nodes());
    for (const auto& group : eig.groups) {
        for (const int l : group) {
            for (const int m : group) {
                const Complex weight = coeff[l] * std::conj(coeff[m]);
                if (std::abs(weight) < 1e-30) continue;
                const auto& amps_l = eig.pairs[l].vector.amplitudes();
                const auto& amps_m = eig.pairs[m].vector.amplitudes();
                for (const auto& [key, al] : amps_l) {
                    const auto it = amps_m.find(key);
                    if (it == amps_m.end()) continue;
                    acc[key.first] += weight * hs_inner(it->second, al);
                }
            }
        }
    }

    RVec result(walk.num_nodes());
    for (int j = 0; j < walk.num_nodes(); ++j) {
        if (std::abs(acc[j].imag()) > 1e-10) {
            throw Error("asymptotic_distribution: imaginary residue " + str(acc[j].imag()) +
                        " at node " + std::to_string(j + 1));
        }
        double p = acc[j].real();
        if (p < 0.0 && p > -1e-10) p = 0.0;
        if (p > 1.0 && p < 1.0 + 1e-10) p = 1.0;
        result[j] = p;
    }
    return result;
}

double asymptotic_mean(const QuantizedWalk& walk, const UEigenSystem& eig,
                       const AugmentedState& alpha0, int j) {
    if (j < 0 || j >= walk.num_nodes()) {
        throw IndexOutOfRangeError("asymptotic_mean: node " + std::to_string(j) + " out of range");
    }
    return asymptotic_distribution(walk, eig, alpha0)[j];
}

ConvergenceProbe convergence_probe(const QuantizedWalk& walk, const UEigenSystem& eig,
                                   const AugmentedState& alpha0, std::vector<long> horizons) {
    if (horizons.empty()) {
        throw IndexOutOfRangeError("convergence_probe: need at least one horizon");
    }
    std::sort(horizons.begin(), horizons.end());
    horizons.erase(std::unique(horizons.begin(), horizons.end()), horizons.end());
    if (horizons.front() < 1) {
        throw IndexOutOfRangeError("convergence_probe: horizons must be >= 1");
    }

    ConvergenceProbe probe;
    probe.horizons = horizons;
    probe.asymptotic = asymptotic_distribution(walk, eig, alpha0);
    probe.deviations = RMat::Zero(static_cast<Eigen::Index>(horizons.size()), walk.num_nodes());

    check_unit_norm(alpha0, 0);
    AugmentedState state = alpha0;
    RVec accum = RVec::Zero(walk.num_nodes());
    std::size_t row = 0;
    for (long t = 1; t <= horizons.back() && row < horizons.size(); ++t) {
        state = apply_U(walk, state);
        check_unit_norm(state, t);
        accum += node_distribution(state);
        if (t == horizons[row]) {
            probe.deviations.row(static_cast<Eigen::Index>(row)) =
                (accum / static_cast<double>(t) - probe.asymptotic).cwiseAbs().transpose();
            ++row;
        }
    }

    probe.fitted_c =
        probe.deviations.row(0).maxCoeff() * static_cast<double>(probe.horizons.front());
    for (std::size_t i = 1; i < probe.horizons.size(); ++i) {
        const double allowed =
            1.5 * probe.fitted_c / static_cast<double>(probe.horizons[i]) + 1e-12;
        if (probe.deviations.row(static_cast<Eigen::Index>(i)).maxCoeff() > allowed) {
            probe.bound_ok = false;
        }
    }
    return probe;
}

WalkRun run_walk(const QuantizedWalk& walk, const AugmentedState& alpha0, long horizon) {
    if (horizon < 0) {
        throw IndexOutOfRangeError("run_walk: horizon must be >= 0");
    }
    check_unit_norm(alpha0, 0);
    WalkRun run{alpha0, horizon, {}, alpha0};
    run.history.reserve(horizon + 1);
    run.history.push_back(node_distribution(alpha0));
    for (long t = 1; t <= horizon; ++t) {
        run.final_state = apply_U(walk, run.final_state);
        check_unit_norm(run.final_state, t);
        run.history.push_back(node_distribution(run.final_state));
    }
    return run;
}

}  // namespace oqwlab
