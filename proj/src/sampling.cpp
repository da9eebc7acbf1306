#include "oqwlab/sampling.hpp"

#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "oqwlab/augmented.hpp"
#include "oqwlab/quantizer.hpp"
#include "oqwlab/spectral.hpp"

namespace oqwlab {

double Rng::uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::gaussian() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
}

Complex Rng::complex_gaussian() {
    const double re = gaussian();
    const double im = gaussian();
    return Complex(re, im);
}

std::uint64_t Rng::below(std::uint64_t bound) {
    return static_cast<std::uint64_t>(uniform() * static_cast<double>(bound)) % bound;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
    // splitmix64 finalizer over the combined words.
    std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

CMat gaussian_matrix(int rows, int cols, Rng& rng) {
    CMat m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) {
            m(i, j) = rng.complex_gaussian();
        }
    }
    return m;
}

CMat random_unitary(int n, Rng& rng) {
    const Eigen::HouseholderQR<CMat> qr(gaussian_matrix(n, n, rng));
    return qr.householderQ() * CMat::Identity(n, n);
}

KrausFamily random_kraus_family(int num_nodes, int coin_dim, Rng& rng, int max_out_degree) {
    if (max_out_degree <= 0 || max_out_degree > num_nodes) max_out_degree = num_nodes;
    KrausFamily family(num_nodes, coin_dim);
    std::vector<int> nodes(num_nodes);
    for (int i = 0; i < num_nodes; ++i) nodes[i] = i;

    for (int j = 0; j < num_nodes; ++j) {
        const int degree = 1 + static_cast<int>(rng.below(max_out_degree));
        // Partial Fisher-Yates picks `degree` distinct targets.
        for (int i = 0; i < degree; ++i) {
            const int swap_with = i + static_cast<int>(rng.below(num_nodes - i));
            std::swap(nodes[i], nodes[swap_with]);
        }

        // A random (degree*n) x n isometry sliced over the targets satisfies
        // sum_k B^dag B = Q^dag Q = I exactly up to roundoff.
        const int n = coin_dim;
        const Eigen::HouseholderQR<CMat> qr(gaussian_matrix(degree * n, n, rng));
        const CMat isometry = qr.householderQ() * CMat::Identity(degree * n, n);
        for (int i = 0; i < degree; ++i) {
            family.set_operator(j, nodes[i], isometry.middleRows(i * n, n));
        }
    }
    return family;
}

RMat random_stochastic(int n, Rng& rng) {
    RMat p(n, n);
    for (int c = 0; c < n; ++c) {
        double sum = 0.0;
        for (int r = 0; r < n; ++r) {
            p(r, c) = 0.05 + rng.uniform();  // bounded away from zero
            sum += p(r, c);
        }
        p.col(c) /= sum;
    }
    return p;
}

AugmentedState random_augmented_state(int num_nodes, int coin_dim, Rng& rng) {
    AugmentedState state(num_nodes, coin_dim);
    for (int j = 0; j < num_nodes; ++j) {
        for (int k = 0; k < num_nodes; ++k) {
            state.set_amplitude(j, k, gaussian_matrix(coin_dim, coin_dim, rng));
        }
    }
    state *= Complex(1.0 / state.norm(), 0.0);
    return state;
}

AugmentedState random_span_state(const UEigenSystem& eig, Rng& rng) {
    if (eig.pairs.empty()) {
        throw DimensionMismatchError("random_span_state: empty eigensystem");
    }
    AugmentedState state(eig.pairs.front().vector.num_nodes(),
                         eig.pairs.front().vector.coin_dim());
    for (const auto& pair : eig.pairs) {
        state.add_scaled(rng.complex_gaussian(), pair.vector);
    }
    state *= Complex(1.0 / state.norm(), 0.0);
    return state;
}

std::optional<AugmentedState> random_complement_state(const QuantizedWalk& walk, Rng& rng) {
    // Orthonormal basis of span{psi_j, S psi_j} by modified Gram-Schmidt,
    // dropping directions already covered.
    std::vector<AugmentedState> basis;
    for (int j = 0; j < walk.num_nodes(); ++j) {
        for (const bool swapped : {false, true}) {
            AugmentedState cand = swapped ? apply_swap(walk.psi()[j]) : walk.psi()[j];
            for (const AugmentedState& b : basis) {
                cand.add_scaled(-b.inner(cand), b);
            }
            const double nrm = cand.norm();
            if (nrm > 1e-8) {
                cand *= Complex(1.0 / nrm, 0.0);
                basis.push_back(std::move(cand));
            }
        }
    }
    if (static_cast<int>(basis.size()) >= walk.augmented_dim()) {
        return std::nullopt;  // the invariant subspace fills everything
    }

    for (int attempt = 0; attempt < 16; ++attempt) {
        AugmentedState state = random_augmented_state(walk.num_nodes(), walk.coin_dim(), rng);
        for (const AugmentedState& b : basis) {
            state.add_scaled(-b.inner(state), b);
        }
        const double nrm = state.norm();
        if (nrm > 1e-6) {
            state *= Complex(1.0 / nrm, 0.0);
            // One more sweep keeps the residual overlap at roundoff level.
            for (const AugmentedState& b : basis) {
                state.add_scaled(-b.inner(state), b);
            }
            state *= Complex(1.0 / state.norm(), 0.0);
            return state;
        }
    }
    return std::nullopt;
}

}  // namespace oqwlab
