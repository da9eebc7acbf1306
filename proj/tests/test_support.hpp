#pragma once

#include <cmath>

#include "oqwlab/augmented.hpp"
#include "oqwlab/density.hpp"
#include "oqwlab/kraus.hpp"
#include "oqwlab/numerics.hpp"

namespace oqwlab::testing {

inline CMat pauli_x() {
    CMat x(2, 2);
    x << 0, 1, 1, 0;
    return x;
}

inline CMat pauli_z() {
    CMat z(2, 2);
    z << 1, 0, 0, -1;
    return z;
}

inline CMat identity2() { return CMat::Identity(2, 2); }

/// Two-vertex walk with a bit-flip loop at node 0 and a phase-flip edge 1 -> 0.
/// Node 1 has no incoming edges, so everything drains into node 0.
inline KrausFamily two_vertex_family() {
    KrausFamily family(2, 2);
    family.set_operator(0, 0, pauli_x());
    family.set_operator(1, 0, pauli_z());
    return family;
}

/// Maximally mixed walker split evenly across both nodes.
inline DensityOperator two_vertex_case1_density() {
    DensityOperator rho(2, 2);
    rho.set_block(0, 0, 0.25 * identity2());
    rho.set_block(1, 1, 0.25 * identity2());
    return rho;
}

/// diag(3/4, 1/4) parked at node 1.
inline DensityOperator two_vertex_case2_density() {
    DensityOperator rho(2, 2);
    CMat coin(2, 2);
    coin << 0.75, 0, 0, 0.25;
    rho.set_block(1, 1, coin);
    return rho;
}

/// (psi_1 + psi_2)/sqrt(2) written out in slots.
inline AugmentedState two_vertex_case1_alpha0() {
    AugmentedState alpha(2, 2);
    alpha.set_amplitude(0, 0, 0.5 * identity2());
    alpha.set_amplitude(1, 0, 0.5 * identity2());
    return alpha;
}

/// (sqrt(2)/2) I at slot (1, 2) in 1-based labels.
inline AugmentedState two_vertex_case2_alpha0() {
    AugmentedState alpha(2, 2);
    alpha.set_amplitude(0, 1, (std::sqrt(2.0) / 2.0) * identity2());
    return alpha;
}

/// Single node, trivial coin, identity loop.
inline KrausFamily single_loop_family(int coin_dim = 1) {
    KrausFamily family(1, coin_dim);
    family.set_operator(0, 0, CMat::Identity(coin_dim, coin_dim));
    return family;
}

}  // namespace oqwlab::testing
