#pragma once

#include <map>
#include <utility>

#include "oqwlab/numerics.hpp"

namespace oqwlab {

/// State of the unitary walk: an operator-valued amplitude map on the doubled
/// position register. The slot at (j, k) is an n x n coin-space matrix attached
/// to the basis ket |j, k>; absent slots are zero. The inner product is the
/// Hilbert-Schmidt one summed over slots, so the squared norm is
/// sum_{j,k} tr(A_{jk}^dag A_{jk}).
class AugmentedState {
public:
    AugmentedState(int num_nodes, int coin_dim);

    void set_amplitude(int j, int k, CMat a);
    void add_amplitude(int j, int k, const CMat& a);

    /// nullptr when the slot is absent (zero).
    const CMat* amplitude_at(int j, int k) const;
    CMat amplitude(int j, int k) const;  // zero matrix when absent

    const std::map<std::pair<int, int>, CMat>& amplitudes() const { return amps_; }
    int num_nodes() const { return num_nodes_; }
    int coin_dim() const { return coin_dim_; }

    double squared_norm() const;
    double norm() const;

    /// <this, other>, conjugate-linear in *this.
    Complex inner(const AugmentedState& other) const;

    AugmentedState& operator*=(Complex s);
    AugmentedState& add_scaled(Complex s, const AugmentedState& other);  // *this += s * other

    /// Drops slots whose Frobenius norm is <= tol. With the default only
    /// exactly-zero slots go away.
    void drop_zero_slots(double tol = 0.0);

private:
    void check_indices(int j, int k) const;

    int num_nodes_;
    int coin_dim_;
    std::map<std::pair<int, int>, CMat> amps_;
};

double distance(const AugmentedState& a, const AugmentedState& b);

/// n^2 |V|^2, the dimension of the augmented space.
inline int augmented_dim(int num_nodes, int coin_dim) {
    return num_nodes * num_nodes * coin_dim * coin_dim;
}

/// Vectorization with index ((j*|V| + k)*n + r)*n + c for entry (r, c) of the
/// slot at (j, k). Shared by the dense validation oracles.
CVec to_vector(const AugmentedState& state);
AugmentedState state_from_vector(int num_nodes, int coin_dim, const CVec& v);

}  // namespace oqwlab
