#pragma once

#include <map>
#include <vector>

#include "oqwlab/augmented.hpp"
#include "oqwlab/kraus.hpp"

namespace oqwlab {

/// Largest augmented dimension the dense validation oracles will materialize.
inline constexpr int kDenseOracleLimit = 4096;

/// psi_j = (1/sqrt(n)) sum_k sqrt(B_j^k^dag B_j^k) at slot (j, k). One unit-norm
/// state per node; states for different nodes are orthogonal because their
/// position registers differ.
std::vector<AugmentedState> build_psi(const KrausFamily& family);

/// d_jk = (1/n) tr( sqrt(B_j^k^dag B_j^k) sqrt(B_k^j^dag B_k^j) ). Real,
/// entrywise nonnegative, symmetric, with spectrum in [-1, 1]. Throws
/// SpectrumOutOfRangeError if an eigenvalue strays more than 1e-9 outside.
RMat build_D(const KrausFamily& family);

/// The unitary walk built from a valid family: the psi_j states, the cached
/// operator square roots they are made of, and the matrix D that generates the
/// walk's eigenphases. Immutable after construction.
class QuantizedWalk {
public:
    explicit QuantizedWalk(KrausFamily family);

    const KrausFamily& kraus() const { return family_; }
    const std::vector<AugmentedState>& psi() const { return psi_; }
    const CMat& sqrt_op(int j, int k) const;  // cached sqrt(B_j^k^dag B_j^k)
    const RMat& d_matrix() const { return d_; }

    int num_nodes() const { return family_.num_nodes(); }
    int coin_dim() const { return family_.coin_dim(); }
    int augmented_dim() const;

private:
    KrausFamily family_;
    std::map<std::pair<int, int>, CMat> sqrt_cache_;
    std::vector<AugmentedState> psi_;
    RMat d_;
};

/// Register swap: slot (j, k) moves to (k, j), untouched. An involution.
AugmentedState apply_swap(const AugmentedState& state);

/// (2 Pi - 1) alpha where Pi projects onto span{psi_j}. Norm-preserving.
AugmentedState apply_reflection(const QuantizedWalk& walk, const AugmentedState& state);

/// One walk step U = S (2 Pi - 1).
AugmentedState apply_U(const QuantizedWalk& walk, const AugmentedState& state);

/// A v = sum_j v_j psi_j; an isometry from node space into the augmented space.
AugmentedState apply_A(const QuantizedWalk& walk, const CVec& v);

/// (A^dag alpha)_j = <psi_j, alpha>.
CVec apply_A_adjoint(const QuantizedWalk& walk, const AugmentedState& state);

/// Residuals of A^dag A = I, A A^dag = Pi, and A^dag S A = D. The projector
/// residual compares the coefficient route A(A^dag e) against the reflection
/// route ([2 Pi - 1] e + e)/2 over the full slot basis.
struct IdentityReport {
    double isometry;   // ||A^dag A - I||_F
    double projector;  // max basis deviation of A A^dag from Pi
    double discriminant;  // ||A^dag S A - D||_F
    bool passes(double tol = 1e-9) const {
        return isometry < tol && projector < tol && discriminant < tol;
    }
};

IdentityReport verify_identities(const QuantizedWalk& walk);

/// Dense matrices on the vectorized augmented space (see to_vector for the
/// basis order). Built from the operator definitions, independently of the
/// implicit application path, so they can serve as oracles for it. Throw
/// TooLargeError above kDenseOracleLimit.
CMat dense_swap(const QuantizedWalk& walk);
CMat dense_U(const QuantizedWalk& walk);

}  // namespace oqwlab
