#pragma once

#include <map>
#include <utility>

#include "oqwlab/kraus.hpp"
#include "oqwlab/numerics.hpp"

namespace oqwlab {

/// Column-stochastic transition matrix: entry (k, j) is the probability of
/// moving to k from j, so every column sums to 1.
class StochasticMatrix {
public:
    explicit StochasticMatrix(RMat p);

    const RMat& matrix() const { return p_; }
    int size() const { return static_cast<int>(p_.rows()); }
    double prob(int to_k, int from_j) const { return p_(to_k, from_j); }

private:
    RMat p_;
};

/// Unitary coin per node pair; pairs without an explicit entry default to the
/// identity.
class CoinUnitaryFamily {
public:
    CoinUnitaryFamily(int num_nodes, int coin_dim);

    void set_coin(int j, int k, CMat u);  // NonUnitaryCoin if ||U^dag U - I|| >= 1e-9
    CMat coin(int j, int k) const;

    int num_nodes() const { return num_nodes_; }
    int coin_dim() const { return coin_dim_; }

private:
    int num_nodes_;
    int coin_dim_;
    std::map<std::pair<int, int>, CMat> coins_;
};

/// B_j^k = sqrt(p_kj) U_j^k on every pair with p_kj > 0. Completeness holds by
/// stochasticity, so the result passes validate_kraus.
KrausFamily from_stochastic(const StochasticMatrix& p, const CoinUnitaryFamily& coins,
                            int coin_dim);

/// One step of the pair-space walk applied to the basis ket |j0, k0>:
///   2 sqrt(p_{k0 j0}) sum_k sqrt(p_{k j0}) |k, j0>  -  |k0, j0>,
/// returned over the pair basis with |a, b> at index a*N + b. Unit norm.
RVec szegedy_step_reference(const StochasticMatrix& p, int j0, int k0);

/// Distance between U applied to (1/sqrt(n)) I_n at slot (j0, k0) of the
/// quantized walk and the identity-slot embedding of szegedy_step_reference.
/// Zero (up to roundoff) for every coin family.
double verify_reduction(const StochasticMatrix& p, const CoinUnitaryFamily& coins, int j0,
                        int k0);

/// verify_reduction over every basis pair with the walk built once, plus the
/// entrywise check of D against sqrt(p_kj * p_jk).
struct SzegedyReductionReport {
    double max_reduction_residual = 0.0;
    double d_matrix_residual = 0.0;  // max |d_jk - sqrt(p_kj p_jk)|
};

SzegedyReductionReport szegedy_reduction_report(const StochasticMatrix& p,
                                                const CoinUnitaryFamily& coins, int coin_dim);

}  // namespace oqwlab
