#pragma once

#include <map>
#include <utility>

#include "oqwlab/numerics.hpp"

namespace oqwlab {

/// Density operator on coin (x) position space, stored blockwise: block (j, j')
/// is the n x n coin-space matrix rho_{jj'}. Absent blocks are zero. Node
/// probabilities and the walk map are block-natural; the dense (n|V|) x (n|V|)
/// form is assembled only for positivity checks.
class DensityOperator {
public:
    DensityOperator(int num_nodes, int coin_dim);

    void set_block(int j, int jp, CMat rho);
    void add_to_block(int j, int jp, const CMat& rho);

    /// nullptr when the block is absent (zero).
    const CMat* block_at(int j, int jp) const;
    CMat block(int j, int jp) const;  // zero matrix when absent

    const std::map<std::pair<int, int>, CMat>& blocks() const { return blocks_; }
    int num_nodes() const { return num_nodes_; }
    int coin_dim() const { return coin_dim_; }

    /// Re tr(rho) = sum_j tr(rho_jj).
    double trace() const;

    CMat to_dense() const;

    /// Checks blockwise Hermiticity, unit trace, and positivity of the dense form.
    /// Throws NotHermitianError / Error / NotPSDError respectively.
    void validate(double tol = 1e-9) const;

    /// coin (x) |node><node|
    static DensityOperator node_state(int num_nodes, int node, const CMat& coin);

private:
    void check_indices(int j, int jp) const;

    int num_nodes_;
    int coin_dim_;
    std::map<std::pair<int, int>, CMat> blocks_;
};

double frobenius_distance(const DensityOperator& a, const DensityOperator& b);

}  // namespace oqwlab
