#pragma once

#include <map>
#include <utility>
#include <vector>

#include "oqwlab/numerics.hpp"

namespace oqwlab {

/// Residual of the completeness relation at each node must stay below this.
inline constexpr double kKrausTol = 1e-9;

/// A directed graph with an edge operator B_j^k per edge (j -> k), all acting on
/// an n-dimensional coin space. An absent edge is the zero operator. The family
/// defines an open quantum walk when, for every source node j,
/// sum_k B_j^k^dag B_j^k = I_n.
class KrausFamily {
public:
    KrausFamily(int num_nodes, int coin_dim);

    void set_operator(int from, int to, CMat b);

    /// nullptr when the edge is absent.
    const CMat* operator_at(int from, int to) const;

    /// Targets of node `from`, ascending. Stable ordering matters: trajectory
    /// sampling walks this list with an inverse-CDF draw.
    const std::vector<int>& targets(int from) const;

    const std::map<std::pair<int, int>, CMat>& operators() const { return ops_; }
    int num_nodes() const { return num_nodes_; }
    int coin_dim() const { return coin_dim_; }

private:
    int num_nodes_;
    int coin_dim_;
    std::map<std::pair<int, int>, CMat> ops_;
    std::vector<std::vector<int>> targets_;
};

struct KrausValidation {
    std::vector<double> node_residuals;  // ||sum_k B_j^k^dag B_j^k - I||_F per node
    double tolerance = kKrausTol;
    bool passes() const;
    int first_failing_node() const;  // -1 when none
};

KrausValidation validate_kraus(const KrausFamily& family);

/// Throws IncompleteKrausError at the first node violating completeness.
void require_valid(const KrausFamily& family);

}  // namespace oqwlab
