#include "oqwlab/density.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <set>

namespace oqwlab {

DensityOperator::DensityOperator(int num_nodes, int coin_dim)
    : num_nodes_(num_nodes), coin_dim_(coin_dim) {
    if (num_nodes < 1 || coin_dim < 1) {
        throw DimensionMismatchError("DensityOperator: need num_nodes >= 1 and coin_dim >= 1");
    }
}

void DensityOperator::check_indices(int j, int jp) const {
    if (j < 0 || j >= num_nodes_ || jp < 0 || jp >= num_nodes_) {
        throw IndexOutOfRangeError("DensityOperator: block (" + std::to_string(j) + "," +
                                   std::to_string(jp) + ") out of range");
    }
}

void DensityOperator::set_block(int j, int jp, CMat rho) {
    check_indices(j, jp);
    if (rho.rows() != coin_dim_ || rho.cols() != coin_dim_) {
        throw ShapeMismatchError("DensityOperator: block must be " + std::to_string(coin_dim_) +
                                 "x" + std::to_string(coin_dim_));
    }
    if (!rho.allFinite()) {
        throw NotFiniteError("DensityOperator: non-finite block entries");
    }
    blocks_[std::make_pair(j, jp)] = std::move(rho);
}

void DensityOperator::add_to_block(int j, int jp, const CMat& rho) {
    check_indices(j, jp);
    auto it = blocks_.find(std::make_pair(j, jp));
    if (it == blocks_.end()) {
        set_block(j, jp, rho);
    } else {
        it->second += rho;
    }
}

const CMat* DensityOperator::block_at(int j, int jp) const {
    const auto it = blocks_.find(std::make_pair(j, jp));
    return it == blocks_.end() ? nullptr : &it->second;
}

CMat DensityOperator::block(int j, int jp) const {
    check_indices(j, jp);
    const CMat* b = block_at(j, jp);
    return b ? *b : CMat::Zero(coin_dim_, coin_dim_);
}

double DensityOperator::trace() const {
    Complex t = 0.0;
    for (int j = 0; j < num_nodes_; ++j) {
        if (const CMat* b = block_at(j, j)) t += b->trace();
    }
    return t.real();
}

CMat DensityOperator::to_dense() const {
    CMat dense = CMat::Zero(num_nodes_ * coin_dim_, num_nodes_ * coin_dim_);
    for (const auto& [key, b] : blocks_) {
        dense.block(key.first * coin_dim_, key.second * coin_dim_, coin_dim_, coin_dim_) = b;
    }
    return dense;
}

void DensityOperator::validate(double tol) const {
    // Hermiticity blockwise: rho_{jj'} must equal rho_{j'j}^dag.
    std::set<std::pair<int, int>> keys;
    for (const auto& [key, b] : blocks_) {
        (void)b;
        keys.insert(key);
        keys.insert(std::make_pair(key.second, key.first));
    }
    for (const auto& [j, jp] : keys) {
        const double dev = (block(j, jp) - block(jp, j).adjoint()).norm();
        if (dev >= tol) {
            throw NotHermitianError("DensityOperator: block (" + std::to_string(j) + "," +
                                    std::to_string(jp) + ") Hermiticity residual " +
                                    str(dev));
        }
    }

    const double tr = trace();
    if (std::abs(tr - 1.0) >= tol) {
        throw Error("DensityOperator: trace " + str(tr) + " is not 1");
    }

    const CMat dense = to_dense();
    Eigen::SelfAdjointEigenSolver<CMat> solver(0.5 * (dense + dense.adjoint()));
    if (solver.eigenvalues().minCoeff() < -tol) {
        throw NotPSDError("DensityOperator: minimum eigenvalue " +
                          str(solver.eigenvalues().minCoeff()));
    }
}

DensityOperator DensityOperator::node_state(int num_nodes, int node, const CMat& coin) {
    DensityOperator rho(num_nodes, static_cast<int>(coin.rows()));
    rho.set_block(node, node, coin);
    return rho;
}

double frobenius_distance(const DensityOperator& a, const DensityOperator& b) {
    if (a.num_nodes() != b.num_nodes() || a.coin_dim() != b.coin_dim()) {
        throw DimensionMismatchError("frobenius_distance: incompatible density operators");
    }
    std::set<std::pair<int, int>> keys;
    for (const auto& [key, blk] : a.blocks()) (void)blk, keys.insert(key);
    for (const auto& [key, blk] : b.blocks()) (void)blk, keys.insert(key);
    double sq = 0.0;
    for (const auto& [j, jp] : keys) {
        sq += (a.block(j, jp) - b.block(j, jp)).squaredNorm();
    }
    return std::sqrt(sq);
}

}  // namespace oqwlab
