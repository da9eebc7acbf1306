#include "oqwlab/szegedy.hpp"

#include <cmath>

#include "oqwlab/quantizer.hpp"

namespace oqwlab {

StochasticMatrix::StochasticMatrix(RMat p) : p_(std::move(p)) {
    if (p_.rows() != p_.cols() || p_.rows() < 1) {
        throw ShapeMismatchError("StochasticMatrix: matrix must be square and nonempty");
    }
    if (!p_.allFinite()) {
        throw NotFiniteError("StochasticMatrix: non-finite entries");
    }
    for (Eigen::Index c = 0; c < p_.cols(); ++c) {
        double sum = 0.0;
        for (Eigen::Index r = 0; r < p_.rows(); ++r) {
            const double e = p_(r, c);
            if (e < 0.0 || e > 1.0 + 1e-12) {
                throw NonStochasticError("StochasticMatrix: entry (" + std::to_string(r) + "," +
                                         std::to_string(c) + ") = " + str(e));
            }
            sum += e;
        }
        if (std::abs(sum - 1.0) >= 1e-9) {
            throw NonStochasticError("StochasticMatrix: column " + std::to_string(c) +
                                     " sums to " + str(sum));
        }
    }
}

CoinUnitaryFamily::CoinUnitaryFamily(int num_nodes, int coin_dim)
    : num_nodes_(num_nodes), coin_dim_(coin_dim) {
    if (num_nodes < 1 || coin_dim < 1) {
        throw DimensionMismatchError("CoinUnitaryFamily: need num_nodes >= 1 and coin_dim >= 1");
    }
}

void CoinUnitaryFamily::set_coin(int j, int k, CMat u) {
    if (j < 0 || j >= num_nodes_ || k < 0 || k >= num_nodes_) {
        throw IndexOutOfRangeError("CoinUnitaryFamily: pair (" + std::to_string(j) + "," +
                                   std::to_string(k) + ") out of range");
    }
    if (u.rows() != coin_dim_ || u.cols() != coin_dim_) {
        throw ShapeMismatchError("CoinUnitaryFamily: coin must be " + std::to_string(coin_dim_) +
                                 "x" + std::to_string(coin_dim_));
    }
    const double dev = (u.adjoint() * u - CMat::Identity(coin_dim_, coin_dim_)).norm();
    if (dev >= 1e-9) {
        throw NonUnitaryCoinError("CoinUnitaryFamily: unitarity residual " + str(dev) +
                                  " at pair (" + std::to_string(j) + "," + std::to_string(k) + ")");
    }
    coins_[std::make_pair(j, k)] = std::move(u);
}

CMat CoinUnitaryFamily::coin(int j, int k) const {
    const auto it = coins_.find(std::make_pair(j, k));
    return it == coins_.end() ? CMat::Identity(coin_dim_, coin_dim_) : it->second;
}

KrausFamily from_stochastic(const StochasticMatrix& p, const CoinUnitaryFamily& coins,
                            int coin_dim) {
    if (coins.num_nodes() != p.size() || coins.coin_dim() != coin_dim) {
        throw DimensionMismatchError("from_stochastic: coin family does not match");
    }
    KrausFamily family(p.size(), coin_dim);
    for (int j = 0; j < p.size(); ++j) {
        for (int k = 0; k < p.size(); ++k) {
            const double pkj = p.prob(k, j);
            if (pkj > 0.0) {
                family.set_operator(j, k, std::sqrt(pkj) * coins.coin(j, k));
            }
        }
    }
    return family;
}

RVec szegedy_step_reference(const StochasticMatrix& p, int j0, int k0) {
    const int n = p.size();
    if (j0 < 0 || j0 >= n || k0 < 0 || k0 >= n) {
        throw IndexOutOfRangeError("szegedy_step_reference: pair out of range");
    }
    RVec out = RVec::Zero(n * n);
    const double root = 2.0 * std::sqrt(p.prob(k0, j0));
    for (int k = 0; k < n; ++k) {
        out[k * n + j0] += root * std::sqrt(p.prob(k, j0));
    }
    out[k0 * n + j0] -= 1.0;
    return out;
}

namespace {

double reduction_residual(const QuantizedWalk& walk, const StochasticMatrix& p, int j0, int k0) {
    const int n = walk.coin_dim();
    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
    const CMat slot = inv_sqrt_n * CMat::Identity(n, n);

    AugmentedState alpha(p.size(), n);
    alpha.set_amplitude(j0, k0, slot);
    const AugmentedState stepped = apply_U(walk, alpha);

    const RVec reference = szegedy_step_reference(p, j0, k0);
    AugmentedState expected(p.size(), n);
    for (int a = 0; a < p.size(); ++a) {
        for (int b = 0; b < p.size(); ++b) {
            const double w = reference[a * p.size() + b];
            if (w != 0.0) expected.set_amplitude(a, b, w * slot);
        }
    }
    return distance(stepped, expected);
}

}  // namespace

double verify_reduction(const StochasticMatrix& p, const CoinUnitaryFamily& coins, int j0,
                        int k0) {
    const QuantizedWalk walk(from_stochastic(p, coins, coins.coin_dim()));
    return reduction_residual(walk, p, j0, k0);
}

SzegedyReductionReport szegedy_reduction_report(const StochasticMatrix& p,
                                                const CoinUnitaryFamily& coins, int coin_dim) {
    const QuantizedWalk walk(from_stochastic(p, coins, coin_dim));

    SzegedyReductionReport report;
    for (int j0 = 0; j0 < p.size(); ++j0) {
        for (int k0 = 0; k0 < p.size(); ++k0) {
            report.max_reduction_residual =
                std::max(report.max_reduction_residual, reduction_residual(walk, p, j0, k0));
        }
    }
    for (int j = 0; j < p.size(); ++j) {
        for (int k = 0; k < p.size(); ++k) {
            const double expected = std::sqrt(p.prob(k, j) * p.prob(j, k));
            report.d_matrix_residual = std::max(report.d_matrix_residual,
                                                std::abs(walk.d_matrix()(j, k) - expected));
        }
    }
    return report;
}

}  // namespace oqwlab
