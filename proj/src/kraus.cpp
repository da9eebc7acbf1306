#include "oqwlab/kraus.hpp"

#include <algorithm>

namespace oqwlab {

KrausFamily::KrausFamily(int num_nodes, int coin_dim)
    : num_nodes_(num_nodes), coin_dim_(coin_dim), targets_(std::max(num_nodes, 0)) {
    if (num_nodes < 1 || coin_dim < 1) {
        throw DimensionMismatchError("KrausFamily: need num_nodes >= 1 and coin_dim >= 1");
    }
}

void KrausFamily::set_operator(int from, int to, CMat b) {
    if (from < 0 || from >= num_nodes_ || to < 0 || to >= num_nodes_) {
        throw IndexOutOfRangeError("KrausFamily: edge (" + std::to_string(from) + "," +
                                   std::to_string(to) + ") out of range");
    }
    if (b.rows() != coin_dim_ || b.cols() != coin_dim_) {
        throw ShapeMismatchError("KrausFamily: operator must be " + std::to_string(coin_dim_) +
                                 "x" + std::to_string(coin_dim_));
    }
    if (!b.allFinite()) {
        throw NotFiniteError("KrausFamily: non-finite operator entries");
    }
    const auto key = std::make_pair(from, to);
    if (ops_.find(key) == ops_.end()) {
        auto& t = targets_[from];
        t.insert(std::upper_bound(t.begin(), t.end(), to), to);
    }
    ops_[key] = std::move(b);
}

const CMat* KrausFamily::operator_at(int from, int to) const {
    const auto it = ops_.find(std::make_pair(from, to));
    return it == ops_.end() ? nullptr : &it->second;
}

const std::vector<int>& KrausFamily::targets(int from) const {
    if (from < 0 || from >= num_nodes_) {
        throw IndexOutOfRangeError("KrausFamily: node " + std::to_string(from) + " out of range");
    }
    return targets_[from];
}

bool KrausValidation::passes() const {
    return std::all_of(node_residuals.begin(), node_residuals.end(),
                       [this](double r) { return r < tolerance; });
}

int KrausValidation::first_failing_node() const {
    for (std::size_t j = 0; j < node_residuals.size(); ++j) {
        if (node_residuals[j] >= tolerance) return static_cast<int>(j);
    }
    return -1;
}

KrausValidation validate_kraus(const KrausFamily& family) {
    const int n = family.coin_dim();
    KrausValidation report;
    report.node_residuals.resize(family.num_nodes());
    for (int j = 0; j < family.num_nodes(); ++j) {
        CMat sum = CMat::Zero(n, n);
        for (int k : family.targets(j)) {
            const CMat& b = *family.operator_at(j, k);
            sum += b.adjoint() * b;
        }
        report.node_residuals[j] = (sum - CMat::Identity(n, n)).norm();
    }
    return report;
}

void require_valid(const KrausFamily& family) {
    const KrausValidation report = validate_kraus(family);
    const int bad = report.first_failing_node();
    if (bad >= 0) {
        throw IncompleteKrausError(bad, report.node_residuals[bad]);
    }
}

}  // namespace oqwlab
