#include "oqwlab/augmented.hpp"

#include <cmath>

namespace oqwlab {

AugmentedState::AugmentedState(int num_nodes, int coin_dim)
    : num_nodes_(num_nodes), coin_dim_(coin_dim) {
    if (num_nodes < 1 || coin_dim < 1) {
        throw DimensionMismatchError("AugmentedState: need num_nodes >= 1 and coin_dim >= 1");
    }
}

void AugmentedState::check_indices(int j, int k) const {
    if (j < 0 || j >= num_nodes_ || k < 0 || k >= num_nodes_) {
        throw IndexOutOfRangeError("AugmentedState: pair (" + std::to_string(j) + "," +
                                   std::to_string(k) + ") out of range");
    }
}

void AugmentedState::set_amplitude(int j, int k, CMat a) {
    check_indices(j, k);
    if (a.rows() != coin_dim_ || a.cols() != coin_dim_) {
        throw ShapeMismatchError("AugmentedState: amplitude must be " + std::to_string(coin_dim_) +
                                 "x" + std::to_string(coin_dim_));
    }
    if (!a.allFinite()) {
        throw NotFiniteError("AugmentedState: non-finite amplitude entries");
    }
    amps_[std::make_pair(j, k)] = std::move(a);
}

void AugmentedState::add_amplitude(int j, int k, const CMat& a) {
    check_indices(j, k);
    auto it = amps_.find(std::make_pair(j, k));
    if (it == amps_.end()) {
        set_amplitude(j, k, a);
    } else {
        it->second += a;
    }
}

const CMat* AugmentedState::amplitude_at(int j, int k) const {
    const auto it = amps_.find(std::make_pair(j, k));
    return it == amps_.end() ? nullptr : &it->second;
}

CMat AugmentedState::amplitude(int j, int k) const {
    check_indices(j, k);
    const CMat* a = amplitude_at(j, k);
    return a ? *a : CMat::Zero(coin_dim_, coin_dim_);
}

double AugmentedState::squared_norm() const {
    double sq = 0.0;
    for (const auto& [key, a] : amps_) {
        (void)key;
        sq += a.squaredNorm();
    }
    return sq;
}

double AugmentedState::norm() const { return std::sqrt(squared_norm()); }

Complex AugmentedState::inner(const AugmentedState& other) const {
    if (num_nodes_ != other.num_nodes_ || coin_dim_ != other.coin_dim_) {
        throw DimensionMismatchError("AugmentedState::inner: incompatible states");
    }
    Complex sum = 0.0;
    for (const auto& [key, a] : amps_) {
        const auto it = other.amps_.find(key);
        if (it != other.amps_.end()) {
            sum += hs_inner(a, it->second);
        }
    }
    return sum;
}

AugmentedState& AugmentedState::operator*=(Complex s) {
    for (auto& [key, a] : amps_) {
        (void)key;
        a *= s;
    }
    return *this;
}

AugmentedState& AugmentedState::add_scaled(Complex s, const AugmentedState& other) {
    if (num_nodes_ != other.num_nodes_ || coin_dim_ != other.coin_dim_) {
        throw DimensionMismatchError("AugmentedState::add_scaled: incompatible states");
    }
    for (const auto& [key, a] : other.amps_) {
        auto it = amps_.find(key);
        if (it == amps_.end()) {
            amps_[key] = s * a;
        } else {
            it->second += s * a;
        }
    }
    return *this;
}

void AugmentedState::drop_zero_slots(double tol) {
    for (auto it = amps_.begin(); it != amps_.end();) {
        if (it->second.norm() <= tol) {
            it = amps_.erase(it);
        } else {
            ++it;
        }
    }
}

double distance(const AugmentedState& a, const AugmentedState& b) {
    AugmentedState diff = a;
    diff.add_scaled(-1.0, b);
    return diff.norm();
}

CVec to_vector(const AugmentedState& state) {
    const int v = state.num_nodes();
    const int n = state.coin_dim();
    CVec out = CVec::Zero(augmented_dim(v, n));
    for (const auto& [key, a] : state.amplitudes()) {
        const int base = (key.first * v + key.second) * n * n;
        for (int r = 0; r < n; ++r) {
            for (int c = 0; c < n; ++c) {
                out[base + r * n + c] = a(r, c);
            }
        }
    }
    return out;
}

AugmentedState state_from_vector(int num_nodes, int coin_dim, const CVec& v) {
    if (v.size() != augmented_dim(num_nodes, coin_dim)) {
        throw DimensionMismatchError("state_from_vector: vector has wrong length");
    }
    AugmentedState state(num_nodes, coin_dim);
    const int n = coin_dim;
    for (int j = 0; j < num_nodes; ++j) {
        for (int k = 0; k < num_nodes; ++k) {
            const int base = (j * num_nodes + k) * n * n;
            CMat a(n, n);
            bool nonzero = false;
            for (int r = 0; r < n; ++r) {
                for (int c = 0; c < n; ++c) {
                    a(r, c) = v[base + r * n + c];
                    nonzero = nonzero || a(r, c) != Complex(0.0, 0.0);
                }
            }
            if (nonzero) state.set_amplitude(j, k, std::move(a));
        }
    }
    return state;
}

}  // namespace oqwlab
