#include "oqwlab/quantizer.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace oqwlab {

namespace {

std::map<std::pair<int, int>, CMat> build_sqrt_cache(const KrausFamily& family) {
    std::map<std::pair<int, int>, CMat> cache;
    for (const auto& [edge, b] : family.operators()) {
        cache[edge] = psd_sqrt(b.adjoint() * b);
    }
    return cache;
}

std::vector<AugmentedState> psi_from_cache(const KrausFamily& family,
                                           const std::map<std::pair<int, int>, CMat>& cache) {
    const int v = family.num_nodes();
    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(family.coin_dim()));
    std::vector<AugmentedState> psi;
    psi.reserve(v);
    for (int j = 0; j < v; ++j) {
        AugmentedState state(v, family.coin_dim());
        for (int k : family.targets(j)) {
            state.set_amplitude(j, k, inv_sqrt_n * cache.at(std::make_pair(j, k)));
        }
        psi.push_back(std::move(state));
    }
    return psi;
}

RMat d_from_cache(const KrausFamily& family,
                  const std::map<std::pair<int, int>, CMat>& cache) {
    const int v = family.num_nodes();
    const double inv_n = 1.0 / family.coin_dim();
    RMat d = RMat::Zero(v, v);
    for (int j = 0; j < v; ++j) {
        for (int k : family.targets(j)) {
            const auto back = cache.find(std::make_pair(k, j));
            if (back == cache.end()) continue;  // reverse edge absent -> entry is 0
            d(j, k) = inv_n * (cache.at(std::make_pair(j, k)) * back->second).trace().real();
        }
    }

    Eigen::SelfAdjointEigenSolver<RMat> solver(0.5 * (d + d.transpose()));
    const double low = solver.eigenvalues().minCoeff();
    const double high = solver.eigenvalues().maxCoeff();
    if (low < -1.0 - 1e-9 || high > 1.0 + 1e-9) {
        throw SpectrumOutOfRangeError("build_D: spectrum [" + str(low) + ", " + str(high) +
                                      "] escapes [-1, 1]");
    }
    return d;
}

}  // namespace

std::vector<AugmentedState> build_psi(const KrausFamily& family) {
    require_valid(family);
    return psi_from_cache(family, build_sqrt_cache(family));
}

RMat build_D(const KrausFamily& family) {
    require_valid(family);
    return d_from_cache(family, build_sqrt_cache(family));
}

QuantizedWalk::QuantizedWalk(KrausFamily family) : family_(std::move(family)) {
    require_valid(family_);
    sqrt_cache_ = build_sqrt_cache(family_);
    psi_ = psi_from_cache(family_, sqrt_cache_);
    d_ = d_from_cache(family_, sqrt_cache_);
}

const CMat& QuantizedWalk::sqrt_op(int j, int k) const {
    const auto it = sqrt_cache_.find(std::make_pair(j, k));
    if (it == sqrt_cache_.end()) {
        throw IndexOutOfRangeError("QuantizedWalk: no edge (" + std::to_string(j) + "," +
                                   std::to_string(k) + ")");
    }
    return it->second;
}

int QuantizedWalk::augmented_dim() const {
    return oqwlab::augmented_dim(family_.num_nodes(), family_.coin_dim());
}

AugmentedState apply_swap(const AugmentedState& state) {
    AugmentedState out(state.num_nodes(), state.coin_dim());
    for (const auto& [key, a] : state.amplitudes()) {
        out.set_amplitude(key.second, key.first, a);
    }
    return out;
}

AugmentedState apply_reflection(const QuantizedWalk& walk, const AugmentedState& state) {
    if (state.num_nodes() != walk.num_nodes() || state.coin_dim() != walk.coin_dim()) {
        throw DimensionMismatchError("apply_reflection: state does not match the walk");
    }
    const CVec c = apply_A_adjoint(walk, state);
    AugmentedState out = state;
    out *= -1.0;
    for (int j = 0; j < walk.num_nodes(); ++j) {
        if (c[j] != Complex(0.0, 0.0)) {
            out.add_scaled(2.0 * c[j], walk.psi()[j]);
        }
    }
    return out;
}

AugmentedState apply_U(const QuantizedWalk& walk, const AugmentedState& state) {
    return apply_swap(apply_reflection(walk, state));
}

AugmentedState apply_A(const QuantizedWalk& walk, const CVec& v) {
    if (v.size() != walk.num_nodes()) {
        throw DimensionMismatchError("apply_A: vector length does not match the node count");
    }
    AugmentedState out(walk.num_nodes(), walk.coin_dim());
    for (int j = 0; j < walk.num_nodes(); ++j) {
        if (v[j] != Complex(0.0, 0.0)) {
            out.add_scaled(v[j], walk.psi()[j]);
        }
    }
    return out;
}

CVec apply_A_adjoint(const QuantizedWalk& walk, const AugmentedState& state) {
    if (state.num_nodes() != walk.num_nodes() || state.coin_dim() != walk.coin_dim()) {
        throw DimensionMismatchError("apply_A_adjoint: state does not match the walk");
    }
    CVec c(walk.num_nodes());
    for (int j = 0; j < walk.num_nodes(); ++j) {
        c[j] = walk.psi()[j].inner(state);
    }
    return c;
}

IdentityReport verify_identities(const QuantizedWalk& walk) {
    const int v = walk.num_nodes();
    IdentityReport report{};

    // A^dag A is the Gram matrix of the psi states.
    CMat gram(v, v);
    for (int i = 0; i < v; ++i) {
        for (int j = 0; j < v; ++j) {
            gram(i, j) = walk.psi()[i].inner(walk.psi()[j]);
        }
    }
    report.isometry = (gram - CMat::Identity(v, v)).norm();

    // A A^dag versus Pi over every slot basis state, via two distinct routes.
    const int dim = walk.augmented_dim();
    double worst = 0.0;
    for (int idx = 0; idx < dim; ++idx) {
        CVec e = CVec::Zero(dim);
        e[idx] = 1.0;
        const AugmentedState basis = state_from_vector(v, walk.coin_dim(), e);
        const AugmentedState via_a = apply_A(walk, apply_A_adjoint(walk, basis));
        AugmentedState via_reflection = apply_reflection(walk, basis);
        via_reflection.add_scaled(1.0, basis);
        via_reflection *= 0.5;
        worst = std::max(worst, distance(via_a, via_reflection));
    }
    report.projector = worst;

    // A^dag S A against D.
    CMat asa(v, v);
    for (int i = 0; i < v; ++i) {
        for (int j = 0; j < v; ++j) {
            asa(i, j) = walk.psi()[i].inner(apply_swap(walk.psi()[j]));
        }
    }
    report.discriminant = (asa - walk.d_matrix().cast<Complex>()).norm();
    return report;
}

CMat dense_swap(const QuantizedWalk& walk) {
    const int dim = walk.augmented_dim();
    if (dim > kDenseOracleLimit) {
        throw TooLargeError("dense_swap: dimension " + std::to_string(dim) + " exceeds " +
                            std::to_string(kDenseOracleLimit));
    }
    const int v = walk.num_nodes();
    const int nn = walk.coin_dim() * walk.coin_dim();
    CMat s = CMat::Zero(dim, dim);
    for (int j = 0; j < v; ++j) {
        for (int k = 0; k < v; ++k) {
            for (int e = 0; e < nn; ++e) {
                s((k * v + j) * nn + e, (j * v + k) * nn + e) = 1.0;
            }
        }
    }
    return s;
}

CMat dense_U(const QuantizedWalk& walk) {
    const int dim = walk.augmented_dim();
    if (dim > kDenseOracleLimit) {
        throw TooLargeError("dense_U: dimension " + std::to_string(dim) + " exceeds " +
                            std::to_string(kDenseOracleLimit));
    }
    CMat projector = CMat::Zero(dim, dim);
    for (const AugmentedState& psi : walk.psi()) {
        const CVec w = to_vector(psi);
        projector += w * w.adjoint();
    }
    return dense_swap(walk) * (2.0 * projector - CMat::Identity(dim, dim));
}

}  // namespace oqwlab
