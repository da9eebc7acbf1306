#include "oqwlab/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>

namespace oqwlab {

int DSpectrum::dimension() const {
    return static_cast<int>(interior.size() + plus_one.size() + minus_one.size());
}

DSpectrum classify_spectrum(const RMat& d) {
    if (d.rows() != d.cols()) {
        throw ShapeMismatchError("classify_spectrum: matrix is not square");
    }
    if ((d - d.transpose()).norm() >= 1e-9 * rel_scale(d)) {
        throw NotHermitianError("classify_spectrum: matrix is not symmetric");
    }

    Eigen::SelfAdjointEigenSolver<RMat> solver(0.5 * (d + d.transpose()));
    DSpectrum spec;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
        double lambda = solver.eigenvalues()[i];
        if (std::abs(lambda) > 1.0 + 1e-9) {
            throw SpectrumOutOfRangeError("classify_spectrum: eigenvalue " +
                                          str(lambda) + " outside [-1, 1]");
        }
        lambda = std::clamp(lambda, -1.0, 1.0);
        const RVec vec = solver.eigenvectors().col(i);
        if (std::abs(lambda - 1.0) < 1e-9) {
            spec.plus_one.push_back(vec);
        } else if (std::abs(lambda + 1.0) < 1e-9) {
            spec.minus_one.push_back(vec);
        } else {
            spec.interior.push_back({lambda, vec});
        }
    }
    return spec;
}

namespace {

double canonical_phase(Complex z) {
    double p = std::arg(z);
    if (p < 0.0) p += 2.0 * std::numbers::pi;
    if (p >= 2.0 * std::numbers::pi) p = 0.0;
    return p;
}

/// Modified Gram-Schmidt inside a single eigenvalue group. The group spans an
/// eigenspace, so orthonormalizing cannot mix eigenvalues.
void orthonormalize_group(std::vector<UEigenSystem::Pair>& pairs, const std::vector<int>& group) {
    for (std::size_t a = 0; a < group.size(); ++a) {
        AugmentedState& va = pairs[group[a]].vector;
        for (std::size_t b = 0; b < a; ++b) {
            const AugmentedState& vb = pairs[group[b]].vector;
            const Complex overlap = vb.inner(va);
            if (overlap != Complex(0.0, 0.0)) {
                va.add_scaled(-overlap, vb);
            }
        }
        const double nrm = va.norm();
        if (nrm < 1e-12) {
            throw DegenerateNormalizationError(
                "u_eigensystem: eigenvalue group is linearly dependent");
        }
        va *= Complex(1.0 / nrm, 0.0);
    }
}

}  // namespace

std::vector<std::vector<int>> group_by_eigenvalue(const std::vector<Complex>& values,
                                                  double phase_tol) {
    std::vector<int> order(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return canonical_phase(values[a]) < canonical_phase(values[b]);
    });

    std::vector<std::vector<int>> groups;
    for (int idx : order) {
        const double phase = canonical_phase(values[idx]);
        if (!groups.empty()) {
            const double prev = canonical_phase(values[groups.back().back()]);
            if (phase - prev < phase_tol) {
                groups.back().push_back(idx);
                continue;
            }
        }
        groups.push_back({idx});
    }

    // Phases straddling the 0 / 2pi seam belong together.
    if (groups.size() > 1) {
        const double first = canonical_phase(values[groups.front().front()]);
        const double last = canonical_phase(values[groups.back().back()]);
        if (first + 2.0 * std::numbers::pi - last < phase_tol) {
            auto& dst = groups.front();
            dst.insert(dst.end(), groups.back().begin(), groups.back().end());
            groups.pop_back();
        }
    }
    return groups;
}

UEigenSystem u_eigensystem(const QuantizedWalk& walk, const DSpectrum& spec) {
    if (spec.dimension() != walk.num_nodes()) {
        throw DimensionMismatchError("u_eigensystem: spectrum does not match the walk");
    }

    UEigenSystem eig;
    for (const auto& [lambda, w] : spec.interior) {
        if (lambda * lambda >= 1.0 - 1e-12) {
            throw DegenerateNormalizationError(
                "u_eigensystem: interior eigenvalue " + str(lambda) +
                " too close to the boundary");
        }
        const double theta = std::acos(lambda);
        const double scale = 1.0 / std::sqrt(2.0 - 2.0 * lambda * lambda);
        const AugmentedState aw = apply_A(walk, w.cast<Complex>());
        const AugmentedState saw = apply_swap(aw);
        for (const double sign : {+1.0, -1.0}) {
            const Complex mu = std::polar(1.0, sign * theta);
            AugmentedState vec = aw;
            vec.add_scaled(-mu, saw);
            vec *= Complex(scale, 0.0);
            eig.pairs.push_back({mu, std::move(vec)});
        }
    }
    for (const RVec& u : spec.plus_one) {
        eig.pairs.push_back({Complex(1.0, 0.0), apply_A(walk, u.cast<Complex>())});
    }
    for (const RVec& v : spec.minus_one) {
        eig.pairs.push_back({Complex(-1.0, 0.0), apply_A(walk, v.cast<Complex>())});
    }

    std::vector<Complex> values;
    values.reserve(eig.pairs.size());
    for (const auto& p : eig.pairs) values.push_back(p.eigenvalue);
    eig.groups = group_by_eigenvalue(values);

    for (const auto& group : eig.groups) {
        if (group.size() > 1) orthonormalize_group(eig.pairs, group);
    }
    return eig;
}

ComplementResiduals complement_check(const QuantizedWalk& walk, const AugmentedState& state) {
    for (int j = 0; j < walk.num_nodes(); ++j) {
        const AugmentedState& psi = walk.psi()[j];
        const double with_psi = std::abs(psi.inner(state));
        const double with_spsi = std::abs(apply_swap(psi).inner(state));
        if (with_psi >= 1e-9 || with_spsi >= 1e-9) {
            throw NotInComplementError("complement_check: overlap with psi_" +
                                       std::to_string(j + 1) + " or its swap is " +
                                       str(std::max(with_psi, with_spsi)));
        }
    }
    const AugmentedState u1 = apply_U(walk, state);
    const AugmentedState u2 = apply_U(walk, u1);

    AugmentedState sum = u1;
    sum.add_scaled(1.0, apply_swap(state));
    return ComplementResiduals{sum.norm(), distance(u2, state)};
}

UEigenSystem dense_u_eigensystem(const QuantizedWalk& walk) {
    const CMat u = dense_U(walk);

    // U is normal, so its Schur form is diagonal up to roundoff and the Schur
    // basis is a set of orthonormal eigenvectors; no per-cluster cleanup of raw
    // eigensolver output is needed.
    Eigen::ComplexSchur<CMat> schur(u, /*computeU=*/true);
    if (schur.info() != Eigen::Success) {
        throw Error("dense_u_eigensystem: Schur decomposition did not converge");
    }

    UEigenSystem eig;
    const int dim = static_cast<int>(u.rows());
    std::vector<Complex> values;
    values.reserve(dim);
    for (int l = 0; l < dim; ++l) {
        const Complex mu = schur.matrixT()(l, l);
        eig.pairs.push_back(
            {mu, state_from_vector(walk.num_nodes(), walk.coin_dim(), schur.matrixU().col(l))});
        values.push_back(mu);
    }
    eig.groups = group_by_eigenvalue(values);
    return eig;
}

}  // namespace oqwlab
