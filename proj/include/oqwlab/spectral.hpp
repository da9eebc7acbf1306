#pragma once

#include <vector>

#include "oqwlab/augmented.hpp"
#include "oqwlab/quantizer.hpp"

namespace oqwlab {

/// Two eigenvalues of U are treated as equal when their phases (canonicalized
/// to [0, 2pi)) differ by less than this.
inline constexpr double kEigenvaluePhaseTol = 1e-9;

/// Spectrum of D split at +-1: eigenvalues within 1e-9 of the boundary are
/// clamped onto it and classified accordingly; the rest lie strictly inside
/// (-1, 1). The eigenvectors across all three lists form an orthonormal basis
/// of the node space.
struct DSpectrum {
    struct InteriorPair {
        double lambda;
        RVec vector;
    };
    std::vector<InteriorPair> interior;
    std::vector<RVec> plus_one;
    std::vector<RVec> minus_one;

    int dimension() const;
};

DSpectrum classify_spectrum(const RMat& d);

/// Unit-modulus eigenvalues of U with their eigenvectors, plus the partition of
/// indices into groups of equal eigenvalue. The asymptotic mean distribution
/// sums only within groups.
struct UEigenSystem {
    struct Pair {
        Complex eigenvalue;
        AugmentedState vector;
    };
    std::vector<Pair> pairs;
    std::vector<std::vector<int>> groups;
};

/// Partition indices of `values` into groups equal within phase_tol.
std::vector<std::vector<int>> group_by_eigenvalue(const std::vector<Complex>& values,
                                                  double phase_tol = kEigenvaluePhaseTol);

/// Closed-form eigensystem of U on the invariant subspace span{psi_j, S psi_j}:
///   interior lambda -> (A w - e^{+-i arccos lambda} S A w)/sqrt(2 - 2 lambda^2)
///                      with eigenvalue e^{+-i arccos lambda},
///   lambda = +1     -> A u with eigenvalue +1,
///   lambda = -1     -> A v with eigenvalue -1.
/// Vectors sharing an eigenvalue are re-orthonormalized.
UEigenSystem u_eigensystem(const QuantizedWalk& walk, const DSpectrum& spec);

/// Residuals of the complement action: on states orthogonal to every psi_j and
/// S psi_j, U acts as -S and U^2 as the identity. Throws NotInComplementError
/// when the state has overlap >= 1e-9 with one of those.
struct ComplementResiduals {
    double u_plus_s;             // ||U alpha + S alpha||
    double u_squared_minus_one;  // ||U^2 alpha - alpha||
};

ComplementResiduals complement_check(const QuantizedWalk& walk, const AugmentedState& state);

/// Full eigensystem of the dense U oracle, via a complex Schur decomposition so
/// eigenvectors come out orthonormal even inside degenerate eigenvalue
/// clusters (U is normal). Subject to the dense size guard.
UEigenSystem dense_u_eigensystem(const QuantizedWalk& walk);

}  // namespace oqwlab
