#include "oqwlab/numerics.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace oqwlab {

HermitianEig hermitian_eig(const CMat& m) {
    if (m.rows() != m.cols()) {
        throw ShapeMismatchError("hermitian_eig: matrix is " + std::to_string(m.rows()) + "x" +
                                 std::to_string(m.cols()));
    }
    if (!m.allFinite()) {
        throw NotFiniteError("hermitian_eig: non-finite entries");
    }
    const double scale = rel_scale(m);
    const double asym = (m - m.adjoint()).norm();
    if (asym >= 1e-9 * scale) {
        throw NotHermitianError("hermitian_eig: symmetry residual " + str(asym));
    }

    // Diagonalize the Hermitian part so roundoff-level asymmetry cannot leak through.
    const CMat h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<CMat> solver(h);
    if (solver.info() != Eigen::Success) {
        throw Error("hermitian_eig: eigensolver did not converge");
    }
    return HermitianEig{solver.eigenvalues(), solver.eigenvectors()};
}

CMat psd_sqrt(const CMat& m) {
    const HermitianEig eig = hermitian_eig(m);
    const double tol = 1e-10 * rel_scale(m);

    RVec roots(eig.eigenvalues.size());
    for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i) {
        const double lambda = eig.eigenvalues[i];
        if (lambda < -tol) {
            throw NotPSDError("psd_sqrt: eigenvalue " + str(lambda) + " below -" + str(tol));
        }
        roots[i] = lambda > 0.0 ? std::sqrt(lambda) : 0.0;
    }

    CMat result = eig.eigenvectors * roots.asDiagonal() * eig.eigenvectors.adjoint();
    // The product above is Hermitian only up to roundoff; symmetrize.
    result = 0.5 * (result + result.adjoint().eval());
    return result;
}

CMat dense_kron(const CMat& a, const CMat& b) {
    if (!a.allFinite() || !b.allFinite()) {
        throw NotFiniteError("dense_kron: non-finite entries");
    }
    CMat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

}  // namespace oqwlab
