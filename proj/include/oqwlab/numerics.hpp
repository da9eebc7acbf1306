#pragma once

#include <Eigen/Dense>
#include <complex>

#include "oqwlab/errors.hpp"

namespace oqwlab {

using Complex = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

/// Scale used by all relative tolerances: max(1, ||M||_F).
inline double rel_scale(const CMat& m) { return std::max(1.0, m.norm()); }
inline double rel_scale(const RMat& m) { return std::max(1.0, m.norm()); }

/// Hilbert-Schmidt inner product tr(A^dag B), conjugate-linear in the first argument.
template <typename DA, typename DB>
Complex hs_inner(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw ShapeMismatchError("hs_inner: " + std::to_string(a.rows()) + "x" +
                                 std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) +
                                 "x" + std::to_string(b.cols()));
    }
    return a.derived().conjugate().cwiseProduct(b.derived()).sum();
}

/// Eigendecomposition of a Hermitian matrix, eigenvalues ascending, eigenvectors orthonormal.
struct HermitianEig {
    RVec eigenvalues;
    CMat eigenvectors;  // columns
};

HermitianEig hermitian_eig(const CMat& m);

/// Positive-semidefinite square root. Eigenvalues in [-1e-10*scale, 0) are clamped
/// to zero; anything more negative is rejected as NotPSD.
CMat psd_sqrt(const CMat& m);

/// Dense Kronecker product, (rA*rB) x (cA*cB). Validation use only.
CMat dense_kron(const CMat& a, const CMat& b);

}  // namespace oqwlab
