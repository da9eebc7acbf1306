#include <doctest.h>

#include <cmath>

#include "oqwlab/numerics.hpp"
#include "oqwlab/sampling.hpp"
#include "test_support.hpp"

using namespace oqwlab;
using namespace oqwlab::testing;

TEST_SUITE("numerics") {

TEST_CASE("hermitian_eig on simple matrices") {
    CMat diag(2, 2);
    diag << 1, 0, 0, 0;
    auto eig = hermitian_eig(diag);
    CHECK(eig.eigenvalues[0] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(eig.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-12));

    eig = hermitian_eig(pauli_x());
    CHECK(eig.eigenvalues[0] == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(eig.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-12));
    // Eigenvectors up to phase: (1, -1)/sqrt(2) and (1, 1)/sqrt(2).
    CVec minus(2), plus(2);
    minus << 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0);
    plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    CHECK(std::abs(minus.dot(eig.eigenvectors.col(0))) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(plus.dot(eig.eigenvectors.col(1))) == doctest::Approx(1.0).epsilon(1e-12));

    // Roots of lambda^2 - 4 lambda + 3.
    CMat m(2, 2);
    m << 2, 1, 1, 2;
    eig = hermitian_eig(m);
    CHECK(eig.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(eig.eigenvalues[1] == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("hermitian_eig rejects bad input") {
    CMat upper(2, 2);
    upper << 0, 1, 0, 0;
    CHECK_THROWS_AS(hermitian_eig(upper), NotHermitianError);

    CMat nan = CMat::Zero(2, 2);
    nan(0, 0) = std::nan("");
    CHECK_THROWS_AS(hermitian_eig(nan), NotFiniteError);

    CHECK_THROWS_AS(hermitian_eig(CMat::Zero(2, 3)), ShapeMismatchError);
}

TEST_CASE("hermitian_eig reconstruction and trace over random matrices") {
    Rng rng(2024);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + static_cast<int>(rng.below(15));
        const CMat g = gaussian_matrix(n, n, rng);
        const CMat m = 0.5 * (g + g.adjoint());
        const auto eig = hermitian_eig(m);

        const CMat recon = eig.eigenvectors * eig.eigenvalues.asDiagonal() *
                           eig.eigenvectors.adjoint();
        CHECK((m - recon).norm() < 1e-10 * rel_scale(m));
        CHECK((eig.eigenvectors.adjoint() * eig.eigenvectors - CMat::Identity(n, n)).norm() <
              1e-10);
        CHECK(std::abs(eig.eigenvalues.sum() - m.trace().real()) < 1e-10 * rel_scale(m));
        for (int i = 1; i < n; ++i) {
            CHECK(eig.eigenvalues[i] >= eig.eigenvalues[i - 1]);
        }
    }
}

TEST_CASE("psd_sqrt on fixed matrices") {
    CHECK((psd_sqrt(identity2()) - identity2()).norm() < 1e-14);

    CMat d(2, 2);
    d << 4, 0, 0, 9;
    CMat expected(2, 2);
    expected << 2, 0, 0, 3;
    CHECK((psd_sqrt(d) - expected).norm() < 1e-14);

    CMat m(2, 2);
    m << 2, 1, 1, 2;
    const double s3 = std::sqrt(3.0);
    CMat root(2, 2);
    root << (s3 + 1) / 2, (s3 - 1) / 2, (s3 - 1) / 2, (s3 + 1) / 2;
    const CMat r = psd_sqrt(m);
    CHECK((r - root).norm() < 1e-12);
    CHECK((r * r - m).norm() < 1e-9 * rel_scale(m));
}

TEST_CASE("psd_sqrt clamps tiny negatives and rejects real ones") {
    CMat tiny = CMat::Identity(2, 2);
    tiny(1, 1) = -1e-11;
    const CMat r = psd_sqrt(tiny);
    CHECK(r(1, 1).real() == 0.0);

    CMat bad(2, 2);
    bad << 1, 0, 0, -1;
    CHECK_THROWS_AS(psd_sqrt(bad), NotPSDError);
}

TEST_CASE("psd_sqrt squares back over random PSD matrices") {
    Rng rng(77);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 1 + static_cast<int>(rng.below(16));
        const CMat g = gaussian_matrix(n, n, rng);
        CMat m = g * g.adjoint();
        m /= rel_scale(m);
        const CMat r = psd_sqrt(m);
        CHECK((r - r.adjoint()).norm() < 1e-12);
        CHECK((r * r - m).norm() < 1e-9 * rel_scale(m));
    }
}

TEST_CASE("hs_inner values and symmetry") {
    CHECK(hs_inner(identity2(), identity2()).real() == doctest::Approx(2.0));
    CHECK(std::abs(hs_inner(pauli_x(), pauli_z())) < 1e-15);

    const CMat half = identity2() / std::sqrt(2.0);
    CHECK(hs_inner(half, half).real() == doctest::Approx(1.0).epsilon(1e-12));

    Rng rng(5);
    const CMat a = gaussian_matrix(3, 3, rng);
    const CMat b = gaussian_matrix(3, 3, rng);
    CHECK(std::abs(hs_inner(a, b) - std::conj(hs_inner(b, a))) < 1e-12);
    const Complex self = hs_inner(a, a);
    CHECK(self.imag() == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(self.real() == doctest::Approx(a.squaredNorm()).epsilon(1e-12));

    CHECK_THROWS_AS(hs_inner(CMat::Zero(2, 2), CMat::Zero(3, 3)), ShapeMismatchError);
}

TEST_CASE("dense_kron basics") {
    CHECK((dense_kron(identity2(), identity2()) - CMat::Identity(4, 4)).norm() == 0.0);

    CMat proj(2, 2);
    proj << 1, 0, 0, 0;
    const CMat kron = dense_kron(proj, pauli_x());
    CHECK((kron.block(0, 0, 2, 2) - pauli_x()).norm() == 0.0);
    CHECK(kron.block(2, 2, 2, 2).norm() == 0.0);
    CHECK(kron.block(0, 2, 2, 2).norm() == 0.0);

    CMat scalar(1, 1);
    scalar << 2.0;
    CHECK((dense_kron(scalar, pauli_x()) - 2.0 * pauli_x()).norm() == 0.0);

    CMat nan = CMat::Zero(1, 1);
    nan(0, 0) = std::nan("");
    CHECK_THROWS_AS(dense_kron(nan, identity2()), NotFiniteError);
}

}  // TEST_SUITE
