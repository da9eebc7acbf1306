#include <doctest.h>

#include <cmath>

#include "oqwlab/quantizer.hpp"
#include "oqwlab/sampling.hpp"
#include "oqwlab/szegedy.hpp"
#include "test_support.hpp"

using namespace oqwlab;
using namespace oqwlab::testing;

namespace {

RMat drain_matrix() {
    RMat p(2, 2);
    p << 1, 1, 0, 0;
    return p;
}

CoinUnitaryFamily random_coins(int num_nodes, int coin_dim, Rng& rng) {
    CoinUnitaryFamily coins(num_nodes, coin_dim);
    for (int j = 0; j < num_nodes; ++j) {
        for (int k = 0; k < num_nodes; ++k) {
            coins.set_coin(j, k, random_unitary(coin_dim, rng));
        }
    }
    return coins;
}

}  // namespace

TEST_SUITE("szegedy") {

TEST_CASE("stochastic matrix validation") {
    CHECK_NOTHROW(StochasticMatrix{drain_matrix()});

    RMat bad_sum(2, 2);
    bad_sum << 0.5, 1, 0.4, 0;
    CHECK_THROWS_AS(StochasticMatrix{bad_sum}, NonStochasticError);

    RMat negative(2, 2);
    negative << 1.5, 1, -0.5, 0;
    CHECK_THROWS_AS(StochasticMatrix{negative}, NonStochasticError);

    CHECK_THROWS_AS(StochasticMatrix{RMat::Zero(2, 3)}, ShapeMismatchError);
}

TEST_CASE("coin family validation") {
    CoinUnitaryFamily coins(2, 2);
    CHECK_THROWS_AS(coins.set_coin(0, 0, 0.5 * identity2()), NonUnitaryCoinError);
    CHECK_THROWS_AS(coins.set_coin(0, 2, identity2()), IndexOutOfRangeError);
    CHECK((coins.coin(1, 1) - identity2()).norm() == 0.0);  // identity by default
}

TEST_CASE("from_stochastic on the drain chain gives identity operators") {
    const StochasticMatrix p(drain_matrix());
    const CoinUnitaryFamily coins(2, 2);
    const KrausFamily family = from_stochastic(p, coins, 2);

    REQUIRE(family.operator_at(0, 0) != nullptr);
    REQUIRE(family.operator_at(1, 0) != nullptr);
    CHECK((*family.operator_at(0, 0) - identity2()).norm() == 0.0);
    CHECK((*family.operator_at(1, 0) - identity2()).norm() == 0.0);
    CHECK(family.operator_at(0, 1) == nullptr);
    CHECK(family.operator_at(1, 1) == nullptr);
    CHECK(validate_kraus(family).passes());
}

TEST_CASE("stochastic families pass completeness for random inputs") {
    Rng rng(101);
    for (int trial = 0; trial < 6; ++trial) {
        const StochasticMatrix p(random_stochastic(3, rng));
        const auto coins = random_coins(3, 2, rng);
        const auto report = validate_kraus(from_stochastic(p, coins, 2));
        CHECK(report.passes());
        for (double r : report.node_residuals) CHECK(r < 1e-10);
    }
}

TEST_CASE("szegedy_step_reference on fixed inputs") {
    const StochasticMatrix p(drain_matrix());

    // p_11 = 1 collapses the step to the basis ket itself.
    const RVec same = szegedy_step_reference(p, 0, 0);
    CHECK(same[0] == doctest::Approx(1.0));
    CHECK(same.norm() == doctest::Approx(1.0));

    // A zero-probability pair only reflects.
    const RVec reflected = szegedy_step_reference(p, 0, 1);  // p_{21} = 0
    CHECK(reflected[1 * 2 + 0] == doctest::Approx(-1.0));
    CHECK(reflected.norm() == doctest::Approx(1.0));

    CHECK_THROWS_AS(szegedy_step_reference(p, 0, 5), IndexOutOfRangeError);
}

TEST_CASE("szegedy_step_reference has unit norm for random matrices") {
    Rng rng(103);
    for (int trial = 0; trial < 5; ++trial) {
        const int n = 2 + static_cast<int>(rng.below(3));
        const StochasticMatrix p(random_stochastic(n, rng));
        for (int j0 = 0; j0 < n; ++j0) {
            for (int k0 = 0; k0 < n; ++k0) {
                CHECK(szegedy_step_reference(p, j0, k0).norm() ==
                      doctest::Approx(1.0).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("reduction to the pair-space walk on fixed inputs") {
    const StochasticMatrix p(drain_matrix());
    const CoinUnitaryFamily coins(2, 2);
    CHECK(verify_reduction(p, coins, 0, 0) < 1e-12);
    CHECK(verify_reduction(p, coins, 0, 1) < 1e-12);  // reflection-only branch
}

TEST_CASE("reduction holds for every pair and is coin-independent") {
    Rng rng(107);
    for (int trial = 0; trial < 3; ++trial) {
        const int n = 2 + static_cast<int>(rng.below(3));
        const StochasticMatrix p(random_stochastic(n, rng));

        for (int coin_trial = 0; coin_trial < 3; ++coin_trial) {
            const auto coins = random_coins(n, 2, rng);
            const auto report = szegedy_reduction_report(p, coins, 2);
            CHECK(report.max_reduction_residual < 1e-10);
            CHECK(report.d_matrix_residual < 1e-10);
        }
    }
}

TEST_CASE("reduction extends to identity-slot superpositions by linearity") {
    Rng rng(109);
    const int n_nodes = 3;
    const StochasticMatrix p(random_stochastic(n_nodes, rng));
    const auto coins = random_coins(n_nodes, 2, rng);
    const QuantizedWalk walk(from_stochastic(p, coins, 2));
    const double inv_sqrt_n = 1.0 / std::sqrt(2.0);

    // Random real coefficients on identity slots.
    RMat coeff(n_nodes, n_nodes);
    double norm_sq = 0.0;
    for (int j = 0; j < n_nodes; ++j) {
        for (int k = 0; k < n_nodes; ++k) {
            coeff(j, k) = rng.gaussian();
            norm_sq += coeff(j, k) * coeff(j, k);
        }
    }
    coeff /= std::sqrt(norm_sq);

    AugmentedState alpha(n_nodes, 2);
    RVec expected_pairs = RVec::Zero(n_nodes * n_nodes);
    for (int j = 0; j < n_nodes; ++j) {
        for (int k = 0; k < n_nodes; ++k) {
            alpha.add_amplitude(j, k, coeff(j, k) * inv_sqrt_n * identity2());
            expected_pairs += coeff(j, k) * szegedy_step_reference(p, j, k);
        }
    }

    AugmentedState expected(n_nodes, 2);
    for (int a = 0; a < n_nodes; ++a) {
        for (int b = 0; b < n_nodes; ++b) {
            const double w = expected_pairs[a * n_nodes + b];
            if (w != 0.0) expected.set_amplitude(a, b, w * inv_sqrt_n * identity2());
        }
    }
    CHECK(distance(apply_U(walk, alpha), expected) < 1e-10);
}

}  // TEST_SUITE
