#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "oqwlab/walk_spec.hpp"
#include "test_support.hpp"

using namespace oqwlab;
using namespace oqwlab::testing;

namespace {

const char* kCase1Path = OQWLAB_SPEC_DIR "/two_vertex_case1.json";
const char* kCase2Path = OQWLAB_SPEC_DIR "/two_vertex_case2.json";
const char* kMatrixPath = OQWLAB_SPEC_DIR "/markov_chain_2x2.json";

}  // namespace

TEST_SUITE("walkspec") {

TEST_CASE("bundled case-1 file loads the drain walk") {
    const WalkSpec spec = load_walk_spec(kCase1Path);
    CHECK(spec.kraus.num_nodes() == 2);
    CHECK(spec.kraus.coin_dim() == 2);
    CHECK((*spec.kraus.operator_at(0, 0) - pauli_x()).norm() == 0.0);
    CHECK((*spec.kraus.operator_at(1, 0) - pauli_z()).norm() == 0.0);
    CHECK(validate_kraus(spec.kraus).passes());

    REQUIRE(spec.initial_density.has_value());
    CHECK(frobenius_distance(*spec.initial_density, two_vertex_case1_density()) == 0.0);
    REQUIRE(spec.initial_node_coefficients.has_value());
    REQUIRE(spec.initial_position.has_value());
    CHECK(*spec.initial_position == 1);  // node 2 in file labels

    const QuantizedWalk walk(spec.kraus);
    const AugmentedState alpha0 = unitary_initial_state(spec, walk);
    CHECK(distance(alpha0, two_vertex_case1_alpha0()) < 1e-12);
}

TEST_CASE("bundled case-2 file carries explicit amplitudes") {
    const WalkSpec spec = load_walk_spec(kCase2Path);
    const QuantizedWalk walk(spec.kraus);
    CHECK(distance(unitary_initial_state(spec, walk), two_vertex_case2_alpha0()) < 1e-12);

    const TrajectoryState start = trajectory_initial_state(spec, 7);
    CHECK(start.node == 1);
    CHECK(start.coin_state(0, 0).real() == doctest::Approx(0.75));
}

TEST_CASE("round trip preserves operators bit for bit") {
    const WalkSpec spec = load_walk_spec(kCase2Path);
    const WalkSpec reloaded = parse_walk_spec_text(walk_spec_to_text(spec));

    CHECK(reloaded.kraus.num_nodes() == spec.kraus.num_nodes());
    for (const auto& [edge, b] : spec.kraus.operators()) {
        const CMat* other = reloaded.kraus.operator_at(edge.first, edge.second);
        REQUIRE(other != nullptr);
        CHECK((*other - b).norm() == 0.0);  // exact, not approximate
    }
    REQUIRE(reloaded.initial_amplitudes.has_value());
    CHECK(distance(*reloaded.initial_amplitudes, *spec.initial_amplitudes) == 0.0);
}

TEST_CASE("malformed documents are parse errors") {
    CHECK_THROWS_AS(parse_walk_spec_text("{not json"), ParseError);
    CHECK_THROWS_AS(parse_walk_spec_text("{\"num_nodes\": 2}"), ParseError);
    CHECK_THROWS_AS(parse_walk_spec_text(
                        R"({"num_nodes": 1, "coin_dim": 1,
                            "operators": [{"from": 3, "to": 1, "matrix": [[1,0]]}]})"),
                    ParseError);
    CHECK_THROWS_AS(load_walk_spec("/nonexistent/path.json"), ParseError);
}

TEST_CASE("slightly denormalized states are renormalized, bad ones rejected") {
    WalkSpec spec = load_walk_spec(kCase1Path);
    const QuantizedWalk walk(spec.kraus);

    CVec tilted(2);
    tilted << 0.70710699, 0.70710699;  // off at the 1e-7 level
    spec.initial_node_coefficients = tilted;
    const AugmentedState alpha = unitary_initial_state(spec, walk);
    CHECK(alpha.norm() == doctest::Approx(1.0).epsilon(1e-12));

    CVec wrong(2);
    wrong << 0.5, 0.5;  // norm 1/sqrt(2), far outside tolerance
    spec.initial_node_coefficients = wrong;
    CHECK_THROWS_AS(unitary_initial_state(spec, walk), Error);
}

TEST_CASE("missing initial sections are reported as input errors") {
    WalkSpec spec = load_walk_spec(kCase1Path);
    spec.initial_density.reset();
    CHECK_THROWS_AS(density_initial_state(spec), ParseError);

    spec.initial_amplitudes.reset();
    spec.initial_node_coefficients.reset();
    const QuantizedWalk walk(spec.kraus);
    CHECK_THROWS_AS(unitary_initial_state(spec, walk), ParseError);

    spec.initial_position.reset();
    CHECK_THROWS_AS(trajectory_initial_state(spec, 1), ParseError);
}

TEST_CASE("stochastic matrices load with the optional transpose") {
    const StochasticMatrix p = load_stochastic_matrix(kMatrixPath, false);
    CHECK(p.prob(0, 0) == 1.0);
    CHECK(p.prob(0, 1) == 1.0);

    // The same file read as row-stochastic fails: its rows do not sum to 1.
    CHECK_THROWS_AS(load_stochastic_matrix(kMatrixPath, true), NonStochasticError);

    const std::string tmp = "/tmp/oqwlab_rowstoch_test.json";
    std::ofstream(tmp) << R"({"matrix": [[0.25, 0.75], [0.5, 0.5]]})";
    const StochasticMatrix q = load_stochastic_matrix(tmp, true);
    CHECK(q.prob(1, 0) == 0.75);  // transposed
    std::remove(tmp.c_str());
}

}  // TEST_SUITE
