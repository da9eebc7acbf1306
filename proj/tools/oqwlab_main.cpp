// Command-line front end: validate walk files, run the three evolutions,
// dump spectra, compare Cesaro means against the exact limit, and check the
// stochastic-matrix reduction. Node indices are 1-based in every file and
// report; exit codes are 0 (success), 1 (numerical or validation failure),
// 2 (unusable input).

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "oqwlab/evolution.hpp"
#include "oqwlab/log.hpp"
#include "oqwlab/oqw.hpp"
#include "oqwlab/sampling.hpp"
#include "oqwlab/szegedy.hpp"
#include "oqwlab/walk_spec.hpp"

namespace {

using namespace oqwlab;
using nlohmann::json;

constexpr int kExitSuccess = 0;
constexpr int kExitFailure = 1;
constexpr int kExitBadInput = 2;

std::string format_probability(double p) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", p);
    return buf;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw ParseError("cannot write " + path);
    }
    return out;
}

json vector_to_json(const RVec& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
    return out;
}

json matrix_to_json(const RMat& m) {
    json out = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        out.push_back(std::move(row));
    }
    return out;
}

class Stopwatch {
public:
    double ms() const {
        return std::chrono::duration<double, std::milli>(
                   std::chrono::steady_clock::now() - start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

int cmd_validate(const std::string& spec_path) {
    const WalkSpec spec = load_walk_spec(spec_path);
    const KrausValidation report = validate_kraus(spec.kraus);
    for (std::size_t j = 0; j < report.node_residuals.size(); ++j) {
        std::cout << "node " << j + 1 << ": residual "
                  << format_probability(report.node_residuals[j]) << "\n";
    }
    if (!report.passes()) {
        std::cout << "FAIL: completeness relation violated\n";
        return kExitFailure;
    }
    std::cout << "OK: " << spec.kraus.num_nodes() << " nodes, coin dimension "
              << spec.kraus.coin_dim() << "\n";
    return kExitSuccess;
}

void write_distribution_rows(std::ofstream& out, long t, const RVec& p) {
    for (Eigen::Index j = 0; j < p.size(); ++j) {
        out << t << "," << j + 1 << "," << format_probability(p[j]) << "\n";
    }
}

int cmd_run(const std::string& spec_path, const std::string& mode, long steps,
            std::uint64_t seed, int trajectories, const std::string& out_path) {
    const WalkSpec spec = load_walk_spec(spec_path);
    require_valid(spec.kraus);
    const Stopwatch timer;

    std::ofstream out = open_output(out_path);
    long rows = 0;

    if (mode == "oqw") {
        out << "t,node,probability\n";
        const DensityOperator rho0 = density_initial_state(spec);
        DensityOperator rho = rho0;
        write_distribution_rows(out, 0, vertex_distribution(rho));
        for (long t = 1; t <= steps; ++t) {
            rho = oqw_step(spec.kraus, rho);
            write_distribution_rows(out, t, vertex_distribution(rho));
        }
        rows = (steps + 1) * spec.kraus.num_nodes();

        const auto period =
            detect_period(spec.kraus, rho0, 1, static_cast<int>(std::min<long>(steps, 64)));
        if (period == 1) {
            std::cout << "limit: stationary state reached (period 1)\n";
        } else if (period) {
            std::cout << "limit: none, the walk cycles with period " << *period << "\n";
        } else {
            std::cout << "limit: undetermined within " << steps << " steps\n";
        }
    } else if (mode == "unitary") {
        out << "t,node,probability\n";
        const QuantizedWalk walk(spec.kraus);
        const WalkRun run = run_walk(walk, unitary_initial_state(spec, walk), steps);
        for (long t = 0; t <= steps; ++t) {
            write_distribution_rows(out, t, run.history[t]);
        }
        rows = (steps + 1) * spec.kraus.num_nodes();
    } else if (mode == "trajectory") {
        out << "t,node,probability,trajectory_id\n";
        const TrajectoryState proto = trajectory_initial_state(spec, seed);
        for (int m = 0; m < trajectories; ++m) {
            TrajectoryState start = proto;
            start.rng_seed = derive_seed(seed, static_cast<std::uint64_t>(m));
            const TrajectoryResult result =
                run_trajectory(spec.kraus, start, static_cast<int>(steps));
            for (long t = 0; t <= steps; ++t) {
                out << t << "," << result.path[t] + 1 << ",1," << m << "\n";
                ++rows;
            }
        }
    } else {
        throw ParseError("unknown mode " + mode);
    }

    std::cout << "wrote " << out_path << " (" << rows << " rows, "
              << format_probability(timer.ms()) << " ms)\n";
    return kExitSuccess;
}

int cmd_spectrum(const std::string& spec_path, const std::string& out_path) {
    const WalkSpec spec = load_walk_spec(spec_path);
    const Stopwatch timer;
    const QuantizedWalk walk(spec.kraus);
    const DSpectrum d_spec = classify_spectrum(walk.d_matrix());
    const UEigenSystem eig = u_eigensystem(walk, d_spec);
    const IdentityReport identities = verify_identities(walk);

    json report;
    report["command"] = "spectrum";
    report["spec"] = spec_path;
    if (!spec.name.empty()) report["name"] = spec.name;
    report["d_matrix"] = matrix_to_json(walk.d_matrix());

    json interior = json::array();
    for (const auto& p : d_spec.interior) {
        interior.push_back({{"lambda", p.lambda}, {"vector", vector_to_json(p.vector)}});
    }
    json plus = json::array(), minus = json::array();
    for (const auto& u : d_spec.plus_one) plus.push_back(vector_to_json(u));
    for (const auto& v : d_spec.minus_one) minus.push_back(vector_to_json(v));
    report["d_spectrum"] = {
        {"interior", interior}, {"plus_one", plus}, {"minus_one", minus}};

    json phases = json::array();
    for (const auto& pair : eig.pairs) phases.push_back(std::arg(pair.eigenvalue));
    report["u_eigenphases"] = phases;
    report["eigenvalue_groups"] = eig.groups;

    report["identity_residuals"] = {{"isometry", identities.isometry},
                                    {"projector", identities.projector},
                                    {"discriminant", identities.discriminant}};
    const bool passes = identities.passes(1e-9);
    report["passes"] = passes;
    report["timing_ms"] = timer.ms();

    open_output(out_path) << report.dump(2) << "\n";
    std::cout << (passes ? "OK" : "FAIL") << ": identity residuals "
              << format_probability(identities.isometry) << " / "
              << format_probability(identities.projector) << " / "
              << format_probability(identities.discriminant) << "\n";
    return passes ? kExitSuccess : kExitFailure;
}

int cmd_asymptotic(const std::string& spec_path, long horizon, const std::string& out_path) {
    const WalkSpec spec = load_walk_spec(spec_path);
    const Stopwatch timer;
    const QuantizedWalk walk(spec.kraus);
    const AugmentedState alpha0 = unitary_initial_state(spec, walk);

    // The closed-form eigensystem only spans the invariant subspace; states
    // outside it fall back to the dense oracle when that is affordable.
    std::string path_used = "analytic";
    RVec limit;
    UEigenSystem eig = u_eigensystem(walk, classify_spectrum(walk.d_matrix()));
    try {
        limit = asymptotic_distribution(walk, eig, alpha0);
    } catch (const NotInSpanError& e) {
        if (walk.augmented_dim() > kDenseOracleLimit) throw;
        log_info("initial state outside the invariant subspace (residual " +
                 str(e.residual) + "), using the dense eigensystem");
        eig = dense_u_eigensystem(walk);
        limit = asymptotic_distribution(walk, eig, alpha0);
        path_used = "dense";
    }

    std::vector<long> horizons{horizon};
    if (horizon >= 100) horizons.insert(horizons.begin(), {horizon / 100, horizon / 10});
    const ConvergenceProbe probe = convergence_probe(walk, eig, alpha0, horizons);
    const RVec mean_at_T = mean_distribution(walk, alpha0, horizon);

    json report;
    report["command"] = "asymptotic";
    report["spec"] = spec_path;
    if (!spec.name.empty()) report["name"] = spec.name;
    report["T"] = horizon;
    report["path"] = path_used;
    report["asymptotic"] = vector_to_json(limit);
    report["empirical_mean"] = vector_to_json(mean_at_T);
    report["deviation"] = vector_to_json((mean_at_T - limit).cwiseAbs());
    json probe_json;
    probe_json["horizons"] = probe.horizons;
    json dev_rows = json::array();
    for (Eigen::Index r = 0; r < probe.deviations.rows(); ++r) {
        dev_rows.push_back(vector_to_json(probe.deviations.row(r).transpose()));
    }
    probe_json["deviations"] = dev_rows;
    probe_json["fitted_c"] = probe.fitted_c;
    probe_json["bound_ok"] = probe.bound_ok;
    report["probe"] = probe_json;
    report["timing_ms"] = timer.ms();

    open_output(out_path) << report.dump(2) << "\n";
    std::cout << "asymptotic (" << path_used << "):";
    for (int j = 0; j < walk.num_nodes(); ++j) {
        std::cout << " " << format_probability(limit[j]);
    }
    std::cout << "\n";
    return kExitSuccess;
}

int cmd_szegedy(const std::string& matrix_path, int coin_dim, bool row_stochastic,
                std::uint64_t seed, bool random_coin_flag) {
    const StochasticMatrix p = load_stochastic_matrix(matrix_path, row_stochastic);
    const Stopwatch timer;

    CoinUnitaryFamily coins(p.size(), coin_dim);
    if (random_coin_flag) {
        Rng rng(seed);
        for (int j = 0; j < p.size(); ++j) {
            for (int k = 0; k < p.size(); ++k) {
                coins.set_coin(j, k, random_unitary(coin_dim, rng));
            }
        }
    }

    const SzegedyReductionReport result = szegedy_reduction_report(p, coins, coin_dim);
    const bool passes = result.max_reduction_residual < 1e-10;

    json report;
    report["command"] = "szegedy";
    report["matrix"] = matrix_path;
    report["coin_dim"] = coin_dim;
    report["coins"] = random_coin_flag ? "random" : "identity";
    if (random_coin_flag) report["seed"] = seed;
    report["pairs_checked"] = p.size() * p.size();
    report["max_reduction_residual"] = result.max_reduction_residual;
    report["d_matrix_residual"] = result.d_matrix_residual;
    report["passes"] = passes;
    report["timing_ms"] = timer.ms();
    std::cout << report.dump(2) << "\n";
    return passes ? kExitSuccess : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"open quantum walk quantization toolkit"};
    app.require_subcommand(1);

    std::string spec_path, out_path, mode = "unitary", matrix_path;
    long steps = 0, horizon = 1000;
    std::uint64_t seed = 0;
    int trajectories = 1, coin_dim = 2;
    bool row_stochastic = false;

    auto* validate = app.add_subcommand("validate", "check a walk file's completeness relation");
    validate->add_option("spec", spec_path, "walk file (JSON)")->required();

    auto* run = app.add_subcommand("run", "evolve a walk and write a t,node,probability CSV");
    run->add_option("spec", spec_path, "walk file (JSON)")->required();
    run->add_option("--mode", mode, "oqw | unitary | trajectory")
        ->check(CLI::IsMember({"oqw", "unitary", "trajectory"}));
    run->add_option("--steps", steps, "number of steps")->required()
        ->check(CLI::NonNegativeNumber);
    run->add_option("--seed", seed, "base seed for trajectory sampling");
    run->add_option("--trajectories", trajectories, "ensemble size for trajectory mode")
        ->check(CLI::PositiveNumber);
    run->add_option("--out", out_path, "output CSV path")->required();

    auto* spectrum = app.add_subcommand("spectrum", "D matrix, its classification, U phases");
    spectrum->add_option("spec", spec_path, "walk file (JSON)")->required();
    spectrum->add_option("--out", out_path, "output JSON path")->required();

    auto* asymptotic =
        app.add_subcommand("asymptotic", "exact limit of the mean node distribution");
    asymptotic->add_option("spec", spec_path, "walk file (JSON)")->required();
    asymptotic->add_option("--T", horizon, "empirical horizon")->required()
        ->check(CLI::PositiveNumber);
    asymptotic->add_option("--out", out_path, "output JSON path")->required();

    auto* szegedy = app.add_subcommand("szegedy", "pair-space reduction check");
    szegedy->add_option("matrix", matrix_path, "stochastic matrix (JSON)")->required();
    szegedy->add_option("--coin-dim", coin_dim, "coin dimension")->check(CLI::PositiveNumber);
    szegedy->add_flag("--row-stochastic", row_stochastic,
                      "input rows sum to 1; transpose on load");
    auto* seed_opt = szegedy->add_option("--seed", seed, "sample random unitary coins");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitBadInput;
    }

    try {
        if (*validate) return cmd_validate(spec_path);
        if (*run) return cmd_run(spec_path, mode, steps, seed, trajectories, out_path);
        if (*spectrum) return cmd_spectrum(spec_path, out_path);
        if (*asymptotic) return cmd_asymptotic(spec_path, horizon, out_path);
        if (*szegedy)
            return cmd_szegedy(matrix_path, coin_dim, row_stochastic, seed, seed_opt->count() > 0);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const NonStochasticError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitBadInput;
}
