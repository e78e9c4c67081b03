// optproj: direction-set optimization and projected energy statistics.
//
// Subcommands:
//   optimize     compute a direction set maximizing V_min/V_max
//   eval         evaluate a direction-set file (V_min, V_max, ratio, ...)
//   approx-norm  approximate the Euclidean norm of a vector with a set
//   energy       two-sample energy statistic (exact / projected / mc)
//   bench mse    MSE experiment grid, CSV output
//
// Exit codes: 0 success, 2 usage or input error, 3 numeric failure.

#include <cmath>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "optproj/approximator.hpp"
#include "optproj/energy.hpp"
#include "optproj/errors.hpp"
#include "optproj/io.hpp"
#include "optproj/objective.hpp"
#include "optproj/optimizer.hpp"

namespace {

using optproj::DirectionSet;
using ordered_json = nlohmann::ordered_json;

void print_json(const ordered_json& doc) { std::cout << doc.dump(2) << "\n"; }

struct OptimizeArgs {
    int dim = 0;
    int num_directions = 0;
    std::uint64_t seed = 0;
    int restarts = 8;
    double delta = 1e-6;
    int max_iters = 500;
    std::string out;
};

int run_optimize(const OptimizeArgs& a) {
    if (a.dim < 1) throw optproj::InvalidShape("--dim must be >= 1");
    if (a.num_directions < 1)
        throw optproj::InvalidShape("--num-directions must be >= 1");
    if (a.restarts < 1) throw optproj::InvalidShape("--restarts must be >= 1");
    if (a.delta <= 0) throw optproj::InvalidShape("--delta must be > 0");
    if (a.max_iters < 1) throw optproj::InvalidShape("--max-iters must be >= 1");

    DirectionSet ds;
    double vmin = 0.0, vmax = 0.0;
    std::vector<double> trace_ratios;
    int restarts_best = 0;
    if (a.dim == 2) {
        ds = optproj::exact_directions_2d(a.num_directions);
        vmin = optproj::closed_form_vmin_2d(a.num_directions);
        vmax = optproj::closed_form_vmax_2d(a.num_directions);
        trace_ratios = {vmin / vmax};
    } else if (a.num_directions == a.dim) {
        ds = optproj::exact_directions_np(a.dim);
        vmin = 1.0;
        vmax = std::sqrt(static_cast<double>(a.dim));
        trace_ratios = {vmin / vmax};
    } else {
        optproj::OptimizerConfig cfg;
        cfg.seed = a.seed;
        cfg.restarts = a.restarts;
        cfg.delta = a.delta;
        cfg.max_outer_iters = a.max_iters;
        auto [set, trace] = optproj::coordinate_ascent(a.dim, a.num_directions, cfg);
        ds = set;
        const optproj::ObjectiveReport rep = optproj::report(ds);
        vmin = rep.v_min_value;
        vmax = rep.v_max_value;
        trace_ratios = trace.ratios;
        restarts_best = trace.restarts_best;
    }

    if (!a.out.empty()) optproj::save_direction_set(a.out, ds);

    ordered_json doc;
    doc["p"] = ds.p();
    doc["n"] = ds.n();
    doc["kind"] = optproj::kind_to_string(ds.kind);
    doc["v_min_value"] = vmin;
    doc["v_max_value"] = vmax;
    doc["ratio"] = vmin / vmax;
    doc["c_n"] = 2.0 / (vmin + vmax);
    doc["worst_case_error"] = (vmax - vmin) / (vmax + vmin);
    doc["trace"] = trace_ratios;
    doc["restarts_best"] = restarts_best;
    if (!a.out.empty()) doc["out"] = a.out;
    print_json(doc);
    return 0;
}

int run_eval(const std::string& directions_path) {
    const DirectionSet ds = optproj::load_direction_set(directions_path);
    const optproj::ObjectiveReport rep = optproj::report(ds);
    ordered_json doc;
    doc["p"] = ds.p();
    doc["n"] = ds.n();
    doc["kind"] = optproj::kind_to_string(ds.kind);
    doc["v_min_value"] = rep.v_min_value;
    doc["v_max_value"] = rep.v_max_value;
    doc["ratio"] = rep.ratio;
    doc["c_n"] = rep.c_n;
    doc["worst_case_error"] = rep.worst_case_error;
    doc["omega"] = rep.certificate.omega;
    doc["sign_pattern"] = rep.sign_pattern.signs;
    print_json(doc);
    return 0;
}

int run_approx_norm(const std::string& directions_path,
                    const std::vector<double>& coords) {
    const DirectionSet ds = optproj::load_direction_set(directions_path);
    optproj::Vector x(static_cast<Eigen::Index>(coords.size()));
    for (size_t i = 0; i < coords.size(); ++i)
        x(static_cast<Eigen::Index>(i)) = coords[i];
    const double approx = optproj::approx_norm(ds, x);
    const double exact = x.norm();
    ordered_json doc;
    doc["approx"] = approx;
    doc["exact_norm"] = exact;
    doc["abs_error"] = std::abs(approx - exact);
    print_json(doc);
    return 0;
}

struct EnergyArgs {
    std::string x_path;
    std::string y_path;
    std::string method = "exact";
    std::string directions_path;
    int mc_n = 64;
    std::uint64_t seed = 0;
};

int run_energy(const EnergyArgs& a) {
    const optproj::Sample X = optproj::load_sample(a.x_path);
    const optproj::Sample Y = optproj::load_sample(a.y_path);

    optproj::EnergyResult res;
    if (a.method == "exact") {
        res = optproj::energy_statistic_exact(X, Y);
    } else if (a.method == "projected") {
        if (a.directions_path.empty())
            throw optproj::InvalidShape("--method projected requires --directions");
        const DirectionSet ds = optproj::load_direction_set(a.directions_path);
        res = optproj::energy_statistic_projected(X, Y, ds);
    } else if (a.method == "mc") {
        if (a.mc_n < 1) throw optproj::InvalidShape("--mc-n must be >= 1");
        const DirectionSet ds = optproj::mc_directions(X.p(), a.mc_n, a.seed);
        res = optproj::energy_statistic_projected(X, Y, ds);
    } else {
        throw optproj::ParseError("unknown --method '" + a.method +
                                  "' (expected exact|projected|mc)");
    }

    ordered_json doc;
    doc["value"] = res.value;
    doc["method"] = res.method;
    if (res.directions_used) doc["directions_used"] = *res.directions_used;
    print_json(doc);
    // Timing goes to stderr so standard output stays bit-reproducible.
    std::cerr << "elapsed_ms=" << optproj::format_double(res.elapsed.count())
              << "\n";
    return 0;
}

struct BenchArgs {
    int dim = 0;
    std::vector<int> n_list;
    std::vector<std::string> schemes;
    int trials = 50;
    int test_vectors = 10000;
    std::uint64_t seed = 0;
    std::string out;
    bool paper_protocol = false;
};

int run_bench_mse(const BenchArgs& a) {
    if (a.dim < 1) throw optproj::InvalidShape("--dim must be >= 1");
    if (a.n_list.empty())
        throw optproj::InvalidShape("--num-directions-list must be non-empty");
    if (a.schemes.empty())
        throw optproj::InvalidShape("--schemes must be non-empty");
    const int test_vectors = a.paper_protocol ? 100 : a.test_vectors;

    std::vector<optproj::MSEReport> rows;
    for (const std::string& scheme : a.schemes)
        for (const int n : a.n_list)
            rows.push_back(optproj::mse_experiment(scheme, a.dim, n, test_vectors,
                                                   a.trials, a.seed));
    if (a.out.empty())
        std::cout << optproj::mse_csv(rows);
    else
        optproj::write_mse_csv(a.out, rows);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Direction-set optimization and projected energy statistics"};
    app.require_subcommand(1);

    OptimizeArgs opt;
    auto* optimize = app.add_subcommand(
        "optimize", "Compute a direction set maximizing V_min/V_max");
    optimize->add_option("--dim", opt.dim, "Ambient dimension p")->required();
    optimize->add_option("--num-directions", opt.num_directions,
                         "Number of directions n")
        ->required();
    optimize->add_option("--seed", opt.seed, "RNG seed (64-bit unsigned)");
    optimize->add_option("--restarts", opt.restarts, "Multistart count");
    optimize->add_option("--delta", opt.delta, "Ascent stopping threshold");
    optimize->add_option("--max-iters", opt.max_iters,
                         "Maximum outer iterations per restart");
    optimize->add_option("--out", opt.out, "Output direction-set JSON file");

    std::string eval_path;
    auto* eval = app.add_subcommand("eval", "Evaluate a direction-set file");
    eval->add_option("--directions", eval_path, "Direction-set JSON file")
        ->required();

    std::string an_path;
    std::vector<double> an_coords;
    auto* approx = app.add_subcommand(
        "approx-norm", "Approximate the Euclidean norm of a vector");
    approx->add_option("--directions", an_path, "Direction-set JSON file")
        ->required();
    approx->add_option("--vector", an_coords, "Comma-separated coordinates")
        ->required()
        ->delimiter(',');

    EnergyArgs en;
    auto* energy =
        app.add_subcommand("energy", "Two-sample energy statistic");
    energy->add_option("--x", en.x_path, "First sample CSV")->required();
    energy->add_option("--y", en.y_path, "Second sample CSV")->required();
    energy->add_option("--method", en.method, "exact | projected | mc");
    energy->add_option("--directions", en.directions_path,
                       "Direction-set JSON file (projected method)");
    energy->add_option("--mc-n", en.mc_n, "Monte Carlo direction count");
    energy->add_option("--seed", en.seed, "RNG seed (64-bit unsigned)");

    BenchArgs be;
    auto* bench = app.add_subcommand("bench", "Benchmark drivers");
    bench->require_subcommand(1);
    auto* mse = bench->add_subcommand("mse", "Norm-approximation MSE grid");
    mse->add_option("--dim", be.dim, "Ambient dimension p")->required();
    mse->add_option("--num-directions-list", be.n_list,
                    "Comma-separated direction counts")
        ->required()
        ->delimiter(',');
    mse->add_option("--schemes", be.schemes,
                    "Comma-separated schemes: optimal-2d|orthonormal|ascent|monte-carlo")
        ->required()
        ->delimiter(',');
    mse->add_option("--trials", be.trials, "Direction redraws for monte-carlo");
    mse->add_option("--test-vectors", be.test_vectors, "Test vectors per run");
    mse->add_option("--seed", be.seed, "RNG seed (64-bit unsigned)");
    mse->add_option("--out", be.out, "Output CSV file (default: stdout)");
    mse->add_flag("--paper-protocol", be.paper_protocol,
                  "Use exactly 100 test vectors");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (optimize->parsed()) return run_optimize(opt);
        if (eval->parsed()) return run_eval(eval_path);
        if (approx->parsed()) return run_approx_norm(an_path, an_coords);
        if (energy->parsed()) return run_energy(en);
        if (bench->parsed() && mse->parsed()) return run_bench_mse(be);
        std::cerr << "error: no subcommand\n";
        return 2;
    } catch (const optproj::InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const optproj::NumericError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
