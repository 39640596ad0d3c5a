// decayspec command-line driver.
//
// Subcommands: tau, simulate, oracle, compare, sde-check, plot.
// Exit codes: 0 ok, 2 invalid configuration or arguments, 3 numerical
// failure, 4 statistical precondition unmet.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "decayspec/errors.hpp"
#include "decayspec/experiment.hpp"
#include "decayspec/limit_oracles.hpp"
#include "decayspec/rng.hpp"
#include "decayspec/stats.hpp"
#include "decayspec/version.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace decayspec;

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct TauArgs {
    double alpha = 0.5;
    double energy = 1.0;
    std::string field = "cos";
    double sigma2 = 1.0;
};

int run_tau(const TauArgs& a) {
    const TorusField f = (a.field == "zero") ? TorusField::zero() : TorusField::cosine();
    if (a.field != "zero" && a.field != "cos")
        throw invalid_argument("tau: field must be 'cos' or 'zero'");
    const double tau = lyapunov_tau(f, DiffusionSpec(a.sigma2), a.energy);
    ordered_json j;
    j["energy"] = a.energy;
    j["tau"] = tau;
    if (tau > 0.0)
        j["beta"] = 1.0 / tau;
    else
        j["beta"] = nullptr;
    std::cout << j.dump(2) << '\n';
    return 0;
}

struct SimArgs {
    std::string config_file;
    std::string out_dir;  // overrides config when set
    unsigned threads = 0;
};

int run_simulate(const SimArgs& a) {
    ExperimentConfig config = parse_config_file(a.config_file);
    if (!a.out_dir.empty()) config.out_dir = a.out_dir;
    const auto t0 = std::chrono::steady_clock::now();
    const auto results = run_experiment(config, a.threads);
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_outputs(config, results, config.out_dir, wall);
    std::size_t n_eigen = 0;
    for (const auto& r : results) n_eigen += r.spectrum.energies.size();
    std::cerr << "wrote " << results.size() << " realizations, " << n_eigen
              << " eigenvalues to " << config.out_dir << " (" << wall << " s)\n";
    return 0;
}

struct OracleArgs {
    std::string kind;
    double param = 1.0;  // beta for sine_beta, tau for exp_bm
    std::size_t samples = 100;
    double window_lo = 0.0;
    double window_hi = 100.0 * 3.14159265358979312;
    std::string kernel = "log_ratio";
    std::uint64_t seed = 1;
    std::string out_dir = "oracle_out";
};

int run_oracle(const OracleArgs& a) {
    const bool is_points = a.kind == "clock" || a.kind == "poisson" || a.kind == "sine_beta";
    const bool is_measure = a.kind == "exp_bm";
    if (!is_points && !is_measure)
        throw invalid_argument("oracle: kind must be clock|poisson|sine_beta|exp_bm");
    ExpBmKernel kernel = ExpBmKernel::log_ratio;
    if (a.kernel == "abs_diff")
        kernel = ExpBmKernel::abs_diff;
    else if (a.kernel != "log_ratio")
        throw invalid_argument("oracle: kernel must be log_ratio|abs_diff");

    const fs::path dir = a.out_dir;
    fs::create_directories(dir);
    if (is_points) {
        std::ofstream f(dir / "points.csv");
        f << "realization,point\n";
        for (std::size_t i = 0; i < a.samples; ++i) {
            const std::uint64_t s = derive_seed(a.seed, i);
            PointSample sample;
            if (a.kind == "clock")
                sample = clock_sample(a.window_lo, a.window_hi, s);
            else if (a.kind == "poisson")
                sample = poisson_sample(a.window_lo, a.window_hi, s);
            else
                sample = sine_beta_sample(a.param, s);
            for (double p : sample.points) f << i << ',' << fmt17(p) << '\n';
        }
    } else {
        fs::create_directories(dir / "measures");
        for (std::size_t i = 0; i < a.samples; ++i) {
            const auto s = expbm_measure_sample(a.param, kernel, derive_seed(a.seed, i));
            char name[64];
            std::snprintf(name, sizeof name, "measure_%06zu.csv", i);
            std::ofstream f(dir / "measures" / name);
            f << "cell_center,density\n";
            for (std::size_t c = 0; c < s.measure.cells; ++c)
                f << fmt17(s.measure.cell_center(c)) << ',' << fmt17(s.measure.density[c])
                  << '\n';
        }
    }
    ordered_json j;
    j["version"] = kVersion;
    j["origin"] = a.kind;
    j["param"] = a.param;
    j["samples"] = a.samples;
    j["seed"] = a.seed;
    if (is_points) {
        j["window_lo"] = a.window_lo;
        j["window_hi"] = a.window_hi;
    } else {
        j["kernel"] = a.kernel;
    }
    std::ofstream f(dir / "summary.json");
    f << j.dump(2) << '\n';
    std::cerr << "wrote " << a.samples << " " << a.kind << " samples to " << a.out_dir
              << '\n';
    return 0;
}

struct CompareArgs {
    std::string a_dir, b_dir;
    std::string statistic = "gap_w1";
    std::uint64_t seed = 1;
    std::size_t bootstrap = 1000;
};

int run_compare(const CompareArgs& a) {
    const auto ea = load_ensemble(a.a_dir);
    const auto eb = load_ensemble(a.b_dir);
    const auto stat = parse_statistic(a.statistic);
    const auto r = compare(ea, eb, stat, a.seed, a.bootstrap);
    ordered_json j;
    j["statistic"] = r.statistic;
    j["distance"] = r.distance;
    j["ci_lo"] = r.ci_lo;
    j["ci_hi"] = r.ci_hi;
    j["n_bootstrap"] = r.n_bootstrap;
    std::cout << j.dump(2) << '\n';
    return 0;
}

struct SdeArgs {
    std::string config_file;
    double s = 0.25;
    double t = 1.0;
    double lambda = 0.0;
};

int run_sde_check(const SdeArgs& a) {
    const ExperimentConfig config = parse_config_file(a.config_file);
    const long n = std::lround(config.box_l);
    if (n < 1) throw invalid_argument("sde-check: box_l is the scale n, must be >= 1");
    const double kappa0 = std::sqrt(config.e0);
    const TorusField field = config.make_field();
    const DecayProfile profile = config.make_profile();
    const DiffusionSpec spec = config.make_diffusion();
    const std::vector<double> t_grid = {a.s, a.t};

    std::vector<RenormalizedRho> ensemble;
    ensemble.reserve(config.n_realizations);
    for (std::size_t i = 0; i < config.n_realizations; ++i) {
        const auto path =
            sample_brownian_path(static_cast<double>(n) + config.dt, config.dt, spec,
                                 derive_seed(config.master_seed, i));
        ensemble.push_back(renormalized_rho(path, field, spec, profile, n, kappa0,
                                            a.lambda, t_grid, config.dt));
    }
    const auto d = sde_diagnostics(ensemble, a.s, a.t);
    const double tau = lyapunov_tau(field, spec, config.e0);

    ordered_json j;
    j["n"] = n;
    j["E0"] = config.e0;
    j["lambda"] = a.lambda;
    j["s"] = a.s;
    j["t"] = a.t;
    j["drift"] = d.drift;
    j["qv"] = d.qv;
    j["se_drift"] = d.se_drift;
    j["se_qv"] = d.se_qv;
    j["n_paths"] = d.n_paths;
    j["tau_log_ratio"] = tau * std::log(a.t / a.s);
    std::cout << j.dump(2) << '\n';
    return 0;
}

int run_plot(const std::string& input_dir) {
    const fs::path dir = input_dir;
    if (!fs::exists(dir)) throw invalid_argument("plot: no such directory: " + input_dir);
    // gnuplot scripts on stdout; no rendering dependency here
    std::cout << "# gnuplot script for " << input_dir << "\n"
              << "set terminal pngcairo size 900,600\n";
    if (fs::exists(dir / "points.csv")) {
        std::cout << "set output 'points.png'\n"
                  << "set datafile separator ','\n"
                  << "set xlabel 'rescaled point'\n"
                  << "set ylabel 'realization'\n"
                  << "plot '" << (dir / "points.csv").string()
                  << "' every ::1 using 2:1 with points pt 7 ps 0.3 notitle\n";
    }
    if (fs::exists(dir / "measures")) {
        std::vector<fs::path> files;
        for (const auto& e : fs::directory_iterator(dir / "measures"))
            if (e.path().extension() == ".csv") files.push_back(e.path());
        std::sort(files.begin(), files.end());
        if (!files.empty()) {
            std::cout << "set output 'measures.png'\n"
                      << "set datafile separator ','\n"
                      << "set xlabel 't'\n"
                      << "set ylabel 'density'\n"
                      << "plot ";
            const std::size_t show = std::min<std::size_t>(files.size(), 8);
            for (std::size_t i = 0; i < show; ++i)
                std::cout << (i ? ", " : "") << "'" << files[i].string()
                          << "' every ::1 using 1:2 with lines notitle";
            std::cout << '\n';
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"decaying-potential random Schrodinger simulator"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    TauArgs tau_args;
    auto* tau_cmd = app.add_subcommand("tau", "decay rate tau(E) and beta(E) = 1/tau");
    tau_cmd->add_option("--alpha", tau_args.alpha, "envelope exponent (informational)");
    tau_cmd->add_option("--energy", tau_args.energy, "energy E > 0")->required();
    tau_cmd->add_option("--field", tau_args.field, "potential shape: cos|zero");
    tau_cmd->add_option("--sigma2", tau_args.sigma2, "diffusion coefficient");

    SimArgs sim_args;
    auto* sim_cmd = app.add_subcommand("simulate", "run a Monte Carlo experiment");
    sim_cmd->add_option("--config", sim_args.config_file, "key=value config file")
        ->required();
    sim_cmd->add_option("--out", sim_args.out_dir, "output directory (overrides config)");
    sim_cmd->add_option("--threads", sim_args.threads, "worker threads (0 = hardware)");

    OracleArgs oracle_args;
    auto* oracle_cmd = app.add_subcommand("oracle", "sample a reference limit process");
    oracle_cmd->add_option("--kind", oracle_args.kind, "clock|poisson|sine_beta|exp_bm")
        ->required();
    oracle_cmd->add_option("--param", oracle_args.param, "beta (sine_beta) or tau (exp_bm)");
    oracle_cmd->add_option("--samples", oracle_args.samples, "number of samples");
    oracle_cmd->add_option("--window-lo", oracle_args.window_lo, "window lower end");
    oracle_cmd->add_option("--window-hi", oracle_args.window_hi, "window upper end");
    oracle_cmd->add_option("--kernel", oracle_args.kernel, "log_ratio|abs_diff (exp_bm)");
    oracle_cmd->add_option("--seed", oracle_args.seed, "master seed");
    oracle_cmd->add_option("--out", oracle_args.out_dir, "output directory");

    CompareArgs cmp_args;
    auto* cmp_cmd = app.add_subcommand("compare", "distance between two ensembles");
    cmp_cmd->add_option("--a", cmp_args.a_dir, "first ensemble directory")->required();
    cmp_cmd->add_option("--b", cmp_args.b_dir, "second ensemble directory")->required();
    cmp_cmd->add_option("--statistic", cmp_args.statistic,
                        "gap_w1|gap_ks|center_ks_uniform|measure_w1_mean");
    cmp_cmd->add_option("--seed", cmp_args.seed, "bootstrap seed");
    cmp_cmd->add_option("--bootstrap", cmp_args.bootstrap, "bootstrap resamples");

    SdeArgs sde_args;
    auto* sde_cmd = app.add_subcommand("sde-check",
                                       "drift/variance diagnostics of the renormalized "
                                       "log-norm increments");
    sde_cmd->add_option("--config", sde_args.config_file,
                        "config file; box_l is the scale n, n_realizations the path count")
        ->required();
    sde_cmd->add_option("--s", sde_args.s, "earlier time in (0,1)")->required();
    sde_cmd->add_option("--t", sde_args.t, "later time in (0,1]")->required();
    sde_cmd->add_option("--lambda", sde_args.lambda, "wavenumber offset lambda");

    std::string plot_input;
    auto* plot_cmd = app.add_subcommand("plot", "emit gnuplot scripts for an output dir");
    plot_cmd->add_option("--input", plot_input, "simulation or oracle output directory")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (tau_cmd->parsed()) return run_tau(tau_args);
        if (sim_cmd->parsed()) return run_simulate(sim_args);
        if (oracle_cmd->parsed()) return run_oracle(oracle_args);
        if (cmp_cmd->parsed()) return run_compare(cmp_args);
        if (sde_cmd->parsed()) return run_sde_check(sde_args);
        if (plot_cmd->parsed()) return run_plot(plot_input);
    } catch (const statistical_error& e) {
        std::cerr << "statistical error: " << e.what() << '\n';
        return 4;
    } catch (const invalid_argument& e) {
        std::cerr << "invalid configuration: " << e.what() << '\n';
        return 2;
    } catch (const numerical_error& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return 3;
    } catch (const invariant_error& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return 2;
}
