// Acceptance runner: one criterion per invocation, selected by argv[1]
// (1..10). Prints a single pass/fail line with the observed numbers and
// exits 0 on pass, 1 on fail. Criterion 10 needs the CLI binary path as
// argv[2].

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "decayspec/experiment.hpp"
#include "decayspec/limit_oracles.hpp"
#include "decayspec/prufer_flow.hpp"
#include "decayspec/rng.hpp"
#include "decayspec/stats.hpp"

namespace fs = std::filesystem;
using namespace decayspec;

namespace {

constexpr double kPi = std::numbers::pi;

struct Check {
    bool ok = true;
    std::ostringstream detail;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            detail << " FAILED[" << what << "]";
        }
    }
    template <typename T>
    Check& operator<<(const T& v) {
        detail << v;
        return *this;
    }
};

// ---- 1: free-spectrum exactness -------------------------------------------

Check criterion1() {
    Check c;
    const double L = 10.0, h = 1e-3;
    DisorderPath empty;
    const auto profile = DecayProfile(0.5);
    const auto H = assemble(empty, TorusField::zero(), profile, L, h);
    const auto w = eigenvalues_in(H, 0.01, 40.0);
    c.require(w.energies.size() == 20,
              "count " + std::to_string(w.energies.size()) + " != 20");
    double worst_disc = 0.0, worst_cont = 0.0;
    for (std::size_t j = 0; j < w.energies.size(); ++j) {
        const double exact = free_discrete_eigenvalue(H.h, H.box_length, j + 1);
        const double cont = std::pow(static_cast<double>(j + 1) * kPi / L, 2);
        worst_disc = std::max(worst_disc, std::abs(w.energies[j] - exact) / exact);
        worst_cont = std::max(worst_cont, std::abs(w.energies[j] - cont) / cont);
    }
    c.require(worst_disc < 1e-12, "discrete rel err " + std::to_string(worst_disc));
    c.require(worst_cont < 5e-6, "continuum rel err " + std::to_string(worst_cont));

    const auto shot = shoot_eigenvalues(empty, TorusField::zero(), profile, L, 0.01, 40.0);
    c.require(shot.energies.size() == 20, "shooting count");
    double worst_shot = 0.0;
    for (std::size_t j = 0; j < shot.energies.size(); ++j) {
        const double kj = std::sqrt(shot.energies[j]);
        worst_shot = std::max(worst_shot,
                              std::abs(kj - static_cast<double>(j + 1) * kPi / L));
    }
    c.require(worst_shot < 1e-10, "shooting kappa err " + std::to_string(worst_shot));
    c << "fd_rel=" << worst_disc << " cont_rel=" << worst_cont
      << " shoot_abs=" << worst_shot;
    return c;
}

// ---- 2: free-measure flatness ---------------------------------------------

Check criterion2() {
    Check c;
    const double L = 10.0, h = 1e-3;
    DisorderPath empty;
    const auto H = assemble(empty, TorusField::zero(), DecayProfile(0.5), L, h);
    auto w = eigenvalues_in(H, 0.01, 40.0);
    attach_eigenvectors(H, w);
    double worst_tv = 0.0;
    for (const auto& pair : w.eigenpairs) {
        const auto mu = build_measure(pair, H.h, H.box_length, pair.energy);
        double tv = 0.0;
        for (double d : mu.density) tv += std::abs(d - 1.0);
        tv *= 0.5 * mu.cell_width();
        worst_tv = std::max(worst_tv, tv);
    }
    c.require(worst_tv < 1e-6, "TV to uniform " + std::to_string(worst_tv));
    c << "n_measures=" << w.eigenpairs.size() << " worst_tv=" << worst_tv;
    return c;
}

// ---- 3: tau closed form ----------------------------------------------------

Check criterion3() {
    Check c;
    const auto field = TorusField::cosine();
    const DiffusionSpec spec(1.0);
    double worst = 0.0;
    for (double E : {0.25, 1.0, 4.0}) {
        const double got = lyapunov_tau(field, spec, E);
        const double expect = 1.0 / (4.0 * E * (1.0 + 16.0 * E));
        worst = std::max(worst, std::abs(got - expect) / expect);
    }
    c.require(worst < 1e-12, "tau rel err " + std::to_string(worst));
    c << "worst_rel=" << worst << " tau(1)=" << lyapunov_tau(field, spec, 1.0);
    return c;
}

// ---- 4: renormalized log-norm increment moments ----------------------------

Check criterion4() {
    Check c;
    const long n = 2000;
    const std::size_t n_paths = 500;
    const double dt = 0.02;
    const auto field = TorusField::cosine();
    const DiffusionSpec spec(1.0);
    const DecayProfile profile(0.5);
    const std::vector<double> t_grid = {0.25, 1.0};

    std::vector<RenormalizedRho> ensemble;
    ensemble.reserve(n_paths);
    for (std::size_t i = 0; i < n_paths; ++i) {
        const auto path = sample_brownian_path(static_cast<double>(n) + dt, dt, spec,
                                               derive_seed(401, i));
        ensemble.push_back(
            renormalized_rho(path, field, spec, profile, n, 1.0, 0.0, t_grid, dt));
    }
    const auto d = sde_diagnostics(ensemble, 0.25, 1.0);
    const double target = std::log(4.0) / 68.0;
    c.require(std::abs(d.drift - target) < 3.0 * d.se_drift,
              "drift " + std::to_string(d.drift) + " vs " + std::to_string(target));
    c.require(std::abs(d.qv - target) < 3.0 * d.se_qv,
              "variance " + std::to_string(d.qv) + " vs " + std::to_string(target));
    c << "target=" << target << " drift=" << d.drift << "+-" << d.se_drift
      << " qv=" << d.qv << "+-" << d.se_qv;
    return c;
}

// ---- 5: clock regime (alpha = 1) ------------------------------------------

double pooled_gap_sd(const ExperimentConfig& base, double L, std::size_t n_real,
                     std::uint64_t master) {
    ExperimentConfig c = base;
    c.box_l = L;
    c.master_seed = master;
    c.n_realizations = n_real;
    c.finalize();
    const auto field = c.make_field();
    const auto profile = c.make_profile();
    std::vector<double> gaps;
    for (std::size_t i = 0; i < n_real; ++i) {
        const auto path = sample_brownian_path(c.box_l + c.dt, c.dt, c.make_diffusion(),
                                               derive_seed(c.master_seed, i));
        const auto H = assemble(path, field, profile, c.box_l, c.h);
        const auto w = eigenvalues_in(H, c.j_a, c.j_b);
        const auto pts = rescaled_process(w, c.box_l, c.e0);
        for (std::size_t k = 0; k + 1 < pts.points.size(); ++k)
            gaps.push_back(pts.points[k + 1] - pts.points[k]);
    }
    double mean = 0.0;
    for (double g : gaps) mean += g;
    mean /= static_cast<double>(gaps.size());
    double var = 0.0;
    for (double g : gaps) var += (g - mean) * (g - mean);
    return std::sqrt(var / static_cast<double>(gaps.size() - 1));
}

Check criterion5() {
    Check c;
    ExperimentConfig base;
    base.alpha = 1.0;
    base.e0 = 1.0;
    const double sd500 = pooled_gap_sd(base, 500.0, 100, 501);
    const double sd2000 = pooled_gap_sd(base, 2000.0, 100, 502);
    c.require(sd2000 < sd500, "gap SD not decreasing with L");
    c.require(sd2000 < 0.15 * kPi, "gap SD at L=2000: " + std::to_string(sd2000));
    c << "sd_L500=" << sd500 << " sd_L2000=" << sd2000 << " bar=" << 0.15 * kPi;
    return c;
}

// ---- 6: localization (alpha = 1/4) ----------------------------------------

Check criterion6() {
    Check c;
    ExperimentConfig cfg;
    cfg.alpha = 0.25;
    cfg.e0 = 0.25;  // small energy: strong decay, box holds many decay lengths
    cfg.box_l = 2000.0;
    cfg.n_realizations = 40;
    cfg.master_seed = 601;
    cfg.finalize();
    const auto results = run_experiment(cfg, 0);

    const std::size_t n_pairs = 500;
    std::vector<double> centers;
    double w1_sum = 0.0;
    for (std::size_t i = 0; i < n_pairs; ++i) {
        const auto p = sample_energy_pair(results, cfg.j_a, cfg.j_b, derive_seed(602, i));
        const double u = localization_center(p.measure);
        centers.push_back(u);
        w1_sum += wasserstein1(p.measure, delta_measure(u, p.measure.cells));
    }
    const double ks = ks_vs_uniform01(centers);
    const double w1_mean = w1_sum / static_cast<double>(n_pairs);
    c.require(ks < 0.05, "center KS " + std::to_string(ks));
    c.require(w1_mean < 0.1, "mean W1 to own delta " + std::to_string(w1_mean));
    c << "center_ks=" << ks << " mean_w1_delta=" << w1_mean;
    return c;
}

// ---- 7: critical regime (alpha = 1/2, beta = 68) --------------------------

Check criterion7() {
    Check c;
    ExperimentConfig cfg;
    cfg.alpha = 0.5;
    cfg.e0 = 1.0;
    cfg.box_l = 2000.0;
    cfg.n_realizations = 300;
    cfg.master_seed = 701;
    cfg.finalize();
    const auto results = run_experiment(cfg, 0);

    Ensemble sim;
    for (const auto& r : results) {
        if (r.points.points.size() >= 2) sim.point_samples.push_back(r.points);
        for (const auto& p : r.pairs) sim.measures.push_back(p.measure);
    }

    const double lo = cfg.box_l * (std::sqrt(cfg.j_a) - 1.0);
    const double hi = cfg.box_l * (std::sqrt(cfg.j_b) - 1.0);
    const std::size_t n_oracle = 300;
    Ensemble sine, clock, poisson, expbm, unif;
    for (std::size_t i = 0; i < n_oracle; ++i) {
        sine.point_samples.push_back(sine_beta_sample(68.0, derive_seed(702, i)));
        clock.point_samples.push_back(clock_sample(lo, hi, derive_seed(703, i)));
        poisson.point_samples.push_back(poisson_sample(lo, hi, derive_seed(704, i)));
        expbm.measures.push_back(
            expbm_measure_sample(1.0 / 68.0, ExpBmKernel::log_ratio, derive_seed(705, i))
                .measure);
    }
    unif.measures.push_back(uniform_measure());

    const auto d_sine = compare(sim, sine, CompareStatistic::gap_w1, 71);
    const auto d_clock = compare(sim, clock, CompareStatistic::gap_w1, 72);
    const auto d_poisson = compare(sim, poisson, CompareStatistic::gap_w1, 73);
    c.require(d_sine.distance < d_clock.distance && d_sine.distance < d_poisson.distance,
              "sine_beta not the closest oracle");
    c.require(d_sine.ci_hi < d_clock.ci_lo, "CI overlap with clock");
    c.require(d_sine.ci_hi < d_poisson.ci_lo, "CI overlap with poisson");

    // Measure comparison by W1 energy distance D(A,B) = 2 m(A,B) - m(A,A)
    // - m(B,B), m = mean pairwise W1: zero iff the laws agree. The raw cross
    // mean m(A,B) cannot order the ensembles here, since for independent
    // fluctuations around uniform m(A,B) ~ sqrt(2) m(A,U) exceeds m(A,U)
    // even when A and B share the exact same law.
    std::vector<EigenfunctionMeasure> sub;
    const std::size_t stride = std::max<std::size_t>(1, sim.measures.size() / 300);
    for (std::size_t i = 0; i < sim.measures.size(); i += stride)
        sub.push_back(sim.measures[i]);
    auto mean_cross = [](const std::vector<EigenfunctionMeasure>& a,
                         const std::vector<EigenfunctionMeasure>& b) {
        double s = 0.0;
        for (const auto& x : a)
            for (const auto& y : b) s += wasserstein1(x, y);
        return s / (static_cast<double>(a.size()) * static_cast<double>(b.size()));
    };
    auto mean_self = [](const std::vector<EigenfunctionMeasure>& a) {
        double s = 0.0;
        const std::size_t n = a.size();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) s += wasserstein1(a[i], a[j]);
        return 2.0 * s / (static_cast<double>(n) * static_cast<double>(n - 1));
    };
    const double self_sim = mean_self(sub);
    const double self_oracle = mean_self(expbm.measures);
    const double cross_oracle = mean_cross(sub, expbm.measures);
    const double cross_unif = mean_cross(sub, unif.measures);
    const double e_expbm = 2.0 * cross_oracle - self_sim - self_oracle;
    const double e_unif = 2.0 * cross_unif - self_sim;  // singleton has zero self term
    c.require(e_expbm < e_unif, "exp-BM measures not closer than uniform (energy distance)");

    c << "gap_w1: sine=" << d_sine.distance << " [" << d_sine.ci_lo << ","
      << d_sine.ci_hi << "]"
      << " clock=" << d_clock.distance << " [" << d_clock.ci_lo << "," << d_clock.ci_hi
      << "]"
      << " poisson=" << d_poisson.distance << " [" << d_poisson.ci_lo << ","
      << d_poisson.ci_hi << "]"
      << " | measure_w1 cross: expbm=" << cross_oracle << " uniform=" << cross_unif
      << " energy: expbm=" << e_expbm << " uniform=" << e_unif;
    return c;
}

// ---- 8: kernel-average consistency ----------------------------------------

Check criterion8() {
    Check c;
    const double L = 500.0, a = 1.0, b = 2.0;
    DisorderPath empty;
    const double h = 0.02 / std::sqrt(b);
    const auto H = assemble(empty, TorusField::zero(), DecayProfile(0.5), L, h);
    const auto w = eigenvalues_in(H, a, b);

    RealizationResult r;
    for (double E : w.energies) {
        PairSample p;
        p.energy = E;
        r.pairs.push_back(std::move(p));
    }
    std::vector<RealizationResult> reals;
    reals.push_back(std::move(r));

    const auto res = kernel_average(reals, L, a, b, 800,
                                    [](double, const EigenfunctionMeasure*) { return 1.0; });
    const double rel = std::abs(res.quadrature - res.direct) / res.direct;
    c.require(rel < 0.02, "dual evaluation mismatch " + std::to_string(rel));
    c << "quadrature=" << res.quadrature << " direct=" << res.direct << " rel=" << rel;
    return c;
}

// ---- 9: oracle self-tests --------------------------------------------------

Check criterion9() {
    Check c;
    // clock: gaps exactly pi
    const auto clk = clock_sample(0.0, 50.0 * kPi, 91);
    double worst_gap = 0.0;
    for (std::size_t i = 0; i + 1 < clk.points.size(); ++i)
        worst_gap = std::max(worst_gap,
                             std::abs(clk.points[i + 1] - clk.points[i] - kPi));
    c.require(worst_gap < 1e-12, "clock gap error " + std::to_string(worst_gap));

    // poisson: gap law Exp(mean pi), KS < 0.02 at 1e4 gaps
    std::vector<double> gaps;
    std::uint64_t s = 0;
    while (gaps.size() < 10000) {
        const auto p = poisson_sample(0.0, 500.0, derive_seed(92, s++));
        for (std::size_t i = 0; i + 1 < p.points.size(); ++i)
            gaps.push_back(p.points[i + 1] - p.points[i]);
    }
    gaps.resize(10000);
    const double ks =
        ks_vs_cdf(std::move(gaps), [](double x) { return 1.0 - std::exp(-x / kPi); });
    c.require(ks < 0.02, "poisson gap KS " + std::to_string(ks));

    // exp-BM zero-noise envelope to 1e-10
    double worst_env = 0.0;
    for (auto kernel : {ExpBmKernel::log_ratio, ExpBmKernel::abs_diff}) {
        const double tau = 2.0;
        const auto smp = expbm_measure_sample(tau, kernel, 93, kDefaultMeasureCells, true);
        const auto& mu = smp.measure;
        std::vector<double> env(mu.cells);
        double norm = 0.0;
        for (std::size_t i = 0; i < mu.cells; ++i) {
            const double t = mu.cell_center(i);
            const double k = (kernel == ExpBmKernel::log_ratio) ? std::log(t / smp.center)
                                                                : (t - smp.center);
            env[i] = std::exp(-2.0 * tau * std::abs(k));
            norm += env[i] * mu.cell_width();
        }
        for (std::size_t i = 0; i < mu.cells; ++i)
            worst_env = std::max(worst_env, std::abs(mu.density[i] - env[i] / norm));
    }
    c.require(worst_env < 1e-10, "exp-BM envelope error " + std::to_string(worst_env));

    // sine_beta: unfolded mean gap pi within 2% at beta = 68
    std::vector<double> sgaps;
    for (std::uint64_t i = 0; i < 40; ++i) {
        const auto smp = sine_beta_sample(68.0, derive_seed(94, i));
        for (std::size_t k = 0; k + 1 < smp.points.size(); ++k)
            sgaps.push_back(smp.points[k + 1] - smp.points[k]);
    }
    double mean = 0.0;
    for (double g : sgaps) mean += g;
    mean /= static_cast<double>(sgaps.size());
    c.require(std::abs(mean - kPi) / kPi < 0.02,
              "sine_beta mean gap " + std::to_string(mean));
    c << "clock_gap_err=" << worst_gap << " poisson_ks=" << ks
      << " envelope_err=" << worst_env << " sine_mean_gap=" << mean;
    return c;
}

// ---- 10: CLI determinism ---------------------------------------------------

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

Check criterion10(const std::string& cli) {
    Check c;
    const fs::path work = fs::temp_directory_path() / "decayspec_accept10";
    fs::remove_all(work);
    fs::create_directories(work);
    {
        std::ofstream f(work / "config.txt");
        f << "alpha = 0.5\ne0 = 1.0\nbox_l = 60\nn_realizations = 3\n"
          << "master_seed = 7\nfield = cos\n";
    }
    const fs::path a = work / "a", b = work / "b";
    auto run = [&](const fs::path& out, const char* threads) {
        const std::string cmd = "'" + cli + "' simulate --config '" +
                                (work / "config.txt").string() + "' --out '" +
                                out.string() + "' --threads " + threads + " 2>/dev/null";
        return std::system(cmd.c_str());
    };
    c.require(run(a, "1") == 0, "first simulate run failed");
    c.require(run(b, "4") == 0, "second simulate run failed");
    if (!c.ok) return c;

    std::size_t n_files = 0;
    for (const auto& entry : fs::recursive_directory_iterator(a)) {
        if (!entry.is_regular_file()) continue;
        const auto rel = fs::relative(entry.path(), a);
        const auto other = b / rel;
        c.require(fs::exists(other), "missing in second run: " + rel.string());
        if (!fs::exists(other)) continue;
        if (rel.filename() == "summary.json") {
            // wall time and the output path are the only run-dependent fields
            auto ja = nlohmann::json::parse(slurp(entry.path()));
            auto jb = nlohmann::json::parse(slurp(other));
            ja.erase("wall_seconds");
            jb.erase("wall_seconds");
            ja["config"].erase("out_dir");
            jb["config"].erase("out_dir");
            c.require(ja == jb, "summary.json differs beyond wall time");
        } else {
            c.require(slurp(entry.path()) == slurp(other),
                      "byte mismatch: " + rel.string());
        }
        ++n_files;
    }
    c << "compared_files=" << n_files;
    fs::remove_all(work);
    return c;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: acceptance <criterion 1..10> [cli-binary]\n";
        return 2;
    }
    const int which = std::atoi(argv[1]);
    const auto t0 = std::chrono::steady_clock::now();
    Check c;
    try {
        switch (which) {
            case 1: c = criterion1(); break;
            case 2: c = criterion2(); break;
            case 3: c = criterion3(); break;
            case 4: c = criterion4(); break;
            case 5: c = criterion5(); break;
            case 6: c = criterion6(); break;
            case 7: c = criterion7(); break;
            case 8: c = criterion8(); break;
            case 9: c = criterion9(); break;
            case 10:
                if (argc < 3) {
                    std::cerr << "criterion 10 needs the CLI binary path\n";
                    return 2;
                }
                c = criterion10(argv[2]);
                break;
            default:
                std::cerr << "unknown criterion " << which << '\n';
                return 2;
        }
    } catch (const std::exception& e) {
        c.ok = false;
        c << " exception: " << e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << "criterion " << which << ": " << (c.ok ? "PASS" : "FAIL") << " ("
              << c.detail.str() << ") [" << secs << " s]" << std::endl;
    return c.ok ? 0 : 1;
}
