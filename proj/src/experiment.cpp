#include "decayspec/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <numbers>
#include <numeric>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "decayspec/errors.hpp"
#include "decayspec/rng.hpp"
#include "decayspec/version.hpp"

namespace decayspec {

namespace fs = std::filesystem;

void ExperimentConfig::finalize() {
    if (alpha <= 0) throw invalid_argument("config: alpha must be > 0");
    if (e0 <= 0) throw invalid_argument("config: e0 must be > 0");
    if (sigma2 <= 0) throw invalid_argument("config: sigma2 must be > 0");
    if (n_realizations < 1) throw invalid_argument("config: n_realizations must be >= 1");
    if (box_l <= 0) throw invalid_argument("config: box_l must be > 0");
    if (field != "cos" && field != "zero")
        throw invalid_argument("config: field must be 'cos' or 'zero'");
    if (j_a == 0.0 && j_b == 0.0) {
        // default window: sqrt(E) in [sqrt(e0) - 0.05, sqrt(e0) + 0.05]
        const double k0 = std::sqrt(e0);
        if (k0 <= 0.05) throw invalid_argument("config: e0 too small for the default window");
        j_a = (k0 - 0.05) * (k0 - 0.05);
        j_b = (k0 + 0.05) * (k0 + 0.05);
    }
    if (!(j_a > 0) || !(j_b > j_a))
        throw invalid_argument("config: window must satisfy 0 < j_a < j_b");
    if (h == 0.0) h = default_grid_step(j_b);
    if (h <= 0) throw invalid_argument("config: h must be > 0");
    if (dt == 0.0) dt = h / 2.0;
    if (dt <= 0 || dt > h) throw invalid_argument("config: need 0 < dt <= h");
    if (measure_cells < 2) throw invalid_argument("config: measure_cells must be >= 2");
}

TorusField ExperimentConfig::make_field() const {
    if (field == "zero") return TorusField::zero();
    return TorusField::cosine();
}

namespace {

bool parse_bool_free_double(const std::string& v, double& out) {
    try {
        std::size_t pos = 0;
        out = std::stod(v, &pos);
        return pos == v.size();
    } catch (...) {
        return false;
    }
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text) {
    ExperimentConfig c;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        // trim
        auto issp = [](unsigned char ch) { return std::isspace(ch); };
        line.erase(line.begin(), std::find_if_not(line.begin(), line.end(), issp));
        line.erase(std::find_if_not(line.rbegin(), line.rend(), issp).base(), line.end());
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw invalid_argument("config line " + std::to_string(lineno) +
                                   ": expected key=value");
        std::string key = line.substr(0, eq);
        std::string val = line.substr(eq + 1);
        key.erase(std::find_if_not(key.rbegin(), key.rend(), issp).base(), key.end());
        val.erase(val.begin(), std::find_if_not(val.begin(), val.end(), issp));

        auto num = [&](double& target) {
            if (!parse_bool_free_double(val, target))
                throw invalid_argument("config key '" + key + "': not a number: " + val);
        };
        if (key == "alpha") num(c.alpha);
        else if (key == "e0") num(c.e0);
        else if (key == "j_a") num(c.j_a);
        else if (key == "j_b") num(c.j_b);
        else if (key == "box_l") num(c.box_l);
        else if (key == "h") num(c.h);
        else if (key == "dt") num(c.dt);
        else if (key == "sigma2") num(c.sigma2);
        else if (key == "n_realizations") {
            double d; num(d);
            if (d < 0 || d != std::floor(d))
                throw invalid_argument("config: n_realizations must be a nonnegative integer");
            c.n_realizations = static_cast<std::size_t>(d);
        } else if (key == "measure_cells") {
            double d; num(d);
            c.measure_cells = static_cast<std::size_t>(d);
        } else if (key == "master_seed") {
            c.master_seed = std::stoull(val);
        } else if (key == "field") {
            c.field = val;
        } else if (key == "out_dir") {
            c.out_dir = val;
        } else {
            throw invalid_argument("config: unknown key '" + key + "'");
        }
    }
    c.finalize();
    return c;
}

ExperimentConfig parse_config_file(const fs::path& file) {
    std::ifstream in(file);
    if (!in) throw invalid_argument("cannot open config file: " + file.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

RealizationResult run_realization(const ExperimentConfig& config, std::size_t index) {
    try {
        RealizationResult r;
        r.index = index;
        r.seed = derive_seed(config.master_seed, index);

        const TorusField field = config.make_field();
        const DecayProfile profile = config.make_profile();
        DisorderPath path;
        if (!field.is_zero())
            path = sample_brownian_path(config.box_l + config.dt, config.dt,
                                        config.make_diffusion(), r.seed);

        const GridHamiltonian H = assemble(path, field, profile, config.box_l, config.h);
        r.spectrum = eigenvalues_in(H, config.j_a, config.j_b);
        attach_eigenvectors(H, r.spectrum);

        r.pairs.reserve(r.spectrum.energies.size());
        const double k0 = std::sqrt(config.e0);
        for (const auto& pair : r.spectrum.eigenpairs) {
            PairSample p;
            p.energy = pair.energy;
            p.measure = build_measure(pair, H.h, H.box_length, pair.energy,
                                      config.measure_cells);
            p.lambda = config.box_l * (std::sqrt(pair.energy) - k0);
            r.pairs.push_back(std::move(p));
        }
        r.points = rescaled_process(r.spectrum, config.box_l, config.e0);
        // eigenvectors are only needed to build the measures; at ~8 bytes per
        // grid node per eigenvalue they dominate memory across an ensemble
        r.spectrum.eigenpairs.clear();
        r.spectrum.eigenpairs.shrink_to_fit();
        return r;
    } catch (const std::exception& e) {
        throw numerical_error("realization " + std::to_string(index) + ": " + e.what());
    }
}

std::vector<RealizationResult> run_experiment(const ExperimentConfig& config,
                                              unsigned n_threads) {
    if (n_threads == 0) n_threads = std::max(1u, std::thread::hardware_concurrency());
    const std::size_t n = config.n_realizations;
    std::vector<RealizationResult> results(n);
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;

    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                results[i] = run_realization(config, i);
            } catch (...) {
                std::scoped_lock lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> threads;
    const unsigned use = std::min<std::size_t>(n_threads, n);
    for (unsigned t = 0; t + 1 < use; ++t) threads.emplace_back(worker);
    worker();
    for (auto& t : threads) t.join();
    if (error) std::rethrow_exception(error);
    return results;
}

PairSample sample_energy_pair(const std::vector<RealizationResult>& realizations,
                              double a, double b, std::uint64_t seed) {
    if (realizations.empty()) throw invalid_argument("sample_energy_pair: no realizations");
    Rng rng(seed);
    std::vector<std::size_t> order(realizations.size());
    std::iota(order.begin(), order.end(), 0);
    // Fisher-Yates with the explicit rng, so resampling is deterministic
    for (std::size_t i = order.size(); i > 1; --i)
        std::swap(order[i - 1], order[rng.integer(i)]);

    for (std::size_t idx : order) {
        const auto& r = realizations[idx];
        std::vector<std::size_t> in_window;
        for (std::size_t j = 0; j < r.pairs.size(); ++j)
            if (r.pairs[j].energy >= a && r.pairs[j].energy <= b) in_window.push_back(j);
        if (in_window.empty()) continue;
        return r.pairs[in_window[rng.integer(in_window.size())]];
    }
    throw statistical_error("sample_energy_pair: no eigenvalue in the window in any realization");
}

KernelAverageResult kernel_average(const std::vector<RealizationResult>& realizations,
                                   double L, double a, double b,
                                   std::size_t e0_grid_size, const PairFunctional& g2) {
    if (!(a > 0) || !(b > a)) throw invalid_argument("kernel_average: need 0 < a < b");
    if (e0_grid_size < 2) throw invalid_argument("kernel_average: grid too small");

    const double ka = std::sqrt(a), kb = std::sqrt(b);
    const auto n_real = static_cast<double>(realizations.size());
    auto g1 = [](double x) { return std::abs(x) <= 1.0 ? 1.0 - std::abs(x) : 0.0; };

    // E[G_L] averaged over kappa0 on a uniform grid (trapezoid)
    double quad = 0.0;
    for (std::size_t gi = 0; gi < e0_grid_size; ++gi) {
        const double k0 =
            ka + (kb - ka) * static_cast<double>(gi) / static_cast<double>(e0_grid_size - 1);
        double G = 0.0;
        for (const auto& r : realizations) {
            for (const auto& p : r.pairs) {
                if (p.energy < a || p.energy > b) continue;
                const double x = g1(L * (std::sqrt(p.energy) - k0));
                if (x > 0) G += x * g2(p.energy, &p.measure);
            }
        }
        const double w = (gi == 0 || gi == e0_grid_size - 1) ? 0.5 : 1.0;
        quad += w * G / n_real;
    }
    quad /= static_cast<double>(e0_grid_size - 1);  // mean over the kappa interval

    double direct = 0.0;
    for (const auto& r : realizations)
        for (const auto& p : r.pairs) {
            if (p.energy < a || p.energy > b) continue;
            direct += g2(p.energy, &p.measure);
        }
    direct /= n_real * L * (kb - ka);

    return {quad, direct};
}

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

void write_outputs(const ExperimentConfig& config,
                   const std::vector<RealizationResult>& results,
                   const fs::path& out_dir, double wall_seconds) {
    fs::create_directories(out_dir / "measures");

    {
        std::ofstream f(out_dir / "spectra.csv");
        f << "realization_seed,j,E_j,rescaled_point\n";
        for (const auto& r : results)
            for (std::size_t j = 0; j < r.spectrum.energies.size(); ++j)
                f << r.seed << ',' << j << ',' << fmt_double(r.spectrum.energies[j]) << ','
                  << fmt_double(r.points.points[j]) << '\n';
    }
    {
        std::ofstream f(out_dir / "points.csv");
        f << "realization,point\n";
        for (const auto& r : results)
            for (double p : r.points.points) f << r.index << ',' << fmt_double(p) << '\n';
    }
    std::size_t k = 0;
    for (const auto& r : results) {
        for (const auto& p : r.pairs) {
            char name[64];
            std::snprintf(name, sizeof name, "measure_%06zu.csv", k++);
            std::ofstream f(out_dir / "measures" / name);
            f << "cell_center,density\n";
            for (std::size_t c = 0; c < p.measure.cells; ++c)
                f << fmt_double(p.measure.cell_center(c)) << ','
                  << fmt_double(p.measure.density[c]) << '\n';
        }
    }
    {
        nlohmann::ordered_json j;
        j["version"] = kVersion;
        j["origin"] = "simulation";
        j["wall_seconds"] = wall_seconds;
        j["n_measures"] = k;
        auto& cfg = j["config"];
        cfg["alpha"] = config.alpha;
        cfg["e0"] = config.e0;
        cfg["j_a"] = config.j_a;
        cfg["j_b"] = config.j_b;
        cfg["box_l"] = config.box_l;
        cfg["h"] = config.h;
        cfg["dt"] = config.dt;
        cfg["sigma2"] = config.sigma2;
        cfg["n_realizations"] = config.n_realizations;
        cfg["master_seed"] = config.master_seed;
        cfg["field"] = config.field;
        cfg["measure_cells"] = config.measure_cells;
        cfg["out_dir"] = config.out_dir;
        std::ofstream f(out_dir / "summary.json");
        f << j.dump(2) << '\n';
    }
}

Ensemble load_ensemble(const fs::path& dir) {
    Ensemble e;
    // points.csv -> one PointSample per realization id
    const fs::path pts = dir / "points.csv";
    if (fs::exists(pts)) {
        std::ifstream f(pts);
        std::string line;
        std::getline(f, line);  // header
        long current = -1;
        PointSample sample;
        auto flush = [&] {
            if (!sample.points.empty()) {
                std::sort(sample.points.begin(), sample.points.end());
                sample.window_lo = sample.points.front();
                sample.window_hi = sample.points.back();
                e.point_samples.push_back(std::move(sample));
                sample = PointSample{};
            }
        };
        while (std::getline(f, line)) {
            if (line.empty()) continue;
            const auto comma = line.find(',');
            if (comma == std::string::npos)
                throw invalid_argument("points.csv: malformed line: " + line);
            const long id = std::stol(line.substr(0, comma));
            if (id != current) {
                flush();
                current = id;
            }
            sample.points.push_back(std::stod(line.substr(comma + 1)));
        }
        flush();
    }
    // measures/*.csv
    const fs::path mdir = dir / "measures";
    if (fs::exists(mdir)) {
        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(mdir))
            if (entry.path().extension() == ".csv") files.push_back(entry.path());
        std::sort(files.begin(), files.end());
        for (const auto& file : files) {
            std::ifstream f(file);
            std::string line;
            std::getline(f, line);
            std::vector<double> density;
            while (std::getline(f, line)) {
                if (line.empty()) continue;
                const auto comma = line.find(',');
                density.push_back(std::stod(line.substr(comma + 1)));
            }
            auto mu = normalize_density(std::move(density), 0.0);
            e.centers.push_back(localization_center(mu));
            e.measures.push_back(std::move(mu));
        }
    }
    if (e.point_samples.empty() && e.measures.empty())
        throw invalid_argument("load_ensemble: no points.csv or measures/ in " + dir.string());
    return e;
}

}  // namespace decayspec
