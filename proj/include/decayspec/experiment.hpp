#pragma once

// Monte Carlo experiment driver: config parsing, per-realization pipeline
// (path -> Hamiltonian -> spectrum -> measures -> rescaled points),
// energy-averaged pair sampling, the dual kernel-average evaluation, and
// the on-disk output formats consumed by the CLI.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "decayspec/decay_profile.hpp"
#include "decayspec/eigenmeasure.hpp"
#include "decayspec/prufer_flow.hpp"
#include "decayspec/schrodinger_fd.hpp"
#include "decayspec/stats.hpp"
#include "decayspec/torus_model.hpp"

namespace decayspec {

struct ExperimentConfig {
    double alpha = 0.5;
    double e0 = 1.0;
    double j_a = 0.0, j_b = 0.0;  // 0,0 -> window derived around e0
    double box_l = 200.0;
    double h = 0.0;    // 0 -> default_grid_step(j_b)
    double dt = 0.0;   // path step; 0 -> h/2
    std::size_t n_realizations = 10;
    std::uint64_t master_seed = 1;
    std::string field = "cos";  // "cos" | "zero"
    double sigma2 = 1.0;
    std::size_t measure_cells = kDefaultMeasureCells;
    std::string out_dir = "out";

    // fills derived defaults and validates; throws invalid_argument
    void finalize();

    TorusField make_field() const;
    DecayProfile make_profile() const { return DecayProfile(alpha); }
    DiffusionSpec make_diffusion() const { return DiffusionSpec(sigma2); }
};

// Flat key=value file, keys exactly the config fields; unknown keys are
// errors. '#' starts a comment line.
ExperimentConfig parse_config_file(const std::filesystem::path& file);
ExperimentConfig parse_config_text(const std::string& text);

struct PairSample {
    double energy = 0.0;
    EigenfunctionMeasure measure;
    std::optional<double> lambda;  // rescaled position around e0
};

struct RealizationResult {
    std::size_t index = 0;
    std::uint64_t seed = 0;
    SpectrumWindow spectrum;
    std::vector<PairSample> pairs;
    PointSample points;
};

RealizationResult run_realization(const ExperimentConfig& config, std::size_t index);

// Runs all realizations, parallel over indices, merged in index order.
std::vector<RealizationResult> run_experiment(const ExperimentConfig& config,
                                              unsigned n_threads = 0);

// E_J^{(L)}: pick a realization, then uniformly one of its eigenvalues in
// [a, b]; realizations with empty windows are resampled, error when all
// are empty.
PairSample sample_energy_pair(const std::vector<RealizationResult>& realizations,
                              double a, double b, std::uint64_t seed);

using PairFunctional = std::function<double(double, const EigenfunctionMeasure*)>;

struct KernelAverageResult {
    double quadrature = 0.0;  // (1/N(J)) int dN(E0) E[ G_L(E0) ]
    double direct = 0.0;      // (1/(pi L N(J))) E[ sum_j g2_j ]
};

// Dual evaluation of the triangular-kernel energy average; the two values
// agree up to boundary terms of one kernel width.
KernelAverageResult kernel_average(const std::vector<RealizationResult>& realizations,
                                   double L, double a, double b, std::size_t e0_grid_size,
                                   const PairFunctional& g2);

// --- on-disk formats (documented in README) -------------------------------
// spectra.csv : realization_seed,j,E_j,rescaled_point
// points.csv  : realization,point            (origin in summary.json)
// measures/measure_<k>.csv : cell_center,density
// summary.json: config echo, library version, wall times

void write_outputs(const ExperimentConfig& config,
                   const std::vector<RealizationResult>& results,
                   const std::filesystem::path& out_dir, double wall_seconds);

Ensemble load_ensemble(const std::filesystem::path& dir);

}  // namespace decayspec
