// Python bindings for the simulation library. Thin wrappers only; all
// numerics stay in the C++ core.

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "decayspec/experiment.hpp"
#include "decayspec/limit_oracles.hpp"
#include "decayspec/prufer_flow.hpp"
#include "decayspec/rng.hpp"
#include "decayspec/stats.hpp"
#include "decayspec/version.hpp"

namespace py = pybind11;
using namespace decayspec;

PYBIND11_MODULE(_core, m) {
    m.doc() = "eigenvalues and eigenfunction measures of the 1-d random "
              "Schrodinger operator with decaying potential";
    m.attr("__version__") = kVersion;

    py::register_exception<numerical_error>(m, "NumericalError");
    py::register_exception<statistical_error>(m, "StatisticalError");

    py::class_<TorusField>(m, "TorusField")
        .def_static("zero", &TorusField::zero)
        .def_static("cosine", &TorusField::cosine)
        .def("__call__", &TorusField::operator())
        .def("is_zero", &TorusField::is_zero);

    py::class_<DiffusionSpec>(m, "DiffusionSpec")
        .def(py::init<double>(), py::arg("sigma2"))
        .def_readonly("sigma2", &DiffusionSpec::sigma2);

    py::class_<DisorderPath>(m, "DisorderPath")
        .def(py::init<>())
        .def_readonly("dt", &DisorderPath::dt)
        .def_readonly("values", &DisorderPath::values)
        .def_readonly("seed", &DisorderPath::seed)
        .def("duration", &DisorderPath::duration)
        .def("at_time", &DisorderPath::at_time);

    py::class_<DecayProfile>(m, "DecayProfile")
        .def(py::init<double>(), py::arg("alpha"))
        .def("__call__", &DecayProfile::operator())
        .def("integral_a_squared", &DecayProfile::integral_a_squared);

    m.def("derive_seed", &derive_seed, py::arg("master"), py::arg("index"));
    m.def("sample_brownian_path", &sample_brownian_path, py::arg("T"), py::arg("dt"),
          py::arg("spec"), py::arg("seed"));
    m.def("evaluate_field", &evaluate_field, py::arg("field"), py::arg("path"));
    m.def("lyapunov_tau", &lyapunov_tau, py::arg("field"), py::arg("spec"),
          py::arg("energy"));

    py::class_<GridHamiltonian>(m, "GridHamiltonian")
        .def_readonly("box_length", &GridHamiltonian::box_length)
        .def_readonly("h", &GridHamiltonian::h)
        .def_readonly("potential", &GridHamiltonian::potential)
        .def("size", &GridHamiltonian::size);

    py::class_<EigenPair>(m, "EigenPair")
        .def_readonly("energy", &EigenPair::energy)
        .def_readonly("vector", &EigenPair::vector)
        .def_readonly("index", &EigenPair::index);

    py::class_<SpectrumWindow>(m, "SpectrumWindow")
        .def_readonly("window_lo", &SpectrumWindow::window_lo)
        .def_readonly("window_hi", &SpectrumWindow::window_hi)
        .def_readonly("energies", &SpectrumWindow::energies)
        .def_readonly("eigenpairs", &SpectrumWindow::eigenpairs);

    py::class_<PointSample>(m, "PointSample")
        .def_readonly("window_lo", &PointSample::window_lo)
        .def_readonly("window_hi", &PointSample::window_hi)
        .def_readonly("points", &PointSample::points)
        .def_readonly("origin", &PointSample::origin);

    m.def("default_grid_step", &default_grid_step, py::arg("energy_max"));
    m.def("assemble", &assemble, py::arg("path"), py::arg("field"), py::arg("profile"),
          py::arg("L"), py::arg("h"));
    m.def("count_below", &count_below, py::arg("H"), py::arg("E"));
    m.def("eigenvalues_in", &eigenvalues_in, py::arg("H"), py::arg("a"), py::arg("b"));
    m.def("eigenvector", &eigenvector, py::arg("H"), py::arg("energy"));
    m.def("attach_eigenvectors", &attach_eigenvectors, py::arg("H"), py::arg("window"));
    m.def("rescaled_process", &rescaled_process, py::arg("spectrum"), py::arg("L"),
          py::arg("E0"));

    py::class_<EigenfunctionMeasure>(m, "EigenfunctionMeasure")
        .def_readonly("cells", &EigenfunctionMeasure::cells)
        .def_readonly("density", &EigenfunctionMeasure::density)
        .def_readonly("energy", &EigenfunctionMeasure::energy)
        .def("cell_width", &EigenfunctionMeasure::cell_width)
        .def("cell_center", &EigenfunctionMeasure::cell_center);

    m.def("build_measure", &build_measure, py::arg("pair"), py::arg("h"),
          py::arg("box_length"), py::arg("E"), py::arg("cells") = kDefaultMeasureCells);
    m.def("localization_center", &localization_center);
    m.def("wasserstein1", &wasserstein1);
    m.def("uniform_measure", &uniform_measure, py::arg("cells") = kDefaultMeasureCells);
    m.def("delta_measure", &delta_measure, py::arg("t0"),
          py::arg("cells") = kDefaultMeasureCells);

    m.def("shoot_eigenvalues", &shoot_eigenvalues, py::arg("path"), py::arg("field"),
          py::arg("profile"), py::arg("L"), py::arg("a"), py::arg("b"),
          py::arg("dt") = 0.0);

    py::class_<RenormalizedRho>(m, "RenormalizedRho")
        .def_readonly("n", &RenormalizedRho::n)
        .def_readonly("kappa0", &RenormalizedRho::kappa0)
        .def_readonly("lambda_", &RenormalizedRho::lambda)
        .def_readonly("centering", &RenormalizedRho::centering)
        .def_readonly("t_grid", &RenormalizedRho::t_grid)
        .def_readonly("samples", &RenormalizedRho::samples);

    m.def("renormalized_rho", &renormalized_rho, py::arg("path"), py::arg("field"),
          py::arg("spec"), py::arg("profile"), py::arg("n"), py::arg("kappa0"),
          py::arg("lambda_"), py::arg("t_grid"), py::arg("dt"));

    py::class_<SdeDiagnostics>(m, "SdeDiagnostics")
        .def_readonly("drift", &SdeDiagnostics::drift)
        .def_readonly("qv", &SdeDiagnostics::qv)
        .def_readonly("se_drift", &SdeDiagnostics::se_drift)
        .def_readonly("se_qv", &SdeDiagnostics::se_qv)
        .def_readonly("n_paths", &SdeDiagnostics::n_paths);

    m.def("sde_diagnostics", &sde_diagnostics, py::arg("ensemble"), py::arg("s"),
          py::arg("t"));

    py::enum_<ExpBmKernel>(m, "ExpBmKernel")
        .value("log_ratio", ExpBmKernel::log_ratio)
        .value("abs_diff", ExpBmKernel::abs_diff);

    py::class_<ExpBmSample>(m, "ExpBmSample")
        .def_readonly("measure", &ExpBmSample::measure)
        .def_readonly("center", &ExpBmSample::center);

    m.def("clock_sample", &clock_sample, py::arg("window_lo"), py::arg("window_hi"),
          py::arg("seed"));
    m.def("poisson_sample", &poisson_sample, py::arg("window_lo"), py::arg("window_hi"),
          py::arg("seed"));
    // registered before sine_beta_sample so its default argument converts
    py::class_<SineBetaConfig>(m, "SineBetaConfig")
        .def(py::init<>())
        .def_readwrite("matrix_size", &SineBetaConfig::matrix_size)
        .def_readwrite("bulk_fraction", &SineBetaConfig::bulk_fraction);
    m.def("sine_beta_sample", &sine_beta_sample, py::arg("beta"), py::arg("seed"),
          py::arg("cfg") = SineBetaConfig{});
    m.def("expbm_measure_sample", &expbm_measure_sample, py::arg("tau"), py::arg("kernel"),
          py::arg("seed"), py::arg("cells") = kDefaultMeasureCells,
          py::arg("zero_noise") = false);

    py::class_<ExperimentConfig>(m, "ExperimentConfig")
        .def(py::init<>())
        .def_readwrite("alpha", &ExperimentConfig::alpha)
        .def_readwrite("e0", &ExperimentConfig::e0)
        .def_readwrite("j_a", &ExperimentConfig::j_a)
        .def_readwrite("j_b", &ExperimentConfig::j_b)
        .def_readwrite("box_l", &ExperimentConfig::box_l)
        .def_readwrite("h", &ExperimentConfig::h)
        .def_readwrite("dt", &ExperimentConfig::dt)
        .def_readwrite("n_realizations", &ExperimentConfig::n_realizations)
        .def_readwrite("master_seed", &ExperimentConfig::master_seed)
        .def_readwrite("field", &ExperimentConfig::field)
        .def_readwrite("sigma2", &ExperimentConfig::sigma2)
        .def_readwrite("measure_cells", &ExperimentConfig::measure_cells)
        .def_readwrite("out_dir", &ExperimentConfig::out_dir)
        .def("finalize", &ExperimentConfig::finalize);

    m.def("parse_config_text", &parse_config_text);
    m.def("parse_config_file", &parse_config_file);

    py::class_<PairSample>(m, "PairSample")
        .def_readonly("energy", &PairSample::energy)
        .def_readonly("measure", &PairSample::measure)
        .def_readonly("lambda_", &PairSample::lambda);

    py::class_<RealizationResult>(m, "RealizationResult")
        .def_readonly("index", &RealizationResult::index)
        .def_readonly("seed", &RealizationResult::seed)
        .def_readonly("spectrum", &RealizationResult::spectrum)
        .def_readonly("pairs", &RealizationResult::pairs)
        .def_readonly("points", &RealizationResult::points);

    m.def("run_realization", &run_realization, py::arg("config"), py::arg("index"));
    m.def("run_experiment", &run_experiment, py::arg("config"), py::arg("n_threads") = 0,
          py::call_guard<py::gil_scoped_release>());
    m.def("sample_energy_pair", &sample_energy_pair, py::arg("realizations"), py::arg("a"),
          py::arg("b"), py::arg("seed"));
    m.def("write_outputs", &write_outputs, py::arg("config"), py::arg("results"),
          py::arg("out_dir"), py::arg("wall_seconds"));
    m.def("load_ensemble", &load_ensemble, py::arg("dir"));

    py::enum_<CompareStatistic>(m, "CompareStatistic")
        .value("gap_w1", CompareStatistic::gap_w1)
        .value("gap_ks", CompareStatistic::gap_ks)
        .value("center_ks_uniform", CompareStatistic::center_ks_uniform)
        .value("measure_w1_mean", CompareStatistic::measure_w1_mean);

    py::class_<Ensemble>(m, "Ensemble")
        .def(py::init<>())
        .def_readwrite("point_samples", &Ensemble::point_samples)
        .def_readwrite("measures", &Ensemble::measures)
        .def_readwrite("centers", &Ensemble::centers);

    py::class_<CompareResult>(m, "CompareResult")
        .def_readonly("statistic", &CompareResult::statistic)
        .def_readonly("distance", &CompareResult::distance)
        .def_readonly("ci_lo", &CompareResult::ci_lo)
        .def_readonly("ci_hi", &CompareResult::ci_hi)
        .def_readonly("n_bootstrap", &CompareResult::n_bootstrap);

    py::class_<GapSummary>(m, "GapSummary")
        .def_readonly("gaps", &GapSummary::gaps)
        .def_readonly("mean", &GapSummary::mean)
        .def_readonly("sd", &GapSummary::sd);

    m.def("gap_statistics", &gap_statistics);
    m.def("collect_gaps", &collect_gaps);
    m.def("ks_two_sample", &ks_two_sample);
    m.def("ks_vs_uniform01", &ks_vs_uniform01);
    m.def("empirical_w1", &empirical_w1);
    m.def("compare", &compare, py::arg("a"), py::arg("b"), py::arg("statistic"),
          py::arg("seed"), py::arg("n_bootstrap") = 1000);
}
