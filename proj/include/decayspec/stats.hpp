#pragma once

// Point-process and measure statistics: gap summaries, Kolmogorov-Smirnov
// and Wasserstein-1 distances, and bootstrap comparisons between ensembles.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "decayspec/eigenmeasure.hpp"
#include "decayspec/schrodinger_fd.hpp"

namespace decayspec {

// Fixed pairwise-summation tree; the reduction result does not depend on
// how work was distributed across threads.
double pairwise_sum(const std::vector<double>& values);

struct GapSummary {
    std::vector<double> gaps;  // sorted ascending
    double mean = 0.0;
    double sd = 0.0;
};

GapSummary gap_statistics(const PointSample& points);

// Consecutive gaps within each sample, pooled.
std::vector<double> collect_gaps(const std::vector<PointSample>& samples);

// sup_x |F_a(x) - F_b(x)| between two empirical CDFs.
double ks_two_sample(std::vector<double> a, std::vector<double> b);

// sup_x |F_a(x) - cdf(x)| for a reference CDF.
double ks_vs_cdf(std::vector<double> a, const std::function<double(double)>& cdf);

double ks_vs_uniform01(std::vector<double> a);

// Exact W1 between two empirical distributions on the line.
double empirical_w1(std::vector<double> a, std::vector<double> b);

enum class CompareStatistic { gap_w1, gap_ks, center_ks_uniform, measure_w1_mean };

CompareStatistic parse_statistic(const std::string& name);
std::string statistic_name(CompareStatistic s);

// An ensemble is whatever a comparison may need; a statistic rejects
// ensembles missing its inputs.
struct Ensemble {
    std::vector<PointSample> point_samples;
    std::vector<EigenfunctionMeasure> measures;
    std::vector<double> centers;  // localization centers
};

struct CompareResult {
    std::string statistic;
    double distance = 0.0;
    double ci_lo = 0.0;  // bootstrap 95% CI
    double ci_hi = 0.0;
    std::size_t n_bootstrap = 0;
};

// Two-ensemble distance with a percentile bootstrap CI (resampling at the
// sample/realization level). Deterministic given the seed.
CompareResult compare(const Ensemble& a, const Ensemble& b, CompareStatistic statistic,
                      std::uint64_t seed, std::size_t n_bootstrap = 1000);

}  // namespace decayspec
