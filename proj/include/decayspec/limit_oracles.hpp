#pragma once

// Reference samplers for the limit objects: the clock process, the
// homogeneous Poisson process of intensity 1/pi, the Sine_beta process
// (through the tridiagonal Gaussian beta-ensemble bulk), and the
// exponential-Brownian-motion eigenfunction measure.

#include <cstdint>
#include <string>

#include "decayspec/eigenmeasure.hpp"
#include "decayspec/schrodinger_fd.hpp"

namespace decayspec {

enum class ExpBmKernel { log_ratio, abs_diff };

struct SineBetaConfig {
    std::size_t matrix_size = 400;  // tridiagonal model size
    double bulk_fraction = 0.10;    // central share of eigenvalues kept
};

// Clock(theta) = sum_n delta_{n*pi + theta}, theta ~ uniform[0, pi).
PointSample clock_sample(double window_lo, double window_hi, std::uint64_t seed);

// Homogeneous Poisson of intensity 1/pi via exponential gaps.
PointSample poisson_sample(double window_lo, double window_hi, std::uint64_t seed);

// Approximate Sine_beta sample: bulk eigenvalues of the tridiagonal
// beta-ensemble, unfolded by the semicircle density and rescaled to mean
// gap pi. O(1/N)-biased; adequate for gap statistics.
PointSample sine_beta_sample(double beta, std::uint64_t seed,
                             const SineBetaConfig& cfg = {});

struct ExpBmSample {
    EigenfunctionMeasure measure;
    double center = 0.0;  // the sampled U
};

// density(t) proportional to exp(2 Z_{tau k(t,U)} - 2 tau |k(t,U)|) on the
// measure grid, k = log(t/U) or t - U; U ~ uniform[0,1]; Z a two-sided
// Brownian motion evaluated exactly at the kernel-image points.
// zero_noise freezes Z = 0 (deterministic envelope, for tests).
ExpBmSample expbm_measure_sample(double tau, ExpBmKernel kernel, std::uint64_t seed,
                                 std::size_t cells = kDefaultMeasureCells,
                                 bool zero_noise = false);

}  // namespace decayspec
