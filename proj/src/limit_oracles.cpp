#include "decayspec/limit_oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "decayspec/errors.hpp"
#include "decayspec/rng.hpp"
#include "decayspec/tridiagonal.hpp"

namespace decayspec {

namespace {
constexpr double kPi = std::numbers::pi;
}

PointSample clock_sample(double window_lo, double window_hi, std::uint64_t seed) {
    if (!(window_hi > window_lo)) throw invalid_argument("clock_sample: empty window");
    Rng rng(seed);
    const double theta = rng.uniform() * kPi;
    PointSample s;
    s.window_lo = window_lo;
    s.window_hi = window_hi;
    s.origin = "clock";
    const auto n_lo = static_cast<long>(std::ceil((window_lo - theta) / kPi));
    const auto n_hi = static_cast<long>(std::floor((window_hi - theta) / kPi));
    for (long n = n_lo; n <= n_hi; ++n)
        s.points.push_back(static_cast<double>(n) * kPi + theta);
    return s;
}

PointSample poisson_sample(double window_lo, double window_hi, std::uint64_t seed) {
    if (!(window_hi > window_lo)) throw invalid_argument("poisson_sample: empty window");
    Rng rng(seed);
    PointSample s;
    s.window_lo = window_lo;
    s.window_hi = window_hi;
    s.origin = "poisson";
    double x = window_lo + rng.exponential(kPi);
    while (x <= window_hi) {
        s.points.push_back(x);
        x += rng.exponential(kPi);
    }
    return s;
}

namespace {

// semicircle CDF on [-2, 2]
double semicircle_cdf(double x) {
    x = std::clamp(x, -2.0, 2.0);
    return (x * std::sqrt(4.0 - x * x) + 4.0 * std::asin(0.5 * x) + 2.0 * kPi) /
           (4.0 * kPi);
}

}  // namespace

PointSample sine_beta_sample(double beta, std::uint64_t seed, const SineBetaConfig& cfg) {
    if (beta <= 0) throw invalid_argument("sine_beta_sample: beta must be > 0");
    const std::size_t N = cfg.matrix_size;
    if (N < 10) throw invalid_argument("sine_beta_sample: matrix_size too small");

    Rng rng(seed);
    const double scale = 1.0 / std::sqrt(beta * static_cast<double>(N));
    std::vector<double> diag(N), off(N - 1);
    for (std::size_t i = 0; i < N; ++i) diag[i] = rng.gaussian(0.0, std::sqrt(2.0)) * scale;
    for (std::size_t i = 0; i + 1 < N; ++i)
        off[i] = rng.chi(beta * static_cast<double>(N - 1 - i)) * scale;

    auto lambda = tridiag::all_eigenvalues(diag, off, 1e-10);

    // central bulk, unfolded by the semicircle and rescaled to mean gap pi
    const auto keep = std::max<std::size_t>(
        2, static_cast<std::size_t>(std::llround(cfg.bulk_fraction * static_cast<double>(N))));
    const std::size_t first = (N - keep) / 2;

    PointSample s;
    s.origin = "sine_beta";
    s.points.reserve(keep);
    for (std::size_t i = first; i < first + keep; ++i)
        s.points.push_back(static_cast<double>(N) * semicircle_cdf(lambda[i]) * kPi);
    std::sort(s.points.begin(), s.points.end());
    s.window_lo = s.points.front();
    s.window_hi = s.points.back();
    return s;
}

ExpBmSample expbm_measure_sample(double tau, ExpBmKernel kernel, std::uint64_t seed,
                                 std::size_t cells, bool zero_noise) {
    if (tau <= 0) throw invalid_argument("expbm_measure_sample: tau must be > 0");
    if (cells < 2) throw invalid_argument("expbm_measure_sample: cells must be >= 2");

    Rng rng(seed);
    const double U = rng.uniform();

    std::vector<double> k(cells);
    for (std::size_t i = 0; i < cells; ++i) {
        const double t = (static_cast<double>(i) + 0.5) / static_cast<double>(cells);
        k[i] = (kernel == ExpBmKernel::log_ratio) ? std::log(t / U) : (t - U);
    }

    // Z at the sorted kernel-image points s_i = tau * k_i: exact sequential
    // Gaussian increments from s = 0 outward on both sides.
    std::vector<double> Z(cells, 0.0);
    if (!zero_noise) {
        std::vector<std::size_t> order(cells);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return k[a] < k[b]; });
        const auto split = static_cast<std::size_t>(
            std::lower_bound(order.begin(), order.end(), 0.0,
                             [&](std::size_t i, double v) { return tau * k[i] < v; }) -
            order.begin());
        double z = 0.0, prev = 0.0;
        for (std::size_t j = split; j < cells; ++j) {  // positive side, ascending
            const double si = tau * k[order[j]];
            z += std::sqrt(si - prev) * rng.gaussian();
            prev = si;
            Z[order[j]] = z;
        }
        z = 0.0;
        prev = 0.0;
        for (std::size_t j = split; j-- > 0;) {  // negative side, descending
            const double si = tau * k[order[j]];
            z += std::sqrt(prev - si) * rng.gaussian();
            prev = si;
            Z[order[j]] = z;
        }
    }

    std::vector<double> density(cells);
    for (std::size_t i = 0; i < cells; ++i)
        density[i] = std::exp(2.0 * Z[i] - 2.0 * tau * std::abs(k[i]));

    ExpBmSample out;
    out.measure = normalize_density(std::move(density), 0.0);
    out.center = U;
    return out;
}

}  // namespace decayspec
