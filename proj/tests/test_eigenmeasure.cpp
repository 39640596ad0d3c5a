#include <doctest.h>

#include <cmath>

#include "decayspec/eigenmeasure.hpp"
#include "decayspec/limit_oracles.hpp"
#include "decayspec/rng.hpp"

using namespace decayspec;

namespace {

EigenfunctionMeasure free_case_measure(double L, double h, std::size_t which) {
    DisorderPath empty;
    const auto H = assemble(empty, TorusField::zero(), DecayProfile(0.5), L, h);
    const auto w = eigenvalues_in(H, 0.5, 2.5);
    const auto pair = eigenvector(H, w.energies.at(which));
    return build_measure(pair, H.h, H.box_length, pair.energy);
}

double tv_to_uniform(const EigenfunctionMeasure& mu) {
    double tv = 0.0;
    for (double d : mu.density) tv += std::abs(d - 1.0);
    return 0.5 * tv * mu.cell_width();
}

}  // namespace

TEST_CASE("free-case measure is uniform: the derivative term flattens sines") {
    for (std::size_t which : {0u, 2u}) {
        const auto mu = free_case_measure(10.0, 1e-3, which);
        CHECK(mu.cells == kDefaultMeasureCells);
        double mass = 0.0;
        for (double d : mu.density) mass += d * mu.cell_width();
        CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(tv_to_uniform(mu) < 1e-6);
    }
}

TEST_CASE("build_measure: validation and scale invariance") {
    DisorderPath empty;
    const auto H = assemble(empty, TorusField::zero(), DecayProfile(0.5), 10.0, 1e-3);
    const auto w = eigenvalues_in(H, 0.5, 2.5);
    auto pair = eigenvector(H, w.energies[0]);

    CHECK_THROWS_AS(build_measure(pair, H.h, H.box_length, -1.0), invalid_argument);

    EigenPair zero = pair;
    for (double& v : zero.vector) v = 0.0;
    CHECK_THROWS_AS(build_measure(zero, H.h, H.box_length, pair.energy), invalid_argument);

    // doubling psi leaves mu unchanged (normalization absorbs scale)
    const auto mu1 = build_measure(pair, H.h, H.box_length, pair.energy);
    EigenPair doubled = pair;
    for (double& v : doubled.vector) v *= 2.0;
    const auto mu2 = build_measure(doubled, H.h, H.box_length, pair.energy);
    for (std::size_t i = 0; i < mu1.cells; ++i)
        CHECK(mu1.density[i] == doctest::Approx(mu2.density[i]).epsilon(1e-13));
}

TEST_CASE("localization center") {
    CHECK(localization_center(uniform_measure()) == doctest::Approx(0.5).epsilon(1e-12));

    const auto d = delta_measure(0.3);
    CHECK(std::abs(localization_center(d) - 0.3) <= d.cell_width());
}

TEST_CASE("localization center tracks U on exp-BM oracle samples") {
    const double tau = 5.0;
    std::size_t hits = 0;
    const std::size_t n = 500;
    for (std::size_t i = 0; i < n; ++i) {
        const auto s = expbm_measure_sample(tau, ExpBmKernel::log_ratio, derive_seed(9, i));
        if (std::abs(localization_center(s.measure) - s.center) < 0.1) ++hits;
    }
    // ~84% observed; an independent fine-grid construction of the same law
    // gives the same rate, so the bar is set just below it
    CHECK(hits >= n * 39 / 50);
}

TEST_CASE("wasserstein-1: identity, point mass vs uniform, triangle") {
    const auto u = uniform_measure();
    CHECK(wasserstein1(u, u) == 0.0);

    // W1(delta at 1/2, uniform) = int |1(t>1/2) - t| dt = 1/4
    const auto d = delta_measure(0.5);
    CHECK(std::abs(wasserstein1(d, u) - 0.25) < 2.0 * d.cell_width());

    // metric properties on random triples
    Rng rng(123);
    for (int rep = 0; rep < 20; ++rep) {
        auto mk = [&] {
            std::vector<double> dens(64);
            for (double& x : dens) x = rng.uniform() + 0.01;
            return normalize_density(std::move(dens), 0.0);
        };
        const auto a = mk(), b = mk(), c = mk();
        CHECK(wasserstein1(a, b) == doctest::Approx(wasserstein1(b, a)).epsilon(1e-13));
        CHECK(wasserstein1(a, c) <= wasserstein1(a, b) + wasserstein1(b, c) + 1e-12);
    }

    EigenfunctionMeasure other = uniform_measure(100);
    CHECK_THROWS_AS(wasserstein1(u, other), invalid_argument);
}

TEST_CASE("cell merging preserves total mass") {
    Rng rng(5);
    std::vector<double> dens(512);
    for (double& x : dens) x = rng.uniform();
    const auto mu = normalize_density(std::move(dens), 0.0);
    // coarsen by merging pairs of cells
    std::vector<double> coarse(256);
    for (std::size_t i = 0; i < 256; ++i)
        coarse[i] = 0.5 * (mu.density[2 * i] + mu.density[2 * i + 1]);
    double mass = 0.0;
    for (double d : coarse) mass += d / 256.0;
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
}
