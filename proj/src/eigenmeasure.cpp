#include "decayspec/eigenmeasure.hpp"

#include <algorithm>
#include <cmath>

#include "decayspec/errors.hpp"

namespace decayspec {

EigenfunctionMeasure normalize_density(std::vector<double> density, double E) {
    if (density.empty()) throw invalid_argument("normalize_density: empty density");
    double sum = 0.0;
    for (double d : density) {
        if (d < 0) throw invalid_argument("normalize_density: negative density");
        sum += d;
    }
    if (!(sum > 0)) throw invalid_argument("normalize_density: zero total mass");
    const double w = 1.0 / static_cast<double>(density.size());
    const double scale = 1.0 / (sum * w);
    for (double& d : density) d *= scale;
    EigenfunctionMeasure mu;
    mu.cells = density.size();
    mu.density = std::move(density);
    mu.energy = E;
    return mu;
}

EigenfunctionMeasure build_measure(const EigenPair& pair, double h, double box_length,
                                   double E, std::size_t cells) {
    if (E <= 0) throw invalid_argument("build_measure: E must be > 0");
    if (cells < 1) throw invalid_argument("build_measure: cells must be >= 1");
    const std::size_t m = pair.vector.size();
    if (m < 2) throw invalid_argument("build_measure: eigenvector too short");

    // padded node values psi_0 .. psi_{m+1} on [0, box_length]
    auto psi = [&](std::size_t i) -> double {
        return (i == 0 || i == m + 1) ? 0.0 : pair.vector[i - 1];
    };
    // Dispersion correction for the difference quotient: a lattice mode at
    // discrete energy E = (4/h^2) sin^2(kh/2) has central difference
    // sqrt(E) cos(kh/2) cos(kt), so dividing by cos(kh/2) = sqrt(1 - E h^2/4)
    // makes psi^2 + (psi')^2/E exactly flat in the free case. Clamped away
    // from zero so grid-scale modes near E = 4/h^2 stay finite.
    const double corr = 1.0 / std::sqrt(std::max(1.0 - E * h * h / 4.0, 0.25));
    std::vector<double> node_density(m + 2);
    bool any_nonzero = false;
    for (std::size_t i = 0; i <= m + 1; ++i) {
        double dpsi;
        if (i == 0)
            dpsi = (psi(1) - psi(0)) / h;
        else if (i == m + 1)
            dpsi = (psi(m + 1) - psi(m)) / h;
        else
            dpsi = (psi(i + 1) - psi(i - 1)) / (2.0 * h);
        dpsi *= corr;
        const double v = psi(i);
        node_density[i] = v * v + dpsi * dpsi / E;
        if (node_density[i] > 0) any_nonzero = true;
    }
    if (!any_nonzero) throw invalid_argument("build_measure: eigenvector is identically zero");

    // aggregate node values to the measure grid by cell-averaging
    std::vector<double> acc(cells, 0.0);
    std::vector<std::size_t> cnt(cells, 0);
    for (std::size_t i = 0; i <= m + 1; ++i) {
        const double t = static_cast<double>(i) * h / box_length;
        auto c = static_cast<std::size_t>(std::min(
            std::floor(t * static_cast<double>(cells)), static_cast<double>(cells - 1)));
        acc[c] += node_density[i];
        ++cnt[c];
    }
    for (std::size_t c = 0; c < cells; ++c) {
        if (cnt[c] == 0)
            throw invalid_argument("build_measure: grid finer than the eigenvector; reduce cells");
        acc[c] /= static_cast<double>(cnt[c]);
    }
    return normalize_density(std::move(acc), E);
}

double localization_center(const EigenfunctionMeasure& mu) {
    const double w = mu.cell_width();
    double cum = 0.0;
    for (std::size_t i = 0; i < mu.cells; ++i) {
        const double mass = mu.density[i] * w;
        if (cum + mass >= 0.5) {
            const double frac = (mass > 0) ? (0.5 - cum) / mass : 0.5;
            return (static_cast<double>(i) + frac) * w;
        }
        cum += mass;
    }
    return 1.0;
}

double wasserstein1(const EigenfunctionMeasure& mu, const EigenfunctionMeasure& nu) {
    if (mu.cells != nu.cells)
        throw invalid_argument("wasserstein1: measures live on different grids");
    const double w = mu.cell_width();
    double total = 0.0;
    double d0 = 0.0;  // CDF difference at the left cell edge
    for (std::size_t i = 0; i < mu.cells; ++i) {
        const double d1 = d0 + (mu.density[i] - nu.density[i]) * w;
        if (d0 * d1 >= 0) {
            total += 0.5 * std::abs(d0 + d1) * w;
        } else {
            // sign change inside the cell: two triangles
            total += 0.5 * w * (d0 * d0 + d1 * d1) / (std::abs(d0) + std::abs(d1));
        }
        d0 = d1;
    }
    return total;
}

EigenfunctionMeasure uniform_measure(std::size_t cells) {
    return normalize_density(std::vector<double>(cells, 1.0), 0.0);
}

EigenfunctionMeasure delta_measure(double t0, std::size_t cells) {
    if (t0 < 0 || t0 > 1) throw invalid_argument("delta_measure: t0 must lie in [0, 1]");
    std::vector<double> d(cells, 0.0);
    auto c = static_cast<std::size_t>(std::min(
        std::floor(t0 * static_cast<double>(cells)), static_cast<double>(cells - 1)));
    d[c] = 1.0;
    return normalize_density(std::move(d), 0.0);
}

}  // namespace decayspec
