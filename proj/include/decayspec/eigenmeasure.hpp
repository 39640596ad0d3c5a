#pragma once

// The random probability measure on [0,1] attached to an eigenpair:
// density proportional to |psi(Lt)|^2 + E^{-1}|psi'(s)|^2 at s = Lt
// (derivative in the box coordinate), aggregated to a fixed uniform grid.

#include <cstddef>
#include <vector>

#include "decayspec/schrodinger_fd.hpp"

namespace decayspec {

struct EigenfunctionMeasure {
    std::size_t cells = 0;            // uniform cells on [0, 1]
    std::vector<double> density;      // nonnegative; (1/cells) * sum = 1
    double energy = 0.0;

    double cell_width() const { return 1.0 / static_cast<double>(cells); }
    double cell_center(std::size_t i) const {
        return (static_cast<double>(i) + 0.5) * cell_width();
    }
};

inline constexpr std::size_t kDefaultMeasureCells = 512;

// Builds mu from an eigenpair on the grid of H. psi' by central differences
// (Dirichlet zeros padded at the ends, one-sided at the box endpoints).
EigenfunctionMeasure build_measure(const EigenPair& pair, double h, double box_length,
                                   double E, std::size_t cells = kDefaultMeasureCells);

// Normalizes a raw density vector into a measure (shared by the oracles).
EigenfunctionMeasure normalize_density(std::vector<double> density, double E);

// Median of mu: CDF^{-1}(1/2) with linear interpolation within a cell.
double localization_center(const EigenfunctionMeasure& mu);

// W1(mu, nu) = int_0^1 |CDF_mu - CDF_nu| dt, exact piecewise rule.
// Requires identical grids.
double wasserstein1(const EigenfunctionMeasure& mu, const EigenfunctionMeasure& nu);

EigenfunctionMeasure uniform_measure(std::size_t cells = kDefaultMeasureCells);

// Point mass concentrated in the cell containing t0.
EigenfunctionMeasure delta_measure(double t0, std::size_t cells = kDefaultMeasureCells);

}  // namespace decayspec
