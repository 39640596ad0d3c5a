#pragma once

// Finite-difference Dirichlet Hamiltonian on [0, L]: second-order central
// differences on a uniform grid, eigenvalues by Sturm bisection, eigenvectors
// by inverse iteration, and the rescaled point process around a reference
// energy.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "decayspec/decay_profile.hpp"
#include "decayspec/torus_model.hpp"

namespace decayspec {

// -d^2/dt^2 + q(t) with Dirichlet ends, discretized with diagonal
// 2/h^2 + q_i and off-diagonal -1/h^2 at interior nodes t_i = i*h.
struct GridHamiltonian {
    double box_length = 0.0;  // (m+1)*h, the discretized box
    double h = 0.0;
    std::vector<double> potential;  // q_i at interior nodes, i = 1..m

    std::size_t size() const { return potential.size(); }
    std::vector<double> diagonal() const;
    double offdiagonal() const { return -1.0 / (h * h); }
};

struct EigenPair {
    double energy = 0.0;
    std::vector<double> vector;  // interior nodes, h * sum psi_i^2 = 1, psi_1 > 0
    std::size_t index = 0;       // oscillation count (0-based position in spectrum)
};

struct SpectrumWindow {
    double window_lo = 0.0, window_hi = 0.0;  // J = [a, b]
    std::vector<double> energies;             // sorted, strictly increasing
    std::vector<EigenPair> eigenpairs;        // optional, same order when present
};

struct PointSample {
    double window_lo = 0.0, window_hi = 0.0;
    std::vector<double> points;  // sorted
    std::string origin;          // "simulation" or an oracle name
};

// Grid step satisfying h * sqrt(E_max) <= 0.02 (about 300 nodes per wave
// period at the top of the window).
double default_grid_step(double energy_max);

GridHamiltonian assemble(const DisorderPath& path, const TorusField& field,
                         const DecayProfile& profile, double L, double h);

// Eigenvalues strictly below E; an E colliding with an eigenvalue is
// resolved by perturbing E upward by 1e-14*|E|.
std::size_t count_below(const GridHamiltonian& H, double E);

SpectrumWindow eigenvalues_in(const GridHamiltonian& H, double a, double b);

EigenPair eigenvector(const GridHamiltonian& H, double energy);

// Attaches eigenvectors to every eigenvalue of the window.
void attach_eigenvectors(const GridHamiltonian& H, SpectrumWindow& window);

// xi_{L,E0}: points L*(sqrt(E_j) - sqrt(E0)).
PointSample rescaled_process(const SpectrumWindow& spectrum, double L, double E0);

// Closed-form discrete free spectrum (4/h^2) sin^2(j*pi*h/(2*Lbox)), j = 1..m.
double free_discrete_eigenvalue(double h, double box_length, std::size_t j);

}  // namespace decayspec
