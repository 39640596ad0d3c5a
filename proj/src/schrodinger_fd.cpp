#include "decayspec/schrodinger_fd.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "decayspec/tridiagonal.hpp"

namespace decayspec {

std::vector<double> GridHamiltonian::diagonal() const {
    std::vector<double> d(potential.size());
    const double k = 2.0 / (h * h);
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = k + potential[i];
    return d;
}

double default_grid_step(double energy_max) {
    if (energy_max <= 0) throw invalid_argument("default_grid_step: energy_max must be > 0");
    return 0.02 / std::sqrt(energy_max);
}

GridHamiltonian assemble(const DisorderPath& path, const TorusField& field,
                         const DecayProfile& profile, double L, double h) {
    if (L <= 0 || h <= 0) throw invalid_argument("assemble: L and h must be > 0");
    const auto m = static_cast<std::size_t>(std::llround(L / h)) - 1;
    if (m < 2) throw invalid_argument("assemble: grid too coarse (need >= 2 interior nodes)");

    const bool zero_field = field.is_zero();
    if (!zero_field) {
        if (path.values.empty() || path.duration() + 1e-12 < L)
            throw invalid_argument("assemble: path does not cover [0, L]");
        if (path.dt > h * (1.0 + 1e-12))
            throw invalid_argument("assemble: path resolution coarser than grid step");
    }

    GridHamiltonian H;
    H.h = h;
    H.box_length = static_cast<double>(m + 1) * h;
    H.potential.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double t = static_cast<double>(i + 1) * h;
        H.potential[i] = zero_field ? 0.0 : profile(t) * field(path.at_time(t));
    }
    return H;
}

std::size_t count_below(const GridHamiltonian& H, double E) {
    const double Ep = E + 1e-14 * std::abs(E);
    const std::vector<double> off(H.size() > 0 ? H.size() - 1 : 0, H.offdiagonal());
    return tridiag::count_below(H.diagonal(), off, Ep);
}

SpectrumWindow eigenvalues_in(const GridHamiltonian& H, double a, double b) {
    if (!(a > 0) || !(b > a)) throw invalid_argument("eigenvalues_in: need 0 < a < b");
    SpectrumWindow w;
    w.window_lo = a;
    w.window_hi = b;
    const double tol = 1e-10 * std::max(1.0, std::abs(b));
    const std::vector<double> off(H.size() - 1, H.offdiagonal());
    const auto diag = H.diagonal();
    w.energies = tridiag::eigenvalues_in(diag, off, a, b, tol);
    // polish isolated eigenvalues past the bisection tolerance; keep the
    // bisection value if the refinement leaves [a, b] or moves too far
    for (double& E : w.energies) {
        const double refined = tridiag::rayleigh_refine(diag, off, E);
        if (refined >= a && refined < b && std::abs(refined - E) <= 16.0 * tol) E = refined;
    }
    std::sort(w.energies.begin(), w.energies.end());
    return w;
}

EigenPair eigenvector(const GridHamiltonian& H, double energy) {
    const std::vector<double> off(H.size() - 1, H.offdiagonal());
    EigenPair pair;
    pair.energy = energy;
    pair.index = count_below(H, energy);
    pair.vector = tridiag::inverse_iteration(H.diagonal(), off, energy);
    // normalization h * sum psi^2 = 1; sign convention psi_1 > 0
    double n2 = 0.0;
    for (double v : pair.vector) n2 += v * v;
    double scale = 1.0 / std::sqrt(H.h * n2);
    if (pair.vector.front() < 0) scale = -scale;
    for (double& v : pair.vector) v *= scale;
    return pair;
}

void attach_eigenvectors(const GridHamiltonian& H, SpectrumWindow& window) {
    window.eigenpairs.clear();
    window.eigenpairs.reserve(window.energies.size());
    for (double E : window.energies) window.eigenpairs.push_back(eigenvector(H, E));
}

PointSample rescaled_process(const SpectrumWindow& spectrum, double L, double E0) {
    if (E0 <= 0) throw invalid_argument("rescaled_process: E0 must be > 0");
    PointSample s;
    const double k0 = std::sqrt(E0);
    s.window_lo = L * (std::sqrt(spectrum.window_lo) - k0);
    s.window_hi = L * (std::sqrt(spectrum.window_hi) - k0);
    s.points.reserve(spectrum.energies.size());
    for (double E : spectrum.energies) s.points.push_back(L * (std::sqrt(E) - k0));
    std::sort(s.points.begin(), s.points.end());
    s.origin = "simulation";
    return s;
}

double free_discrete_eigenvalue(double h, double box_length, std::size_t j) {
    const double x = std::sin(static_cast<double>(j) * std::numbers::pi * h /
                              (2.0 * box_length));
    return 4.0 / (h * h) * x * x;
}

}  // namespace decayspec
