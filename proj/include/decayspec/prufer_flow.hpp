#pragma once

// Prufer-variable integration for H x = kappa^2 x with potential
// q(t) = a(t) F(X_t):
//   theta' = kappa - (q/kappa) sin^2(theta),   theta_0 = 0
//   rho'   = (q/(2 kappa)) sin(2 theta),       rho_0 = 0
// plus the renormalized log-norm, shooting-based eigenvalues and the
// drift/quadratic-variation diagnostics of the critical regime.

#include <cstdint>
#include <functional>
#include <vector>

#include "decayspec/decay_profile.hpp"
#include "decayspec/schrodinger_fd.hpp"
#include "decayspec/torus_model.hpp"

namespace decayspec {

struct PruferTrajectory {
    double dt = 0.0;
    double kappa = 0.0;
    std::vector<double> theta;  // continuous lift, theta[0] = 0
    std::vector<double> rho;    // rho[0] = 0

    double theta_end() const { return theta.back(); }
    double rho_at(double t) const;  // linear interpolation on the step grid
};

using PotentialFn = std::function<double(double)>;

// RK4 fixed step on the coupled system with an arbitrary potential; the
// public integrate() wraps this with q(t) = a(t) F(X_t). Throws if the
// phase moves by >= pi in one step (step-size guard).
PruferTrajectory integrate_potential(const PotentialFn& q, double kappa, double T,
                                     double dt);

// Requires dt <= 0.1/kappa and a path at least as fine as dt.
PruferTrajectory integrate(const DisorderPath& path, const TorusField& field,
                           const DecayProfile& profile, double kappa, double T,
                           double dt);

struct RenormalizedRho {
    long n = 0;
    double kappa0 = 0.0;  // sqrt(E0)
    double lambda = 0.0;  // kappa = kappa0 + lambda/n
    double centering = 0.0;
    std::vector<double> t_grid;  // strictly inside (0, 1]
    std::vector<double> samples;
};

// rho_tilde_t = rho_{n t}(kappa0 + lambda/n) - tau(kappa0^2) * int_0^n a(s)^2 ds
RenormalizedRho renormalized_rho(const DisorderPath& path, const TorusField& field,
                                 const DiffusionSpec& spec, const DecayProfile& profile,
                                 long n, double kappa0, double lambda,
                                 const std::vector<double>& t_grid, double dt);

// Oscillation-theory eigenvalues: kappa such that theta_L(kappa) = j*pi,
// located by safeguarded bisection/secant in kappa to |dkappa| <= 1e-10;
// energies kappa^2. dt = 0 picks the default step 0.1/sqrt(b).
SpectrumWindow shoot_eigenvalues(const DisorderPath& path, const TorusField& field,
                                 const DecayProfile& profile, double L, double a,
                                 double b, double dt = 0.0);

struct SdeDiagnostics {
    double drift = 0.0;     // sample mean of rho_tilde_t - rho_tilde_s
    double qv = 0.0;        // sample variance of the same increment
    double se_drift = 0.0;
    double se_qv = 0.0;
    std::size_t n_paths = 0;
};

// The limit predicts drift = qv = tau(E0) * log(t/s).
SdeDiagnostics sde_diagnostics(const std::vector<RenormalizedRho>& ensemble, double s,
                               double t);

}  // namespace decayspec
