#include "decayspec/prufer_flow.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "decayspec/errors.hpp"

namespace decayspec {

namespace {
constexpr double kPi = std::numbers::pi;
}

double PruferTrajectory::rho_at(double t) const {
    const double u = t / dt;
    const auto i = static_cast<std::size_t>(
        std::clamp(std::floor(u), 0.0, static_cast<double>(rho.size() - 2)));
    const double w = u - static_cast<double>(i);
    return (1.0 - w) * rho[i] + w * rho[i + 1];
}

PruferTrajectory integrate_potential(const PotentialFn& q, double kappa, double T,
                                     double dt) {
    if (kappa <= 0) throw invalid_argument("integrate: kappa must be > 0");
    if (T <= 0 || dt <= 0) throw invalid_argument("integrate: T and dt must be > 0");
    if (dt > 0.1 / kappa + 1e-12)
        throw invalid_argument("integrate: dt must satisfy dt <= 0.1/kappa");

    const auto n_steps = static_cast<std::size_t>(std::ceil(T / dt - 1e-9));
    const double step = T / static_cast<double>(n_steps);

    PruferTrajectory traj;
    traj.dt = step;
    traj.kappa = kappa;
    traj.theta.resize(n_steps + 1);
    traj.rho.resize(n_steps + 1);
    traj.theta[0] = 0.0;
    traj.rho[0] = 0.0;

    const double inv_k = 1.0 / kappa;
    auto ftheta = [&](double qv, double th) {
        const double s = std::sin(th);
        return kappa - qv * inv_k * s * s;
    };
    auto frho = [&](double qv, double th) {
        return 0.5 * qv * inv_k * std::sin(2.0 * th);
    };

    double th = 0.0, rh = 0.0;
    for (std::size_t i = 0; i < n_steps; ++i) {
        const double t = static_cast<double>(i) * step;
        const double q0 = q(t);
        const double qm = q(t + 0.5 * step);
        const double q1 = q(t + step);

        const double k1 = ftheta(q0, th);
        const double k2 = ftheta(qm, th + 0.5 * step * k1);
        const double k3 = ftheta(qm, th + 0.5 * step * k2);
        const double k4 = ftheta(q1, th + step * k3);

        const double r1 = frho(q0, th);
        const double r2 = frho(qm, th + 0.5 * step * k1);
        const double r3 = frho(qm, th + 0.5 * step * k2);
        const double r4 = frho(q1, th + step * k3);

        const double dth = step / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (std::abs(dth) >= kPi)
            throw numerical_error("integrate: phase jump >= pi in one step; reduce dt");
        th += dth;
        rh += step / 6.0 * (r1 + 2.0 * r2 + 2.0 * r3 + r4);
        traj.theta[i + 1] = th;
        traj.rho[i + 1] = rh;
    }
    return traj;
}

PruferTrajectory integrate(const DisorderPath& path, const TorusField& field,
                           const DecayProfile& profile, double kappa, double T,
                           double dt) {
    if (!field.is_zero()) {
        if (path.values.empty() || path.duration() + 1e-9 < T)
            throw invalid_argument("integrate: path does not cover [0, T]");
        if (path.dt > dt * (1.0 + 1e-12))
            throw invalid_argument("integrate: path resolution coarser than dt");
    }
    if (field.is_zero()) {
        auto q = [](double) { return 0.0; };
        return integrate_potential(q, kappa, T, dt);
    }
    auto q = [&](double t) { return profile(t) * field(path.at_time(t)); };
    return integrate_potential(q, kappa, T, dt);
}

RenormalizedRho renormalized_rho(const DisorderPath& path, const TorusField& field,
                                 const DiffusionSpec& spec, const DecayProfile& profile,
                                 long n, double kappa0, double lambda,
                                 const std::vector<double>& t_grid, double dt) {
    if (n < 1) throw invalid_argument("renormalized_rho: n must be >= 1");
    for (double t : t_grid)
        if (!(t > 0.0) || t > 1.0)
            throw invalid_argument("renormalized_rho: t_grid must lie in (0, 1]");

    RenormalizedRho out;
    out.n = n;
    out.kappa0 = kappa0;
    out.lambda = lambda;
    out.t_grid = t_grid;

    const double kappa = kappa0 + lambda / static_cast<double>(n);
    const double tau = lyapunov_tau(field, spec, kappa0 * kappa0);
    out.centering = tau * profile.integral_a_squared(0.0, static_cast<double>(n));

    const auto traj =
        integrate(path, field, profile, kappa, static_cast<double>(n), dt);
    out.samples.reserve(t_grid.size());
    for (double t : t_grid)
        out.samples.push_back(traj.rho_at(static_cast<double>(n) * t) - out.centering);
    return out;
}

namespace {

// theta_L(kappa) with the potential pretabulated on the RK4 half-step grid.
double theta_end(const std::vector<double>& q_half, double step, double kappa) {
    const double inv_k = 1.0 / kappa;
    auto f = [&](double qv, double th) {
        const double s = std::sin(th);
        return kappa - qv * inv_k * s * s;
    };
    double th = 0.0;
    const std::size_t n_steps = (q_half.size() - 1) / 2;
    for (std::size_t i = 0; i < n_steps; ++i) {
        const double q0 = q_half[2 * i];
        const double qm = q_half[2 * i + 1];
        const double q1 = q_half[2 * i + 2];
        const double k1 = f(q0, th);
        const double k2 = f(qm, th + 0.5 * step * k1);
        const double k3 = f(qm, th + 0.5 * step * k2);
        const double k4 = f(q1, th + step * k3);
        th += step / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return th;
}

}  // namespace

SpectrumWindow shoot_eigenvalues(const DisorderPath& path, const TorusField& field,
                                 const DecayProfile& profile, double L, double a,
                                 double b, double dt) {
    if (!(a > 0) || !(b > a)) throw invalid_argument("shoot_eigenvalues: need 0 < a < b");
    const double kb = std::sqrt(b);
    const double ka = std::sqrt(a);
    if (dt == 0.0) dt = 0.1 / kb;
    if (dt <= 0 || dt > 0.1 / kb + 1e-12)
        throw invalid_argument("shoot_eigenvalues: need 0 < dt <= 0.1/sqrt(b)");

    const auto n_steps = static_cast<std::size_t>(std::ceil(L / dt - 1e-9));
    const double step = L / static_cast<double>(n_steps);
    const bool zero_field = field.is_zero();
    if (!zero_field) {
        if (path.values.empty() || path.duration() + 1e-9 < L)
            throw invalid_argument("shoot_eigenvalues: path does not cover [0, L]");
        if (path.dt > step * (1.0 + 1e-12))
            throw invalid_argument(
                "shoot_eigenvalues: path resolution coarser than the shooting step");
    }

    std::vector<double> q_half(2 * n_steps + 1);
    for (std::size_t k = 0; k < q_half.size(); ++k) {
        const double t = 0.5 * step * static_cast<double>(k);
        q_half[k] = zero_field ? 0.0 : profile(t) * field(path.at_time(t));
    }

    const double tha = theta_end(q_half, step, ka);
    const double thb = theta_end(q_half, step, kb);
    if (thb < tha)
        throw numerical_error("shoot_eigenvalues: theta_L not increasing in kappa; reduce dt");

    SpectrumWindow w;
    w.window_lo = a;
    w.window_hi = b;
    const long j_lo = static_cast<long>(std::floor(tha / kPi)) + 1;
    const long j_hi = static_cast<long>(std::floor(thb / kPi));
    for (long j = j_lo; j <= j_hi; ++j) {
        const double target = static_cast<double>(j) * kPi;
        // Illinois false position; theta_end is smooth and close to linear
        // in kappa (slope ~ L), so this needs far fewer sweeps than bisection
        double lo = ka, hi = kb;
        double flo = tha - target, fhi = thb - target;
        int side = 0;
        while (hi - lo > 1e-10) {
            double mid = (flo * hi - fhi * lo) / (flo - fhi);
            const double safety = 1e-3 * (hi - lo);
            if (!std::isfinite(mid) || mid <= lo + safety || mid >= hi - safety)
                mid = 0.5 * (lo + hi);
            const double f = theta_end(q_half, step, mid) - target;
            if (f < 0) {
                lo = mid;
                flo = f;
                if (side == -1) fhi *= 0.5;
                side = -1;
            } else {
                hi = mid;
                fhi = f;
                if (side == 1) flo *= 0.5;
                side = 1;
            }
        }
        const double kj = 0.5 * (lo + hi);
        w.energies.push_back(kj * kj);
    }
    std::sort(w.energies.begin(), w.energies.end());
    return w;
}

SdeDiagnostics sde_diagnostics(const std::vector<RenormalizedRho>& ensemble, double s,
                               double t) {
    if (ensemble.size() < 2)
        throw invalid_argument("sde_diagnostics: need an ensemble of size >= 2");
    if (!(0 < s && s < t && t <= 1.0))
        throw invalid_argument("sde_diagnostics: need 0 < s < t <= 1");

    auto sample_at = [](const RenormalizedRho& r, double tq) {
        for (std::size_t i = 0; i < r.t_grid.size(); ++i)
            if (std::abs(r.t_grid[i] - tq) < 1e-9) return r.samples[i];
        throw invalid_argument("sde_diagnostics: requested time not on the ensemble grid");
    };

    std::vector<double> incr;
    incr.reserve(ensemble.size());
    for (const auto& r : ensemble) incr.push_back(sample_at(r, t) - sample_at(r, s));

    const auto n = static_cast<double>(incr.size());
    double mean = 0.0;
    for (double x : incr) mean += x;
    mean /= n;
    double var = 0.0, m4 = 0.0;
    for (double x : incr) {
        const double d = x - mean;
        var += d * d;
        m4 += d * d * d * d;
    }
    var /= (n - 1.0);
    m4 /= n;

    SdeDiagnostics d;
    d.drift = mean;
    d.qv = var;
    d.se_drift = std::sqrt(var / n);
    // SE of the sample variance from the empirical fourth moment
    d.se_qv = std::sqrt(std::max(m4 - var * var, 0.0) / n);
    d.n_paths = incr.size();
    return d;
}

}  // namespace decayspec
