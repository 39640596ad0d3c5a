#include "decayspec/torus_model.hpp"

#include <cmath>
#include <numbers>

#include "decayspec/rng.hpp"

namespace decayspec {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

TorusField::TorusField(int n_max, std::vector<std::complex<double>> coeffs)
    : n_max_(n_max), coeffs_(std::move(coeffs)) {
    if (n_max_ < 1) throw invalid_argument("TorusField: n_max must be >= 1");
    if (coeffs_.size() != static_cast<std::size_t>(2 * n_max_ + 1))
        throw invalid_argument("TorusField: coefficient vector must have 2*n_max+1 entries");
    if (std::abs(coeff(0)) > 0.0)
        throw invalid_argument("TorusField: mean-zero field requires Fhat_0 = 0");
    check_hermitian();
}

TorusField TorusField::zero() {
    return TorusField(1, std::vector<std::complex<double>>(3, {0.0, 0.0}));
}

TorusField TorusField::cosine() {
    std::vector<std::complex<double>> c(3, {0.0, 0.0});
    c[0] = c[2] = {0.5, 0.0};
    return TorusField(1, std::move(c));
}

std::complex<double> TorusField::coeff(int n) const {
    if (n < -n_max_ || n > n_max_) return {0.0, 0.0};
    return coeffs_[static_cast<std::size_t>(n + n_max_)];
}

bool TorusField::is_zero() const {
    for (const auto& c : coeffs_)
        if (std::abs(c) > 0.0) return false;
    return true;
}

double TorusField::abs_coeff_sum() const {
    double s = 0.0;
    for (const auto& c : coeffs_) s += std::abs(c);
    return s;
}

void TorusField::check_hermitian() const {
    const double scale = abs_coeff_sum();
    const double tol = 1e-14 * std::max(scale, 1.0);
    for (int n = 1; n <= n_max_; ++n) {
        if (std::abs(coeff(-n) - std::conj(coeff(n))) > tol)
            throw invariant_error("TorusField: Hermitian symmetry violated (field not real)");
    }
}

double TorusField::operator()(double x) const {
    std::complex<double> v{0.0, 0.0};
    for (int n = -n_max_; n <= n_max_; ++n)
        v += coeff(n) * std::polar(1.0, n * x);
    const double tol = 1e-10 * abs_coeff_sum();
    if (std::abs(v.imag()) > tol)
        throw invariant_error("TorusField: imaginary residue above tolerance");
    return v.real();
}

double DisorderPath::at_time(double t) const {
    if (values.empty()) throw invalid_argument("DisorderPath: empty path");
    auto i = static_cast<long>(std::llround(t / dt));
    if (i < 0) i = 0;
    if (i >= static_cast<long>(values.size())) i = static_cast<long>(values.size()) - 1;
    return values[static_cast<std::size_t>(i)];
}

ComplexTorusField::ComplexTorusField(int n_max, std::vector<std::complex<double>> coeffs)
    : n_max_(n_max), coeffs_(std::move(coeffs)) {
    if (n_max_ < 1) throw invalid_argument("ComplexTorusField: n_max must be >= 1");
    if (coeffs_.size() != static_cast<std::size_t>(2 * n_max_ + 1))
        throw invalid_argument("ComplexTorusField: coefficient vector size mismatch");
}

std::complex<double> ComplexTorusField::coeff(int n) const {
    if (n < -n_max_ || n > n_max_) return {0.0, 0.0};
    return coeffs_[static_cast<std::size_t>(n + n_max_)];
}

DisorderPath sample_brownian_path(double T, double dt, const DiffusionSpec& spec,
                                  std::uint64_t seed) {
    if (T <= 0) throw invalid_argument("sample_brownian_path: T must be > 0");
    if (dt <= 0 || dt > T) throw invalid_argument("sample_brownian_path: need 0 < dt <= T");

    const auto n_steps = static_cast<std::size_t>(std::floor(T / dt));
    DisorderPath path;
    path.dt = dt;
    path.seed = seed;
    path.values.resize(n_steps + 1);

    Rng rng(seed);
    const double sd = std::sqrt(spec.sigma2 * dt);
    double x = 0.0;  // start at the origin
    path.values[0] = 0.0;
    for (std::size_t i = 1; i <= n_steps; ++i) {
        x += sd * rng.gaussian();
        double w = std::fmod(x, kTwoPi);
        if (w < 0) w += kTwoPi;
        path.values[i] = w;
    }
    return path;
}

std::vector<double> evaluate_field(const TorusField& field, const DisorderPath& path) {
    std::vector<double> out;
    out.reserve(path.values.size());
    for (double x : path.values) out.push_back(field(x));
    return out;
}

ComplexTorusField resolvent(const TorusField& field, const DiffusionSpec& spec,
                            double kappa) {
    if (kappa <= 0) throw invalid_argument("resolvent: kappa must be > 0");
    const int n_max = field.n_max();
    std::vector<std::complex<double>> g(static_cast<std::size_t>(2 * n_max + 1));
    for (int n = -n_max; n <= n_max; ++n) {
        const std::complex<double> denom(-spec.sigma2 * n * n / 2.0, 2.0 * kappa);
        g[static_cast<std::size_t>(n + n_max)] = field.coeff(n) / denom;
    }
    return ComplexTorusField(n_max, std::move(g));
}

double lyapunov_tau(const TorusField& field, const DiffusionSpec& spec, double E) {
    if (E <= 0) throw invalid_argument("lyapunov_tau: E must be > 0");
    const ComplexTorusField g = resolvent(field, spec, std::sqrt(E));
    double s = 0.0;
    for (int n = -field.n_max(); n <= field.n_max(); ++n)
        s += static_cast<double>(n) * n * std::norm(g.coeff(n));
    return s / (8.0 * E);
}

}  // namespace decayspec
