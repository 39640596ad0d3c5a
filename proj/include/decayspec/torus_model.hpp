#pragma once

// The torus side of the model: the potential shape F as a finite Fourier
// series on the circle of circumference 2*pi (Haar measure normalized to
// total mass 1), the Brownian motion X_t driving the disorder, the resolvent
// g_kappa = (L + 2i*kappa)^{-1} F of the generator L = (sigma2/2) d^2/dx^2,
// and the Lyapunov exponent tau(E).

#include <complex>
#include <cstdint>
#include <vector>

#include "decayspec/errors.hpp"

namespace decayspec {

class ComplexTorusField;

// Real-valued mean-zero field F(x) = sum_n Fhat_n e^{inx}, |n| <= n_max.
class TorusField {
public:
    // coeffs[k] is the coefficient of mode n = k - n_max, k = 0..2*n_max.
    TorusField(int n_max, std::vector<std::complex<double>> coeffs);

    static TorusField zero();
    static TorusField cosine();  // F(x) = cos x, Fhat_{+-1} = 1/2

    int n_max() const { return n_max_; }
    std::complex<double> coeff(int n) const;
    bool is_zero() const;
    double abs_coeff_sum() const;  // sum_n |Fhat_n|

    // Pointwise evaluation at a single angle (real part after the
    // imaginary-residue check).
    double operator()(double x) const;

private:
    void check_hermitian() const;

    int n_max_;
    std::vector<std::complex<double>> coeffs_;
};

// Diffusion coefficient of X_t: generator L acts on mode n as -sigma2*n^2/2.
struct DiffusionSpec {
    double sigma2 = 1.0;

    explicit DiffusionSpec(double sigma2_ = 1.0) : sigma2(sigma2_) {
        if (sigma2 <= 0) throw invalid_argument("DiffusionSpec: sigma2 must be > 0");
    }
};

// One sampled Brownian trajectory on the circle, uniform time grid,
// values wrapped to [0, 2*pi), X_0 = 0.
struct DisorderPath {
    double dt = 0.0;
    std::vector<double> values;
    std::uint64_t seed = 0;

    double duration() const { return dt * static_cast<double>(values.size() - 1); }
    // nearest-grid-point lookup, clamped to the path's range
    double at_time(double t) const;
};

// Fourier series with unconstrained complex coefficients (resolvent output).
class ComplexTorusField {
public:
    ComplexTorusField(int n_max, std::vector<std::complex<double>> coeffs);

    int n_max() const { return n_max_; }
    std::complex<double> coeff(int n) const;

private:
    int n_max_;
    std::vector<std::complex<double>> coeffs_;
};

DisorderPath sample_brownian_path(double T, double dt, const DiffusionSpec& spec,
                                  std::uint64_t seed);

// F(X_{t_i}) along the path; asserts the imaginary residue stays below
// 1e-10 * sum|Fhat_n|.
std::vector<double> evaluate_field(const TorusField& field, const DisorderPath& path);

// g_kappa = (L + 2i*kappa)^{-1} F, modewise: ghat_n = Fhat_n / (-sigma2*n^2/2 + 2i*kappa)
ComplexTorusField resolvent(const TorusField& field, const DiffusionSpec& spec,
                            double kappa);

// tau(E) = (1/(8E)) sum_n n^2 |ghat_n|^2 with g = resolvent at kappa = sqrt(E).
// For F = cos and sigma2 = 1 this equals 1/(4E(1+16E)).
double lyapunov_tau(const TorusField& field, const DiffusionSpec& spec, double E);

}  // namespace decayspec
