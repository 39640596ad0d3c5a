#pragma once

// Deterministic decaying envelope a(t) = (1+t^2)^{-alpha/2} and integrals
// of a^2. Even, smooth, strictly decreasing on t>0, a(t)*t^alpha -> 1.

#include "decayspec/errors.hpp"

namespace decayspec {

class DecayProfile {
public:
    explicit DecayProfile(double alpha) : alpha_(alpha) {
        if (alpha <= 0) throw invalid_argument("DecayProfile: alpha must be > 0");
    }

    double alpha() const { return alpha_; }

    double operator()(double t) const;

    // integral of a(s)^2 over [lower, upper], 0 <= lower <= upper.
    // Closed form asinh for alpha = 1/2 and arctan for alpha = 1,
    // Gauss-Kronrod quadrature (abs error < 1e-10) otherwise.
    double integral_a_squared(double lower, double upper) const;

private:
    double alpha_;
};

inline double evaluate_a(const DecayProfile& p, double t) { return p(t); }
inline double integral_a_squared(const DecayProfile& p, double lo, double hi) {
    return p.integral_a_squared(lo, hi);
}

}  // namespace decayspec
