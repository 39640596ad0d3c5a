#include "decayspec/decay_profile.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

namespace decayspec {

double DecayProfile::operator()(double t) const {
    return std::pow(1.0 + t * t, -alpha_ / 2.0);
}

double DecayProfile::integral_a_squared(double lower, double upper) const {
    if (lower < 0 || lower > upper)
        throw invalid_argument("integral_a_squared: need 0 <= lower <= upper");
    if (lower == upper) return 0.0;
    if (alpha_ == 0.5) return std::asinh(upper) - std::asinh(lower);
    if (alpha_ == 1.0) return std::atan(upper) - std::atan(lower);
    auto f = [this](double s) { return std::pow(1.0 + s * s, -alpha_); };
    double err = 0.0;
    double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        f, lower, upper, 15, 1e-12, &err);
    if (err > 1e-10)
        throw numerical_error("integral_a_squared: quadrature error above 1e-10");
    return v;
}

}  // namespace decayspec
