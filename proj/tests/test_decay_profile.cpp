#include <doctest.h>

#include <cmath>
#include <numbers>

#include "decayspec/decay_profile.hpp"

using namespace decayspec;

TEST_CASE("envelope values") {
    const DecayProfile p(0.5);
    CHECK(p(0.0) == 1.0);
    CHECK(p(1.0) == doctest::Approx(std::pow(2.0, -0.25)).epsilon(1e-14));
    CHECK(p(1.0) == doctest::Approx(0.840896).epsilon(1e-6));
    CHECK(p(-3.0) == p(3.0));
    // asymptotic a(t) * t^alpha -> 1
    const double r = p(1e3) * std::pow(1e3, 0.5);
    CHECK(r > 0.999);
    CHECK(r < 1.001);
    CHECK_THROWS_AS(DecayProfile(0.0), invalid_argument);
    CHECK_THROWS_AS(DecayProfile(-1.0), invalid_argument);
}

TEST_CASE("envelope monotone decreasing on t > 0") {
    const DecayProfile p(0.8);
    double prev = p(1e-4);
    for (int i = 1; i <= 2000; ++i) {
        const double cur = p(1e-4 + 0.01 * i);
        CHECK(cur < prev);
        prev = cur;
    }
}

TEST_CASE("integral of a^2: closed forms") {
    const DecayProfile half(0.5);
    for (double n : {1.0, 10.0, 2000.0}) {
        CHECK(half.integral_a_squared(0.0, n) ==
              doctest::Approx(std::log(n + std::sqrt(1.0 + n * n))).epsilon(1e-14));
    }
    CHECK(half.integral_a_squared(3.0, 3.0) == 0.0);

    const DecayProfile one(1.0);
    CHECK(one.integral_a_squared(0.0, 1e6) ==
          doctest::Approx(std::numbers::pi / 2.0).epsilon(1e-5));

    CHECK_THROWS_AS(half.integral_a_squared(2.0, 1.0), invalid_argument);
    CHECK_THROWS_AS(half.integral_a_squared(-1.0, 1.0), invalid_argument);
}

TEST_CASE("integral of a^2: quadrature branch and additivity") {
    const DecayProfile p(0.7);
    // quadrature vs a fine trapezoid reference on [0, 5]
    const int n = 2000000;
    double ref = 0.0;
    const double w = 5.0 / n;
    for (int i = 0; i <= n; ++i) {
        const double s = w * i;
        const double f = std::pow(1.0 + s * s, -0.7);
        ref += (i == 0 || i == n) ? 0.5 * f : f;
    }
    ref *= w;
    CHECK(p.integral_a_squared(0.0, 5.0) == doctest::Approx(ref).epsilon(1e-9));

    for (double alpha : {0.25, 0.5, 0.7, 1.0, 1.4}) {
        const DecayProfile q(alpha);
        const double abc = q.integral_a_squared(0.5, 9.0);
        const double ab = q.integral_a_squared(0.5, 3.0);
        const double bc = q.integral_a_squared(3.0, 9.0);
        CHECK(std::abs(ab + bc - abc) < 1e-12);
    }
}
