#include "decayspec/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "decayspec/errors.hpp"

namespace decayspec::tridiag {

namespace {

double pivmin(const std::vector<double>& offdiag) {
    double e2max = 0.0;
    for (double e : offdiag) e2max = std::max(e2max, e * e);
    return std::max(e2max, 1.0) * std::numeric_limits<double>::min() * 64.0;
}

}  // namespace

std::size_t count_below(const std::vector<double>& diag,
                        const std::vector<double>& offdiag, double E) {
    const double guard = pivmin(offdiag);
    std::size_t count = 0;
    double q = 1.0;
    for (std::size_t i = 0; i < diag.size(); ++i) {
        const double e2 = (i == 0) ? 0.0 : offdiag[i - 1] * offdiag[i - 1];
        q = diag[i] - E - e2 / q;
        if (std::abs(q) < guard) q = -guard;
        if (q < 0) ++count;
    }
    return count;
}

std::pair<double, double> gershgorin_bounds(const std::vector<double>& diag,
                                            const std::vector<double>& offdiag) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    const std::size_t m = diag.size();
    for (std::size_t i = 0; i < m; ++i) {
        double r = 0.0;
        if (i > 0) r += std::abs(offdiag[i - 1]);
        if (i + 1 < m) r += std::abs(offdiag[i]);
        lo = std::min(lo, diag[i] - r);
        hi = std::max(hi, diag[i] + r);
    }
    return {lo, hi};
}

namespace {

// Recursive interval splitting: counts are shared between neighbouring
// eigenvalues, so the total number of Sturm sweeps stays near
// n_eig * log2(width/tol).
void bisect_interval(const std::vector<double>& diag,
                     const std::vector<double>& offdiag, double a,
                     std::size_t na, double b, std::size_t nb, double tol,
                     std::vector<double>& out) {
    if (nb <= na) return;
    if (b - a <= tol) {
        const double mid = 0.5 * (a + b);
        for (std::size_t k = na; k < nb; ++k) out.push_back(mid);
        return;
    }
    const double mid = 0.5 * (a + b);
    const std::size_t nm = std::clamp(count_below(diag, offdiag, mid), na, nb);
    bisect_interval(diag, offdiag, a, na, mid, nm, tol, out);
    bisect_interval(diag, offdiag, mid, nm, b, nb, tol, out);
}

}  // namespace

std::vector<double> eigenvalues_in(const std::vector<double>& diag,
                                   const std::vector<double>& offdiag,
                                   double a, double b, double tol) {
    if (!(tol > 0)) throw invalid_argument("eigenvalues_in: tol must be > 0");
    std::vector<double> out;
    if (b <= a) return out;
    const std::size_t na = count_below(diag, offdiag, a);
    const std::size_t nb = count_below(diag, offdiag, b);
    bisect_interval(diag, offdiag, a, na, b, nb, tol, out);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<double> all_eigenvalues(const std::vector<double>& diag,
                                    const std::vector<double>& offdiag, double tol) {
    auto [lo, hi] = gershgorin_bounds(diag, offdiag);
    const double pad = tol + 1e-12 * std::max(std::abs(lo), std::abs(hi));
    return eigenvalues_in(diag, offdiag, lo - pad, hi + pad, tol);
}

namespace {

// Gaussian elimination with partial pivoting; row swaps introduce one extra
// superdiagonal. Templated so inverse iteration can run in long double: when
// |shift| << ||H|| the double-precision backward error eps*||H|| alone can
// exceed the residual bar 1e-8*||H psi|| = 1e-8*|shift|.
template <typename T>
std::vector<T> solve_shifted_impl(const std::vector<double>& diag,
                                  const std::vector<double>& offdiag, double shift,
                                  std::vector<T> rhs) {
    const std::size_t m = diag.size();
    if (rhs.size() != m) throw invalid_argument("solve_shifted: size mismatch");
    std::vector<T> d(m), u1(m, 0.0), u2(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) d[i] = static_cast<T>(diag[i]) - static_cast<T>(shift);
    for (std::size_t i = 0; i + 1 < m; ++i) u1[i] = offdiag[i];

    std::vector<T> sub(m, 0.0);  // current subdiagonal entries
    for (std::size_t i = 0; i + 1 < m; ++i) sub[i + 1] = offdiag[i];

    for (std::size_t i = 0; i + 1 < m; ++i) {
        if (std::abs(sub[i + 1]) > std::abs(d[i])) {
            std::swap(d[i], sub[i + 1]);
            std::swap(u1[i], d[i + 1]);
            std::swap(u2[i], u1[i + 1]);
            std::swap(rhs[i], rhs[i + 1]);
        }
        T piv = d[i];
        if (piv == 0.0) piv = d[i] = std::numeric_limits<double>::min() * 64.0;
        const T l = sub[i + 1] / piv;
        d[i + 1] -= l * u1[i];
        u1[i + 1] -= l * u2[i];
        rhs[i + 1] -= l * rhs[i];
    }
    // back substitution
    std::vector<T> x(m);
    for (std::size_t ii = m; ii-- > 0;) {
        T v = rhs[ii];
        if (ii + 1 < m) v -= u1[ii] * x[ii + 1];
        if (ii + 2 < m) v -= u2[ii] * x[ii + 2];
        T piv = d[ii];
        if (piv == 0.0) piv = std::numeric_limits<double>::min() * 64.0;
        x[ii] = v / piv;
    }
    return x;
}

}  // namespace

std::vector<double> solve_shifted(const std::vector<double>& diag,
                                  const std::vector<double>& offdiag, double shift,
                                  std::vector<double> rhs) {
    return solve_shifted_impl<double>(diag, offdiag, shift, std::move(rhs));
}

double rayleigh_refine(const std::vector<double>& diag,
                       const std::vector<double>& offdiag, double eigenvalue,
                       int iterations) {
    const std::size_t m = diag.size();
    std::vector<double> x(m);
    std::uint64_t s = 0x9e3779b97f4a7c15ULL;
    for (std::size_t i = 0; i < m; ++i) {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        x[i] = static_cast<double>(s >> 11) / 9007199254740992.0 - 0.5;
    }
    double E = eigenvalue;
    for (int it = 0; it < iterations; ++it) {
        x = solve_shifted(diag, offdiag, E, std::move(x));
        double n2 = 0.0;
        for (double v : x) n2 += v * v;
        if (!(n2 > 0) || !std::isfinite(n2)) return E;
        const double inv = 1.0 / std::sqrt(n2);
        for (double& v : x) v *= inv;
        double num = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            double hv = diag[i] * x[i];
            if (i > 0) hv += offdiag[i - 1] * x[i - 1];
            if (i + 1 < m) hv += offdiag[i] * x[i + 1];
            num += x[i] * hv;
        }
        if (!std::isfinite(num)) return E;
        E = num;
    }
    return E;
}

std::vector<double> inverse_iteration(const std::vector<double>& diag,
                                      const std::vector<double>& offdiag,
                                      double eigenvalue, int max_iter) {
    const std::size_t m = diag.size();
    std::vector<long double> x(m);
    // deterministic quasi-random start vector
    std::uint64_t s = 0x2545f4914f6cdd1dULL;
    for (std::size_t i = 0; i < m; ++i) {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        x[i] = static_cast<double>(s >> 11) / 9007199254740992.0 - 0.5;
    }

    auto norm2 = [](const std::vector<long double>& v) {
        long double n = 0.0;
        for (long double a : v) n += a * a;
        return std::sqrt(n);
    };
    auto apply = [&](const std::vector<long double>& v) {
        std::vector<long double> y(m, 0.0);
        for (std::size_t i = 0; i < m; ++i) {
            y[i] = diag[i] * v[i];
            if (i > 0) y[i] += offdiag[i - 1] * v[i - 1];
            if (i + 1 < m) y[i] += offdiag[i] * v[i + 1];
        }
        return y;
    };

    long double last_rel = std::numeric_limits<long double>::infinity();
    for (int it = 0; it < max_iter; ++it) {
        x = solve_shifted_impl<long double>(diag, offdiag, eigenvalue, std::move(x));
        const long double n = norm2(x);
        if (!(n > 0) || !std::isfinite(static_cast<double>(n)))
            throw numerical_error("inverse_iteration: iterate collapsed");
        for (long double& a : x) a /= n;
        const auto hx = apply(x);
        long double rnorm = 0.0;
        const long double hnorm = norm2(hx);
        for (std::size_t i = 0; i < m; ++i) {
            const long double r = hx[i] - static_cast<long double>(eigenvalue) * x[i];
            rnorm += r * r;
        }
        last_rel = std::sqrt(rnorm) / std::max(hnorm, static_cast<long double>(1e-300));
        if (last_rel <= 1e-8) return std::vector<double>(x.begin(), x.end());
    }
    std::ostringstream msg;
    msg << "inverse_iteration: no convergence after " << max_iter
        << " steps, relative residual " << last_rel;
    throw numerical_error(msg.str());
}

}  // namespace decayspec::tridiag
