#include "decayspec/stats.hpp"

#include <algorithm>
#include <cmath>

#include "decayspec/errors.hpp"
#include "decayspec/rng.hpp"

namespace decayspec {

double pairwise_sum(const std::vector<double>& values) {
    std::function<double(std::size_t, std::size_t)> rec =
        [&](std::size_t lo, std::size_t hi) -> double {
        if (hi - lo <= 8) {
            double s = 0.0;
            for (std::size_t i = lo; i < hi; ++i) s += values[i];
            return s;
        }
        const std::size_t mid = lo + (hi - lo) / 2;
        return rec(lo, mid) + rec(mid, hi);
    };
    return values.empty() ? 0.0 : rec(0, values.size());
}

GapSummary gap_statistics(const PointSample& points) {
    if (points.points.size() < 2)
        throw invalid_argument("gap_statistics: need at least 2 points");
    GapSummary g;
    std::vector<double> sorted = points.points;
    std::sort(sorted.begin(), sorted.end());
    g.gaps.reserve(sorted.size() - 1);
    for (std::size_t i = 0; i + 1 < sorted.size(); ++i)
        g.gaps.push_back(sorted[i + 1] - sorted[i]);
    g.mean = pairwise_sum(g.gaps) / static_cast<double>(g.gaps.size());
    double v = 0.0;
    for (double x : g.gaps) v += (x - g.mean) * (x - g.mean);
    g.sd = g.gaps.size() > 1 ? std::sqrt(v / static_cast<double>(g.gaps.size() - 1)) : 0.0;
    std::sort(g.gaps.begin(), g.gaps.end());
    return g;
}

std::vector<double> collect_gaps(const std::vector<PointSample>& samples) {
    std::vector<double> gaps;
    for (const auto& s : samples) {
        if (s.points.size() < 2) continue;
        std::vector<double> sorted = s.points;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t i = 0; i + 1 < sorted.size(); ++i)
            gaps.push_back(sorted[i + 1] - sorted[i]);
    }
    return gaps;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw invalid_argument("ks_two_sample: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return d;
}

double ks_vs_cdf(std::vector<double> a, const std::function<double(double)>& cdf) {
    if (a.empty()) throw invalid_argument("ks_vs_cdf: empty sample");
    std::sort(a.begin(), a.end());
    const double n = static_cast<double>(a.size());
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double F = cdf(a[i]);
        d = std::max(d, std::abs(static_cast<double>(i + 1) / n - F));
        d = std::max(d, std::abs(static_cast<double>(i) / n - F));
    }
    return d;
}

double ks_vs_uniform01(std::vector<double> a) {
    return ks_vs_cdf(std::move(a),
                     [](double x) { return std::clamp(x, 0.0, 1.0); });
}

double empirical_w1(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw invalid_argument("empirical_w1: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    // integral of |F_a - F_b| over the merged support
    const double wa = 1.0 / static_cast<double>(a.size());
    const double wb = 1.0 / static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double total = 0.0, diff = 0.0, prev = std::min(a.front(), b.front());
    while (i < a.size() || j < b.size()) {
        double x;
        if (j >= b.size() || (i < a.size() && a[i] <= b[j]))
            x = a[i];
        else
            x = b[j];
        total += std::abs(diff) * (x - prev);
        prev = x;
        while (i < a.size() && a[i] == x) {
            diff += wa;
            ++i;
        }
        while (j < b.size() && b[j] == x) {
            diff -= wb;
            ++j;
        }
    }
    return total;
}

CompareStatistic parse_statistic(const std::string& name) {
    if (name == "gap_w1") return CompareStatistic::gap_w1;
    if (name == "gap_ks") return CompareStatistic::gap_ks;
    if (name == "center_ks_uniform") return CompareStatistic::center_ks_uniform;
    if (name == "measure_w1_mean") return CompareStatistic::measure_w1_mean;
    throw invalid_argument("unknown statistic: " + name);
}

std::string statistic_name(CompareStatistic s) {
    switch (s) {
        case CompareStatistic::gap_w1: return "gap_w1";
        case CompareStatistic::gap_ks: return "gap_ks";
        case CompareStatistic::center_ks_uniform: return "center_ks_uniform";
        case CompareStatistic::measure_w1_mean: return "measure_w1_mean";
    }
    return "?";
}

namespace {

template <typename T>
std::vector<T> pick(const std::vector<T>& v, const std::vector<std::size_t>& idx) {
    std::vector<T> out;
    out.reserve(idx.size());
    for (std::size_t i : idx) out.push_back(v[i]);
    return out;
}

std::vector<std::size_t> draw_indices(std::size_t n, Rng& rng) {
    std::vector<std::size_t> idx(n);
    for (auto& i : idx) i = rng.integer(n);
    return idx;
}

bool same_points(const std::vector<PointSample>& a, const std::vector<PointSample>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i].points != b[i].points) return false;
    return true;
}

bool same_measures(const std::vector<EigenfunctionMeasure>& a,
                   const std::vector<EigenfunctionMeasure>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i].density != b[i].density) return false;
    return true;
}

double gap_distance(const std::vector<PointSample>& a, const std::vector<PointSample>& b,
                    CompareStatistic s) {
    auto ga = collect_gaps(a);
    auto gb = collect_gaps(b);
    if (ga.empty() || gb.empty())
        throw invalid_argument("compare: an ensemble contributes no gaps");
    return s == CompareStatistic::gap_w1 ? empirical_w1(std::move(ga), std::move(gb))
                                         : ks_two_sample(std::move(ga), std::move(gb));
}

double measure_w1_mean(const std::vector<EigenfunctionMeasure>& a,
                       const std::vector<EigenfunctionMeasure>& b) {
    std::vector<double> d;
    d.reserve(a.size() * b.size());
    for (const auto& ma : a)
        for (const auto& mb : b) d.push_back(wasserstein1(ma, mb));
    return pairwise_sum(d) / static_cast<double>(d.size());
}

}  // namespace

CompareResult compare(const Ensemble& a, const Ensemble& b, CompareStatistic statistic,
                      std::uint64_t seed, std::size_t n_bootstrap) {
    CompareResult res;
    res.statistic = statistic_name(statistic);
    res.n_bootstrap = n_bootstrap;
    Rng rng(seed);

    auto run = [&](const Ensemble& ea, const Ensemble& eb) -> double {
        switch (statistic) {
            case CompareStatistic::gap_w1:
            case CompareStatistic::gap_ks:
                if (ea.point_samples.empty() || eb.point_samples.empty())
                    throw invalid_argument("compare: gap statistics need point samples");
                return gap_distance(ea.point_samples, eb.point_samples, statistic);
            case CompareStatistic::center_ks_uniform:
                if (ea.centers.empty())
                    throw invalid_argument(
                        "compare: center_ks_uniform needs localization centers in ensemble A");
                return ks_vs_uniform01(ea.centers);
            case CompareStatistic::measure_w1_mean:
                if (ea.measures.empty() || eb.measures.empty())
                    throw invalid_argument("compare: measure_w1_mean needs measures");
                return measure_w1_mean(ea.measures, eb.measures);
        }
        throw invalid_argument("compare: unknown statistic");
    };

    res.distance = run(a, b);

    // identical ensembles are resampled with shared indices, so the
    // self-distance bootstrap collapses to zero as it should
    const bool paired = (statistic == CompareStatistic::measure_w1_mean)
                            ? same_measures(a.measures, b.measures)
                            : same_points(a.point_samples, b.point_samples);

    std::vector<double> boot;
    boot.reserve(n_bootstrap);
    for (std::size_t k = 0; k < n_bootstrap; ++k) {
        Ensemble ra, rb;
        switch (statistic) {
            case CompareStatistic::gap_w1:
            case CompareStatistic::gap_ks: {
                const auto ia = draw_indices(a.point_samples.size(), rng);
                const auto ib = paired ? ia : draw_indices(b.point_samples.size(), rng);
                ra.point_samples = pick(a.point_samples, ia);
                rb.point_samples = pick(b.point_samples, ib);
                break;
            }
            case CompareStatistic::center_ks_uniform:
                ra.centers = pick(a.centers, draw_indices(a.centers.size(), rng));
                break;
            case CompareStatistic::measure_w1_mean: {
                const auto ia = draw_indices(a.measures.size(), rng);
                const auto ib = paired ? ia : draw_indices(b.measures.size(), rng);
                ra.measures = pick(a.measures, ia);
                rb.measures = pick(b.measures, ib);
                break;
            }
        }
        boot.push_back(run(ra, rb));
    }
    std::sort(boot.begin(), boot.end());
    if (!boot.empty()) {
        const auto lo = static_cast<std::size_t>(0.025 * static_cast<double>(boot.size()));
        const auto hi = static_cast<std::size_t>(0.975 * static_cast<double>(boot.size() - 1));
        res.ci_lo = boot[lo];
        res.ci_hi = boot[hi];
    }
    return res;
}

}  // namespace decayspec
