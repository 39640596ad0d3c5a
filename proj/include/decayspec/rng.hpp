#pragma once

#include <cstdint>
#include <random>

namespace decayspec {

// splitmix64 step; used both as a seed mixer and to derive independent
// per-realization seeds from a master seed without shared RNG state.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Counter-hash seed derivation: hash(master, index) with no sequential
// dependence between indices.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t s = master ^ (0x9e3779b97f4a7c15ULL * (index + 1));
    splitmix64(s);
    return splitmix64(s);
}

// All stochastic code takes an explicit Rng; nothing draws from a global.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(mix(seed)) {}

    double uniform() { return unif_(engine_); }                 // [0,1)
    double uniform(double a, double b) { return a + (b - a) * uniform(); }
    double gaussian() { return normal_(engine_); }              // N(0,1)
    double gaussian(double mean, double sd) { return mean + sd * gaussian(); }
    double exponential(double mean) { return -mean * std::log1p(-uniform()); }
    // chi_k variable, k > 0 (not necessarily integer)
    double chi(double dof) {
        std::gamma_distribution<double> g(dof / 2.0, 2.0);
        return std::sqrt(g(engine_));
    }
    std::uint64_t integer(std::uint64_t n) {  // uniform on {0,...,n-1}
        std::uniform_int_distribution<std::uint64_t> d(0, n - 1);
        return d(engine_);
    }

private:
    static std::uint64_t mix(std::uint64_t seed) {
        std::uint64_t s = seed;
        return splitmix64(s);
    }
    std::mt19937_64 engine_;
    std::uniform_real_distribution<double> unif_{0.0, 1.0};
    std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace decayspec
