#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "bellscope/rational.hpp"

namespace bellscope {

// Deterministic RNG utilities on top of mt19937_64. The distributions are
// hand-rolled so sampled sequences do not depend on the standard library
// implementation: report bytes must be reproducible for a fixed seed.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Independent per-trial stream: trials can run in any order.
    static Rng split(std::uint64_t seed, std::uint64_t trial) {
        return Rng(mix(seed ^ mix(trial + 0x9e3779b97f4a7c15ull)));
    }

    std::uint64_t next_u64() { return engine_(); }

    // Uniform integer in [0, n), rejection-sampled.
    std::uint64_t below(std::uint64_t n) {
        if (n == 0) return 0;
        std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v;
        do { v = engine_(); } while (v >= limit);
        return v % n;
    }

    // Uniform in [0,1) with 53 random bits.
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    bool coin(double p = 0.5) { return uniform() < p; }

    // Standard normal, Box-Muller.
    double normal() {
        double u1 = uniform(), u2 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

    // Dirichlet(1,...,1): uniform on the k-simplex, via normalized exponentials.
    std::vector<double> dirichlet(std::size_t k) {
        std::vector<double> v(k);
        double sum = 0.0;
        for (auto& x : v) {
            double u = uniform();
            while (u <= 0.0) u = uniform();
            x = -std::log(u);
            sum += x;
        }
        for (auto& x : v) x /= sum;
        return v;
    }

    // Uniform-simplex draw rounded to exact rationals with denominator `den`,
    // largest-remainder method. `min_unit` > 0 keeps every cell strictly
    // positive (full support).
    std::vector<Rational> rational_simplex(std::size_t k, std::int64_t den = 64,
                                           std::int64_t min_unit = 1) {
        std::vector<double> w = dirichlet(k);
        std::int64_t budget = den - min_unit * static_cast<std::int64_t>(k);
        if (budget < 0) throw DomainError("rational_simplex: denominator too small");
        std::vector<std::int64_t> units(k, min_unit);
        std::vector<std::pair<double, std::size_t>> rem(k);
        std::int64_t assigned = 0;
        for (std::size_t i = 0; i < k; ++i) {
            double exact = w[i] * static_cast<double>(budget);
            std::int64_t fl = static_cast<std::int64_t>(std::floor(exact));
            units[i] += fl;
            assigned += fl;
            rem[i] = {exact - static_cast<double>(fl), i};
        }
        std::sort(rem.begin(), rem.end(), [](const auto& a, const auto& b) {
            if (a.first != b.first) return a.first > b.first;
            return a.second < b.second;
        });
        std::int64_t leftover = budget - assigned;
        for (std::int64_t i = 0; i < leftover; ++i)
            units[rem[static_cast<std::size_t>(i)].second] += 1;
        std::vector<Rational> out(k);
        for (std::size_t i = 0; i < k; ++i) out[i] = Rational(units[i], den);
        return out;
    }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ull;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    std::mt19937_64 engine_;
};

} // namespace bellscope
