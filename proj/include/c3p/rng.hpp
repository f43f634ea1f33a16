#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace c3p {

// Deterministic random source. std::mt19937_64 has a fully specified output
// sequence, but the standard distributions do not, so the transforms here
// are written out explicitly and produce identical streams on every
// platform and standard library.
class Rng {
public:
    explicit Rng(uint64_t seed) : engine_(seed) {}

    uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1) with 53 random bits.
    double uniform() { return double(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Unbiased integer in [0, n) by rejection.
    uint64_t below(uint64_t n) {
        if (n == 0) return 0;
        uint64_t limit = ~uint64_t(0) - ~uint64_t(0) % n;
        uint64_t v;
        do {
            v = engine_();
        } while (v >= limit);
        return v % n;
    }

    // Standard normal via Box-Muller; one value per call, no caching, so the
    // consumption pattern stays obvious.
    double normal() {
        double u1 = uniform();
        double u2 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
    }

    double normal(double mean, double stddev) { return mean + stddev * normal(); }

    // k distinct indices from [0, n), uniform without replacement
    // (partial Fisher-Yates). Result order is the selection order.
    std::vector<uint32_t> sample_without_replacement(uint32_t n, uint32_t k) {
        std::vector<uint32_t> idx(n);
        for (uint32_t i = 0; i < n; ++i) idx[i] = i;
        if (k > n) k = n;
        for (uint32_t i = 0; i < k; ++i) {
            uint32_t j = i + uint32_t(below(n - i));
            std::swap(idx[i], idx[j]);
        }
        idx.resize(k);
        return idx;
    }

private:
    static constexpr double kPi = 3.14159265358979323846;
    std::mt19937_64 engine_;
};

}  // namespace c3p
