#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace fpart {

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t& x) {
    std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}
}  // namespace detail

// Seeded random stream. Independent streams are derived from (seed, stream id)
// pairs so parallel tasks and repeated audits stay reproducible.
class Rng {
public:
    static Rng stream(std::uint64_t seed, std::uint64_t stream_id) {
        std::uint64_t x = seed ^ (0x5851f42d4c957f2dULL * (stream_id + 1));
        std::seed_seq seq{detail::splitmix64(x), detail::splitmix64(x), detail::splitmix64(x),
                          detail::splitmix64(x)};
        Rng r;
        r.eng_.seed(seq);
        return r;
    }

    std::uint64_t next() { return eng_(); }

    // Uniform in [0, 1).
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform in [0, n); unbiased.
    std::uint64_t below(std::uint64_t n) {
        if (n == 0) return 0;
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
        std::uint64_t x;
        do {
            x = next();
        } while (x >= limit);
        return x % n;
    }

    bool bernoulli(double p) { return uniform01() < p; }

    // Number of failures before the next success in a Bernoulli(p) stream.
    // Used for skip-sampling sparse subsets without touching every candidate.
    std::uint64_t geometric_skips(double p) {
        if (p >= 1.0) return 0;
        double u = uniform01();
        // 1 - u > 0 since uniform01 < 1
        double s = std::floor(std::log1p(-u) / std::log1p(-p));
        if (s < 0) s = 0;
        if (s > 9e18) return std::uint64_t{9000000000000000000ULL};
        return static_cast<std::uint64_t>(s);
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace fpart
