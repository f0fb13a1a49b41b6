#ifndef SENSIVAR_RNG_HPP
#define SENSIVAR_RNG_HPP

#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

namespace sensivar {

// Seeding and uniform-variate helpers.
//
// All randomized code paths (LHS jitter, pseudo-random sampling, bootstrap
// resampling, metafunction draws) go through this header so that results are
// reproducible byte-for-byte across platforms. std::mt19937_64 output is
// fully specified by the standard; the distribution adaptors below avoid
// std::uniform_*_distribution and std::shuffle, whose outputs are not.

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Stable per-stream seed: mixes a user seed with a stream id (column index,
// bootstrap replicate, ...) so substreams are independent and order-free.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t s = seed ^ (stream * 0xD1B54A32D192ED03ULL + 0x2545F4914F6CDD1DULL);
    return splitmix64(s);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform double in [0,1), 53 random bits.
    double next_double() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    // Uniform double strictly inside (0,1): midpoints of the 2^53 grid.
    double next_double_open() {
        return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
    }

    // Unbiased integer in [0, n) via Lemire's multiply-shift with rejection.
    std::uint64_t next_below(std::uint64_t n) {
        while (true) {
            std::uint64_t x = engine_();
            __uint128_t m = static_cast<__uint128_t>(x) * n;
            std::uint64_t low = static_cast<std::uint64_t>(m);
            if (low >= n || low >= (0ULL - n) % n)
                return static_cast<std::uint64_t>(m >> 64);
        }
    }

private:
    std::mt19937_64 engine_;
};

// Fisher-Yates permutation of {0, ..., n-1}.
inline std::vector<std::size_t> random_permutation(std::size_t n, Rng& rng) {
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), std::size_t{0});
    for (std::size_t i = n; i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(rng.next_below(i));
        std::swap(p[i - 1], p[j]);
    }
    return p;
}

} // namespace sensivar

#endif
