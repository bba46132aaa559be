#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace cdet {

// PCG32 with a splitmix64-expanded seed. Only fixed-width integer ops, so a
// given seed produces the same draw sequence on every platform; std::
// distributions are avoided for the same reason.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) {
        std::uint64_t s = seed;
        const std::uint64_t a = splitmix64(s);
        const std::uint64_t b = splitmix64(s);
        state_ = 0;
        inc_ = (b << 1u) | 1u;
        next_u32();
        state_ += a;
        next_u32();
    }

    std::uint32_t next_u32() {
        const std::uint64_t old = state_;
        state_ = old * 6364136223846793005ULL + inc_;
        const auto xorshifted = static_cast<std::uint32_t>(((old >> 18u) ^ old) >> 27u);
        const auto rot = static_cast<std::uint32_t>(old >> 59u);
        return (xorshifted >> rot) | (xorshifted << ((32u - rot) & 31u));
    }

    std::uint64_t next_u64() {
        const std::uint64_t hi = next_u32();
        const std::uint64_t lo = next_u32();
        return (hi << 32) | lo;
    }

    // Uniform in [0, 1), 53-bit resolution.
    double next_unit() { return static_cast<double>(next_u64() >> 11u) * 0x1.0p-53; }

    // Unbiased draw in [0, bound) via Lemire rejection.
    std::uint32_t bounded(std::uint32_t bound) {
        std::uint64_t m = static_cast<std::uint64_t>(next_u32()) * bound;
        auto low = static_cast<std::uint32_t>(m);
        if (low < bound) {
            const std::uint32_t threshold = (0u - bound) % bound;
            while (low < threshold) {
                m = static_cast<std::uint64_t>(next_u32()) * bound;
                low = static_cast<std::uint32_t>(m);
            }
        }
        return static_cast<std::uint32_t>(m >> 32u);
    }

private:
    static std::uint64_t splitmix64(std::uint64_t& x) {
        std::uint64_t z = (x += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30u)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27u)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31u);
    }

    std::uint64_t state_ = 0;
    std::uint64_t inc_ = 0;
};

// Uniform integer in [lo, hi], both ends inclusive.
inline std::int64_t uniform_int(SeededRng& rng, std::int64_t lo, std::int64_t hi) {
    if (lo > hi) throw std::logic_error("uniform_int: lo > hi");
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1u;
    if (span == 0 || span > 0xFFFFFFFFULL) throw std::logic_error("uniform_int: range too wide");
    return lo + static_cast<std::int64_t>(rng.bounded(static_cast<std::uint32_t>(span)));
}

inline bool bernoulli(SeededRng& rng, double p) { return rng.next_unit() < p; }

// Exponential inter-arrival draw; rate is events per microsecond.
inline double exponential(SeededRng& rng, double rate) {
    return -std::log(1.0 - rng.next_unit()) / rate;
}

}  // namespace cdet
