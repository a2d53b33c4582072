#pragma once

#include <cstdint>

// Counter-based random streams. Every draw is a pure function of
// (stream key, index), so simulations are reproducible across platforms and
// independent of evaluation order.

namespace ddchan::rng {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

// splitmix64 finalizer
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

inline std::uint64_t stream_key(std::uint64_t seed, std::uint64_t a = 0,
                                std::uint64_t b = 0, std::uint64_t c = 0) {
    std::uint64_t k = mix64(seed + kGolden);
    k = mix64(k ^ (a + kGolden));
    k = mix64(k ^ (b + kGolden));
    k = mix64(k ^ (c + kGolden));
    return k;
}

inline std::uint64_t at(std::uint64_t key, std::uint64_t index) {
    return mix64(key + (index + 1) * kGolden);
}

// uniform in [0, 1), 53-bit resolution
inline double uniform01(std::uint64_t key, std::uint64_t index) {
    return static_cast<double>(at(key, index) >> 11) * 0x1.0p-53;
}

// Binomial draw as a sum of per-trial inverse-CDF Bernoulli draws over the
// stream. O(n) but exact for any p, with no pmf underflow at large n.
inline long binomial(std::uint64_t key, long n, double p) {
    if (p <= 0.0) return 0;
    if (p >= 1.0) return n;
    long k = 0;
    for (long i = 0; i < n; ++i)
        if (uniform01(key, static_cast<std::uint64_t>(i)) < p) ++k;
    return k;
}

// Sequential view over a stream for draws whose count is data-dependent.
class Stream {
  public:
    explicit Stream(std::uint64_t key) : key_(key) {}
    std::uint64_t next_u64() { return at(key_, index_++); }
    double next_uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }
    double next_uniform(double lo, double hi) {
        return lo + (hi - lo) * next_uniform01();
    }

  private:
    std::uint64_t key_;
    std::uint64_t index_ = 0;
};

}  // namespace ddchan::rng
