#pragma once

#include <cmath>
#include <cstdint>

namespace feedcanon {

/// Small deterministic RNG (splitmix64). Self-contained so that seeded
/// streams are identical across platforms and standard libraries.
class Rng {
  public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    /// Mixes extra words into a seed; used for per-cell / per-sample streams.
    static uint64_t mix(uint64_t a, uint64_t b) {
        uint64_t x = a + 0x9e3779b97f4a7c15ULL * (b + 1);
        x ^= x >> 32;
        x *= 0xd6e8feb86659fd93ULL;
        x ^= x >> 32;
        return x;
    }

    uint64_t next_u64() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform integer in [lo, hi] inclusive.
    long uniform_int(long lo, long hi) {
        const uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
        const uint64_t limit = ~uint64_t{0} - (~uint64_t{0} % span);
        uint64_t x;
        do {
            x = next_u64();
        } while (x >= limit);
        return lo + static_cast<long>(x % span);
    }

    /// Uniform double in [0, 1).
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Standard normal via Box-Muller.
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u = 0.0;
        while (u == 0.0) u = uniform01();
        const double v = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u));
        const double a = 6.283185307179586476925286766559 * v;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

  private:
    uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace feedcanon
