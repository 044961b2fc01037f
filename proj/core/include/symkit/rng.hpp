#pragma once

#include <cmath>
#include <cstdint>

namespace symkit {

/// Deterministic counter-based random generator.
///
/// Output k of stream (seed) is mix64(seed + (k+1)*GOLDEN) where mix64 is the
/// splitmix64 finalizer.  Jumping to any position is O(1), there is no global
/// state, and two generators with the same seed always produce the same
/// sequence regardless of platform or thread interleaving.  Substreams for
/// parallel trials are derived with derive(), which hashes the parent seed
/// with the substream index.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed, std::uint64_t counter = 0)
        : seed_(seed), counter_(counter) {}

    std::uint64_t seed() const { return seed_; }
    std::uint64_t counter() const { return counter_; }

    std::uint64_t next_u64() {
        std::uint64_t z = seed_ + (++counter_) * 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1): 53 high bits of next_u64.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller (always consumes two uniforms).
    double next_gaussian() {
        double u1 = next_double();
        double u2 = next_double();
        while (u1 <= 0.0) u1 = next_double();  // guard log(0)
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
    }

    /// Uniform integer in [0, n).
    std::uint64_t next_below(std::uint64_t n) {
        // Rejection-free Lemire-style scaling is overkill at desk scale; the
        // modulo bias for n << 2^64 is far below every tolerance we use.
        return next_u64() % n;
    }

    /// Independent substream for trial/restart `index`.
    CounterRng derive(std::uint64_t index) const {
        std::uint64_t z = seed_ ^ (0xD6E8FEB86659FD93ULL * (index + 1));
        z = (z ^ (z >> 32)) * 0xD6E8FEB86659FD93ULL;
        z = z ^ (z >> 32);
        return CounterRng(z);
    }

private:
    std::uint64_t seed_;
    std::uint64_t counter_;
};

} // namespace symkit
