// Deterministic random numbers. SplitMix64 (Steele/Lea/Vigna) is the single
// PRNG used everywhere: the state advances by a fixed odd increment and each
// output is a bijective mix of the state, so independent streams are obtained
// by re-mixing (seed, stream index) into a fresh starting state. Results are
// reproducible bit-for-bit across platforms and thread counts.

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace mubcert {

class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    // Independent stream for a parallel work unit (e.g. one search restart).
    static SplitMix64 stream(std::uint64_t seed, std::uint64_t stream_index) {
        SplitMix64 mixer(seed);
        std::uint64_t s = mixer.next() + stream_index * 0x9E3779B97F4A7C15ULL;
        SplitMix64 out(s);
        out.next();
        return out;
    }

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1), 53-bit resolution.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform in (0, 1]; safe as a log argument.
    double uniform01_open() { return (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53; }

    // Standard normal via Box-Muller (cosine branch only, so the draw count
    // per call is fixed and stream positions stay predictable).
    double normal() {
        const double u1 = uniform01_open();
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

  private:
    std::uint64_t state_;
};

}  // namespace mubcert
