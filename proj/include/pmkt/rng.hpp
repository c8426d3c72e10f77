#pragma once

#include <cmath>
#include <cstdint>

namespace pmkt {

// Deterministic, portable generators. Everything here is fully specified
// arithmetic on uint64_t, so streams are reproducible across compilers and
// platforms (std:: distributions are not, which is why we roll our own
// uniform-real mapping).

/// SplitMix64 (Steele, Lea & Flood). Used for seeding and seed mixing.
struct SplitMix64 {
    std::uint64_t state = 0;

    explicit constexpr SplitMix64(std::uint64_t seed) : state(seed) {}

    constexpr std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
};

/// xoshiro256++ (Blackman & Vigna). 64-bit output, 256-bit state, seeded
/// through SplitMix64 so that any 64-bit seed gives a well-mixed state.
class Xoshiro256pp {
public:
    using result_type = std::uint64_t;

    explicit constexpr Xoshiro256pp(std::uint64_t seed) {
        SplitMix64 sm(seed);
        for (auto& word : s_) word = sm.next();
    }

    constexpr std::uint64_t next() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform double in [0, 1): top 53 bits of one draw.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform double in [lo, hi). One draw per call; the guard keeps the
    /// half-open contract even when lo + u*(hi-lo) rounds up to hi.
    double uniform(double lo, double hi) {
        double v = lo + uniform01() * (hi - lo);
        return v < hi ? v : std::nextafter(hi, lo);
    }

    friend bool operator==(const Xoshiro256pp&, const Xoshiro256pp&) = default;

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t s_[4] = {};
};

/// Finalizer step of SplitMix64, usable as a standalone 64-bit mixer.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Derives an independent stream seed from (base, stream, index).
/// Fixed mixing chain; sweep replicates depend on this staying stable.
constexpr std::uint64_t mix_seed(std::uint64_t base, std::uint64_t stream, std::uint64_t index) {
    std::uint64_t h = base + 0x9e3779b97f4a7c15ULL * (stream + 1);
    h = mix64(h);
    h += 0x9e3779b97f4a7c15ULL * (index + 1);
    return mix64(h);
}

} // namespace pmkt
