#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <utility>

namespace braggsim {

// SplitMix64 output function (Stafford mix13 variant, as in the reference
// implementation by Vigna). Used both as the generator step and to derive
// independent per-realization stream seeds.
inline std::uint64_t splitmix64_mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

/// Counter-based SplitMix64 generator. The i-th output depends only on the
/// seed and i, so independently seeded streams are reproducible no matter
/// which worker consumes them.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return splitmix64_mix(state_);
    }

    /// Uniform double in [0, 1), 53 random bits.
    double next_double() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    /// Standard-normal pair via the Box-Muller transform. Consumes exactly
    /// two raw draws; the first uniform is mapped into (0, 1] so the log is
    /// always finite.
    std::pair<double, double> next_normal_pair() {
        const double u1 = static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
        const double u2 = next_double();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        return {radius * std::cos(angle), radius * std::sin(angle)};
    }

private:
    std::uint64_t state_;
};

/// Seed for realization stream `stream_index` under a master seed. Streams
/// are decorrelated by mixing the index through the output function before
/// combining with the master seed.
inline std::uint64_t derive_stream_seed(std::uint64_t master_seed, std::uint64_t stream_index) {
    return splitmix64_mix(master_seed ^ splitmix64_mix(0x9E3779B97F4A7C15ULL * (stream_index + 1)));
}

} // namespace braggsim
