#pragma once

#include <cstdint>
#include <initializer_list>

namespace urbansim {

/// SplitMix64 finalizer. Used to derive independent seeds from structured keys.
std::uint64_t mix64(std::uint64_t x);

/// Order-sensitive hash of a key tuple, e.g. (seed, pixel, sample).
std::uint64_t hash_key(std::initializer_list<std::uint64_t> parts);

/// PCG-XSH-RR 64/32 (O'Neill 2014). Output is fully specified by (seed, stream),
/// so sequences are identical across compilers and platforms. All distribution
/// transforms below are implemented here rather than via <random> distributions,
/// whose outputs are implementation-defined.
class Pcg32 {
public:
    Pcg32(std::uint64_t seed, std::uint64_t stream);

    std::uint32_t next_u32();

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform();

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Unbiased integer in [0, bound), bound > 0.
    std::uint32_t bounded(std::uint32_t bound);

private:
    std::uint64_t state_ = 0;
    std::uint64_t inc_ = 0;
};

/// Sub-streams, one per sampling stage. Values are part of the on-disk
/// reproducibility contract: never renumber, only append.
enum class RngStream : std::uint64_t {
    StaticCount = 1,
    StaticLocations = 2,
    StaticMarks = 3,
    StaticRepulsion = 4,
    DynamicCount = 5,
    DynamicLocations = 6,
    DynamicMarks = 7,
    DynamicRepulsion = 8,
    DynamicDestinations = 9,
    Camera = 10,
    PixelSample = 11,
    PixelStrata = 12,
    Catalog = 13,
};

/// Generator for one stage of one seeded computation.
inline Pcg32 make_stream(std::uint64_t seed, RngStream stream) {
    return Pcg32(mix64(seed), static_cast<std::uint64_t>(stream));
}

}  // namespace urbansim
