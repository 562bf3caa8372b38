#pragma once

#include <cstdint>
#include <random>

namespace delab {

/// 64-bit LCG, x <- a x + c mod 2^64, with Knuth's MMIX constants
///   a = 6364136223846793005, c = 1442695040888963407.
/// Uniform doubles take the top 53 bits: (x >> 11) * 2^-53, so draws are
/// reproducible across standard libraries (no std distributions involved).
class Lcg64 {
public:
    using engine_type = std::linear_congruential_engine<std::uint64_t, 6364136223846793005ULL,
                                                        1442695040888963407ULL, 0ULL>;

    explicit Lcg64(std::uint64_t seed = 42) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

private:
    engine_type engine_;
};

}  // namespace delab
