#pragma once

#include "binwise/numeric.hpp"

#include <cstdint>
#include <random>

namespace binwise {

/// Seedable generator used by every randomized routine.
///
/// Stream rule: `Rng(seed, stream)` seeds a mt19937_64 from the seed sequence
/// {seed low 32 bits, seed high 32 bits, stream low 32 bits, stream high 32 bits}.
/// Independent consumers (strategy instances, Monte-Carlo trials, threads) take
/// distinct stream numbers under one user seed. Range reduction is done here
/// rather than by std distributions, so sequences are identical across
/// standard library implementations.
class Rng
{
public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type{0}; }
    result_type operator()() { return engine_(); }

    /// Uniform in [0, bound). bound must be positive.
    std::uint64_t below(std::uint64_t bound);
    /// Uniform in [0, bound) for an arbitrary positive integer bound.
    BigInt below(const BigInt& bound);
    /// Uniform double in [0, 1).
    double unit();

private:
    std::mt19937_64 engine_;
};

}  // namespace binwise
