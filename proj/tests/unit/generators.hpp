#pragma once

#include "binwise/partition.hpp"
#include "binwise/random.hpp"

#include <string>
#include <vector>

namespace gen {

using binwise::BigInt;
using binwise::Partition;
using binwise::PartitionModel;
using binwise::Rng;

inline BigInt big(std::uint64_t v)
{
    return BigInt(std::to_string(v));
}

inline std::uint64_t between(Rng& rng, std::uint64_t lo, std::uint64_t hi)
{
    return lo + rng.below(hi - lo + 1);
}

/// n partitions "p0".."p{n-1}" with capacities in [1, max_cap] and counts in [0, max_count].
inline std::vector<Partition> partitions(Rng& rng, std::size_t n, std::uint64_t max_cap,
                                         std::uint64_t max_count)
{
    std::vector<Partition> out;
    for (std::size_t i = 0; i < n; ++i)
        out.push_back({"p" + std::to_string(i), big(between(rng, 1, max_cap)),
                       big(between(rng, 0, max_count))});
    return out;
}

/// Small instance the oracle accepts: n <= 5 including an optional complement,
/// total capacity <= 64.
inline PartitionModel small_model(Rng& rng)
{
    const std::size_t n = between(rng, 1, 5);
    const bool complement = n < 5 && rng.below(3) == 0;
    std::vector<Partition> parts;
    std::uint64_t room = 64;
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint64_t left = n - i;
        const std::uint64_t cap = between(rng, 1, std::min<std::uint64_t>(20, room - (left - 1) - complement));
        room -= cap;
        parts.push_back({"p" + std::to_string(i), big(cap), big(between(rng, 0, 12))});
    }
    if (!complement)
        return PartitionModel(std::move(parts));
    BigInt total = 0;
    for (const auto& p : parts)
        total += p.capacity;
    return PartitionModel(std::move(parts), total + big(between(rng, 1, room)));
}

}  // namespace gen
