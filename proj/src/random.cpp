#include "binwise/random.hpp"

#include <stdexcept>
#include <vector>

namespace binwise {

namespace {

std::seed_seq make_seed(std::uint64_t seed, std::uint64_t stream)
{
    return std::seed_seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                         static_cast<std::uint32_t>(stream),
                         static_cast<std::uint32_t>(stream >> 32)};
}

}  // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t stream)
{
    auto seq = make_seed(seed, stream);
    engine_.seed(seq);
}

std::uint64_t Rng::below(std::uint64_t bound)
{
    if (bound == 0)
        throw std::invalid_argument("Rng::below needs a positive bound");
    // Reject the final partial block so every residue is equally likely.
    const std::uint64_t limit = max() - (max() % bound + 1) % bound;
    std::uint64_t x;
    do {
        x = engine_();
    } while (x > limit);
    return x % bound;
}

BigInt Rng::below(const BigInt& bound)
{
    if (bound <= 0)
        throw std::invalid_argument("Rng::below needs a positive bound");
    if (bound.fits_ulong_p())
        return BigInt(static_cast<unsigned long>(below(static_cast<std::uint64_t>(bound.get_ui()))));

    const std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
    const std::size_t words = (bits + 63) / 64;
    const std::size_t spare = words * 64 - bits;
    std::vector<std::uint64_t> limbs(words);
    BigInt candidate;
    for (;;) {
        for (auto& limb : limbs)
            limb = engine_();
        limbs.front() >>= spare;  // most significant word first
        mpz_import(candidate.get_mpz_t(), words, 1, sizeof(std::uint64_t), 0, 0, limbs.data());
        if (candidate < bound)
            return candidate;
    }
}

double Rng::unit()
{
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

}  // namespace binwise
