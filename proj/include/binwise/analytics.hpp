#pragma once

#include "binwise/corpus.hpp"
#include "binwise/numeric.hpp"
#include "binwise/partition.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace binwise {

/// Guesses left per stored hash when each of `users` hashes carries its own
/// salt: floor(budget / users).
BigInt effective_budget_after_salting(const BigInt& budget, const BigInt& users);

struct RateBudget
{
    BigInt guesses;  ///< floor(rate * seconds)
    double log2 = 0;
};

RateBudget budget_from_rate(const Rational& guesses_per_second, const Rational& seconds);

/// Multi-pattern substring automaton (Aho-Corasick) over bytes.
class SubstringAutomaton
{
public:
    explicit SubstringAutomaton(const std::vector<std::string>& patterns);

    /// True when any pattern occurs in `text`.
    bool contains_any(std::string_view text) const;
    std::size_t pattern_count() const noexcept { return patterns_; }

private:
    struct Node
    {
        std::vector<std::pair<unsigned char, std::uint32_t>> edges;  // sorted by byte
        std::uint32_t fail = 0;
        bool terminal = false;  // some pattern ends here or at a fail ancestor
    };

    std::uint32_t child(std::uint32_t node, unsigned char c) const;
    std::uint32_t step(std::uint32_t node, unsigned char c) const;

    std::vector<Node> nodes_;
    std::size_t patterns_ = 0;
};

struct SubstringShare
{
    std::uint64_t qualifying = 0;  ///< passwords with no uppercase letter and length >= min_length
    std::uint64_t containing = 0;  ///< qualifying mass containing a popular entry
    Rational share = 0;            ///< containing / qualifying, 0 when nothing qualifies
};

/// Among passwords with no uppercase letter and length >= min_length, the weighted share
/// that contains any popular entry as a substring (case-sensitive).
/// Throws std::invalid_argument for an empty popular list.
SubstringShare long_password_substring_share(const Corpus& corpus,
                                             const std::vector<std::string>& popular,
                                             std::size_t min_length);

struct UtilizationRow
{
    int length = 0;
    BigInt available;             ///< 4^length
    std::uint64_t utilized = 0;   ///< distinct observed signatures of this length
    std::uint64_t cumulative = 0; ///< utilized over this and all shorter requested lengths
};

/// Counts partitions whose id is a signature of each requested length and
/// whose count is positive. Rows come back in increasing length order.
std::vector<UtilizationRow> utilization_report(const PartitionModel& model, std::vector<int> lengths);

}  // namespace binwise
