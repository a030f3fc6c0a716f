#pragma once

#include "binwise/bins.hpp"
#include "binwise/numeric.hpp"
#include "binwise/random.hpp"

#include <cstdint>
#include <istream>
#include <iterator>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace binwise {

struct PolicyParams
{
    BigInt users;           ///< phi
    BigInt budget;          ///< attacker guesses alpha
    BigInt tolerated;       ///< tolerated expected success E
    unsigned alphabet_size = kAlphabetSize;
};

struct PolicyResult
{
    int min_length = 0;
    double estimate = 0;  ///< (log phi + log alpha - log E) / log |alphabet|
    BigInt achieved;      ///< |alphabet|^min_length * E
    BigInt required;      ///< phi * alpha
};

/// Smallest length l >= 1 with |alphabet|^l * E >= phi * alpha, found from the
/// log estimate and then confirmed by exact integer comparison.
/// Throws std::invalid_argument unless all inputs are >= 1 and E <= phi.
PolicyResult min_length(const PolicyParams& params);

enum class Strategy { round_robin, density_ordered, random, two_choices };

Strategy parse_strategy(std::string_view name);
std::string_view to_string(Strategy strategy);

inline constexpr std::size_t kMaxExplicitBins = 1'000'000;

struct StretchReport
{
    std::uint64_t users = 0;
    std::size_t bins = 0;
    Rational expected_density;  ///< users / universe capacity
    Rational max_density;       ///< max count_i / capacity_i
    double stretch = 0;         ///< max_density / expected_density
    std::uint64_t min_count = 0;
    std::uint64_t max_count = 0;
};

/// Assigns arriving users to bins under one strategy. Single writer: callers
/// serialize assign_next on a given instance.
class BinAssigner
{
public:
    /// Explicit universe (at most 1e6 bins, no duplicates). Every strategy
    /// keeps per-bin counts here.
    BinAssigner(Strategy strategy, std::vector<BinSignature> universe, Rng rng);

    /// Random strategy over every bin of one length; nothing is tracked.
    static BinAssigner implicit_random(int length, Rng rng);

    BinSignature assign_next();
    /// As assign_next, returning the universe index (explicit universes only).
    std::size_t assign_next_index();

    Strategy strategy() const noexcept { return strategy_; }
    bool tracked() const noexcept { return !implicit_length_; }
    const std::vector<BinSignature>& universe() const noexcept { return bins_; }
    const std::vector<BigInt>& capacities() const noexcept { return capacities_; }
    const std::vector<std::uint64_t>& counts() const noexcept { return counts_; }
    std::uint64_t assigned() const noexcept { return assigned_; }
    std::size_t cursor() const noexcept { return cursor_; }

    /// Throws std::logic_error for the implicit random universe or before the
    /// first assignment.
    StretchReport stretch() const;

private:
    BinAssigner(int implicit_length, Rng rng);

    std::size_t draw_weighted();
    bool denser(std::size_t a, std::size_t b) const;
    std::size_t take_least_dense();

    struct DensityKey
    {
        std::uint64_t count;
        const BigInt* capacity;
    };
    struct DensityLess
    {
        bool operator()(const DensityKey& a, const DensityKey& b) const;
    };
    void bucket_insert(std::size_t bin);

    Strategy strategy_;
    Rng rng_;
    std::optional<int> implicit_length_;
    std::vector<BinSignature> bins_;
    std::vector<BigInt> capacities_;
    std::vector<BigInt> prefix_capacity_;  // weighted draws; empty when capacities are equal
    BigInt total_capacity_ = 0;
    std::vector<std::uint64_t> counts_;
    std::uint64_t assigned_ = 0;
    std::size_t cursor_ = 0;

    // density_ordered: bins bucketed by exact density, least dense first.
    std::map<DensityKey, std::vector<std::size_t>, DensityLess> buckets_;
    std::vector<std::size_t> slot_;  // position of each bin inside its bucket
};

/// Reads a universe: one signature per line, or a generator line
/// "length=L pattern=P" where P is a bin constraint (see BinConstraint).
/// Blank lines and lines starting with '#' are ignored.
std::vector<BinSignature> load_universe(std::istream& in);

struct ComparisonRow
{
    Strategy strategy;
    std::uint64_t users = 0;
    std::size_t bins = 0;
    Rational expected_density;
    std::uint64_t max_count = 0;  ///< median over seeds
    double stretch = 0;           ///< median over seeds
};

inline constexpr Strategy kAllStrategies[] = {Strategy::round_robin, Strategy::density_ordered,
                                              Strategy::random, Strategy::two_choices};

/// Runs each strategy on the same universe for every seed and reports median
/// max count and median stretch per strategy. Each (strategy, seed) pair uses
/// stream number = strategy index of Rng(seed, .).
std::vector<ComparisonRow> strategy_comparison(
    const std::vector<BinSignature>& universe, std::uint64_t users,
    const std::vector<std::uint64_t>& seeds,
    const std::vector<Strategy>& strategies = {std::begin(kAllStrategies), std::end(kAllStrategies)});

/// CSV: strategy,users,bins,expected_density_num,expected_density_den,max_count,stretch
void write_comparison_csv(std::ostream& out, const std::vector<ComparisonRow>& rows);

}  // namespace binwise
