#pragma once

#include "binwise/numeric.hpp"

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace binwise {

/// One chunk of the password search space: how many candidates it holds and
/// how many observed passwords fell into it. Counts may exceed capacity since
/// the observations are a multiset.
struct Partition
{
    std::string id;
    BigInt capacity;
    BigInt count;
};

/// Exact density comparison by cross-multiplication.
/// Returns `greater` when `a` is denser than `b`.
std::strong_ordering compare_density(const Partition& a, const Partition& b);

/// Reserved id of the implicit zero-count complement partition.
inline constexpr std::string_view kUnutilizedId = "*unutilized*";

/// A set of disjoint partitions with cached totals.
///
/// `total_capacity` may exceed the sum of listed capacities. The excess is the
/// unutilized complement of the search space: it carries no observations and
/// planners explore it after every listed partition, under `kUnutilizedId`.
class PartitionModel
{
public:
    PartitionModel() = default;
    explicit PartitionModel(std::vector<Partition> partitions);
    PartitionModel(std::vector<Partition> partitions, BigInt total_capacity);

    const std::vector<Partition>& partitions() const noexcept { return partitions_; }
    std::size_t size() const noexcept { return partitions_.size(); }
    bool empty() const noexcept { return partitions_.empty(); }

    const BigInt& total_count() const noexcept { return total_count_; }
    const BigInt& total_capacity() const noexcept { return total_capacity_; }
    BigInt unutilized_capacity() const { return total_capacity_ - listed_capacity_; }

    /// Finds a listed partition. The unutilized complement is not listed.
    const Partition* find(std::string_view id) const;

private:
    std::vector<Partition> partitions_;
    std::unordered_map<std::string, std::size_t> index_;
    BigInt total_count_ = 0;
    BigInt total_capacity_ = 0;
    BigInt listed_capacity_ = 0;
};

struct Allocation
{
    std::string id;
    BigInt effort;
};

/// Effort distribution in exploration order. Every partition of the model
/// appears once (plus the unutilized complement when it is non-empty); all
/// entries before the frontier are fully explored and all after it are zero.
struct AttackPlan
{
    std::vector<Allocation> allocations;
    BigInt budget;          ///< requested budget
    BigInt spent;           ///< min(budget, total capacity)
    bool clamped = false;   ///< budget exceeded the total capacity
    std::size_t fully_explored = 0;  ///< number of leading partitions explored completely
    Rational frontier_coverage = 0;  ///< explored fraction of the next partition
};

struct ExpectedSuccess
{
    Rational value;

    double approx() const { return value.get_d(); }
    double log2() const { return log2_of(value); }
};

/// Indices into `model.partitions()` by decreasing density; ties go to the
/// larger count, then the smaller id.
std::vector<std::size_t> density_order(const PartitionModel& model);
/// Indices by decreasing count; ties go to the smaller id.
std::vector<std::size_t> probability_order(const PartitionModel& model);

AttackPlan plan_in_order(const PartitionModel& model, const std::vector<std::size_t>& order,
                         const BigInt& budget);
AttackPlan plan_density_order(const PartitionModel& model, const BigInt& budget);
AttackPlan plan_probability_order(const PartitionModel& model, const BigInt& budget);

/// Sum over the plan of effort * count / capacity.
/// Throws UnknownPartition for ids absent from the model.
ExpectedSuccess expected_success(const PartitionModel& model, const AttackPlan& plan);

/// Closed form of the optimal greedy allocation: the counts of the fully
/// explored densest partitions plus the remaining budget at the frontier density.
ExpectedSuccess max_expected_success(const PartitionModel& model, const BigInt& budget);

/// count * budget / capacity, the success against uniformly dense partitions.
ExpectedSuccess uniform_expected_success(const BigInt& total_count, const BigInt& total_capacity,
                                         const BigInt& budget);

struct OracleResult
{
    ExpectedSuccess best;
    std::vector<Allocation> witness;
};

inline constexpr std::size_t kOracleMaxPartitions = 5;
inline constexpr long kOracleMaxCapacity = 64;

/// Exhaustive search over every integral allocation of `budget`. Only for
/// small instances: at most 5 partitions (the unutilized complement counts as
/// one) and total capacity at most 64, otherwise InstanceTooLarge.
OracleResult oracle_optimal_allocation(const PartitionModel& model, const BigInt& budget);

}  // namespace binwise
