#include "binwise/partition.hpp"

#include "binwise/errors.hpp"

#include <algorithm>
#include <numeric>

namespace binwise {

std::strong_ordering compare_density(const Partition& a, const Partition& b)
{
    const BigInt lhs = a.count * b.capacity;
    const BigInt rhs = b.count * a.capacity;
    const int c = cmp(lhs, rhs);
    if (c > 0)
        return std::strong_ordering::greater;
    if (c < 0)
        return std::strong_ordering::less;
    return std::strong_ordering::equal;
}

PartitionModel::PartitionModel(std::vector<Partition> partitions)
    : PartitionModel(std::move(partitions), -1)
{
}

PartitionModel::PartitionModel(std::vector<Partition> partitions, BigInt total_capacity)
    : partitions_(std::move(partitions))
{
    index_.reserve(partitions_.size());
    for (std::size_t i = 0; i < partitions_.size(); ++i) {
        const Partition& p = partitions_[i];
        if (p.id == kUnutilizedId)
            throw InvalidModel("partition id '" + p.id + "' is reserved");
        if (p.capacity < 1)
            throw InvalidModel("partition '" + p.id + "' has capacity below 1");
        if (p.count < 0)
            throw InvalidModel("partition '" + p.id + "' has a negative count");
        if (!index_.emplace(p.id, i).second)
            throw InvalidModel("duplicate partition id '" + p.id + "'");
        total_count_ += p.count;
        listed_capacity_ += p.capacity;
    }
    // -1 marks "no explicit total"
    if (total_capacity < 0) {
        total_capacity_ = listed_capacity_;
    } else {
        if (total_capacity < listed_capacity_)
            throw InvalidModel("total capacity is smaller than the sum of partition capacities");
        total_capacity_ = std::move(total_capacity);
    }
}

const Partition* PartitionModel::find(std::string_view id) const
{
    const auto it = index_.find(std::string(id));
    return it == index_.end() ? nullptr : &partitions_[it->second];
}

std::vector<std::size_t> density_order(const PartitionModel& model)
{
    const auto& parts = model.partitions();
    std::vector<std::size_t> order(parts.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        const Partition& a = parts[x];
        const Partition& b = parts[y];
        if (const auto c = compare_density(a, b); c != 0)
            return c > 0;
        if (const int c = cmp(a.count, b.count); c != 0)
            return c > 0;
        return a.id < b.id;
    });
    return order;
}

std::vector<std::size_t> probability_order(const PartitionModel& model)
{
    const auto& parts = model.partitions();
    std::vector<std::size_t> order(parts.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        const Partition& a = parts[x];
        const Partition& b = parts[y];
        if (const int c = cmp(a.count, b.count); c != 0)
            return c > 0;
        return a.id < b.id;
    });
    return order;
}

AttackPlan plan_in_order(const PartitionModel& model, const std::vector<std::size_t>& order,
                         const BigInt& budget)
{
    if (budget < 0)
        throw std::invalid_argument("budget must be non-negative");
    if (order.size() != model.size())
        throw std::invalid_argument("order must cover every partition exactly once");

    AttackPlan plan;
    plan.budget = budget;
    plan.clamped = budget > model.total_capacity();
    plan.spent = plan.clamped ? model.total_capacity() : budget;

    BigInt remaining = plan.spent;
    bool frontier_seen = false;
    const auto place = [&](const std::string& id, const BigInt& capacity) {
        BigInt effort = remaining < capacity ? remaining : capacity;
        remaining -= effort;
        if (!frontier_seen) {
            if (effort == capacity) {
                ++plan.fully_explored;
            } else {
                frontier_seen = true;
                plan.frontier_coverage = ratio(effort, capacity);
            }
        }
        plan.allocations.push_back({id, std::move(effort)});
    };

    plan.allocations.reserve(order.size() + 1);
    for (const std::size_t i : order) {
        const Partition& p = model.partitions().at(i);
        place(p.id, p.capacity);
    }
    if (const BigInt rest = model.unutilized_capacity(); rest > 0)
        place(std::string(kUnutilizedId), rest);
    return plan;
}

AttackPlan plan_density_order(const PartitionModel& model, const BigInt& budget)
{
    return plan_in_order(model, density_order(model), budget);
}

AttackPlan plan_probability_order(const PartitionModel& model, const BigInt& budget)
{
    return plan_in_order(model, probability_order(model), budget);
}

ExpectedSuccess expected_success(const PartitionModel& model, const AttackPlan& plan)
{
    Rational total = 0;
    for (const Allocation& a : plan.allocations) {
        if (a.effort < 0)
            throw InvalidModel("negative effort for partition '" + a.id + "'");
        if (a.id == kUnutilizedId) {
            if (a.effort > model.unutilized_capacity())
                throw InvalidModel("effort exceeds the unutilized capacity");
            continue;  // zero count
        }
        const Partition* p = model.find(a.id);
        if (p == nullptr)
            throw UnknownPartition(a.id);
        if (a.effort > p->capacity)
            throw InvalidModel("effort exceeds capacity of partition '" + a.id + "'");
        total += ratio(a.effort * p->count, p->capacity);
    }
    total.canonicalize();
    return {total};
}

ExpectedSuccess max_expected_success(const PartitionModel& model, const BigInt& budget)
{
    if (budget < 0)
        throw std::invalid_argument("budget must be non-negative");
    const BigInt alpha = budget > model.total_capacity() ? model.total_capacity() : budget;

    BigInt explored_capacity = 0;
    BigInt explored_count = 0;
    for (const std::size_t i : density_order(model)) {
        const Partition& p = model.partitions()[i];
        if (explored_capacity + p.capacity > alpha) {
            Rational value = Rational(explored_count)
                             + ratio((alpha - explored_capacity) * p.count, p.capacity);
            value.canonicalize();
            return {value};
        }
        explored_capacity += p.capacity;
        explored_count += p.count;
    }
    // Remaining budget falls into the zero-count complement.
    return {Rational(explored_count)};
}

ExpectedSuccess uniform_expected_success(const BigInt& total_count, const BigInt& total_capacity,
                                         const BigInt& budget)
{
    if (total_capacity < 1)
        throw std::invalid_argument("total capacity must be at least 1");
    Rational value(total_count * budget, total_capacity);
    value.canonicalize();
    return {value};
}

namespace {

struct OracleSlot
{
    std::string id;
    long capacity;
    BigInt weight;  // count * (lcm / capacity)
};

class OracleSearch
{
public:
    explicit OracleSearch(std::vector<OracleSlot> slots)
        : slots_(std::move(slots)), current_(slots_.size(), 0), suffix_(slots_.size() + 1, 0)
    {
        for (std::size_t i = slots_.size(); i-- > 0;)
            suffix_[i] = suffix_[i + 1] + slots_[i].capacity;
    }

    void run(long budget)
    {
        BigInt score = 0;
        descend(0, budget, score);
    }

    const BigInt& best_score() const { return best_score_; }
    const std::vector<long>& best() const { return best_; }

private:
    void descend(std::size_t depth, long remaining, const BigInt& score)
    {
        if (depth == slots_.size()) {
            if (remaining == 0 && (best_.empty() || score > best_score_)) {
                best_score_ = score;
                best_ = current_;
            }
            return;
        }
        const long low = std::max(0L, remaining - suffix_[depth + 1]);
        const long high = std::min(slots_[depth].capacity, remaining);
        BigInt next;
        for (long effort = low; effort <= high; ++effort) {
            next = score + slots_[depth].weight * effort;
            current_[depth] = effort;
            descend(depth + 1, remaining - effort, next);
        }
        current_[depth] = 0;
    }

    std::vector<OracleSlot> slots_;
    std::vector<long> current_;
    std::vector<long> suffix_;
    std::vector<long> best_;
    BigInt best_score_ = 0;
};

}  // namespace

OracleResult oracle_optimal_allocation(const PartitionModel& model, const BigInt& budget)
{
    if (budget < 0)
        throw std::invalid_argument("budget must be non-negative");
    const BigInt rest = model.unutilized_capacity();
    const std::size_t slot_count = model.size() + (rest > 0 ? 1 : 0);
    if (slot_count > kOracleMaxPartitions || model.total_capacity() > kOracleMaxCapacity)
        throw InstanceTooLarge("oracle accepts at most 5 partitions with total capacity 64");

    std::vector<OracleSlot> slots;
    BigInt lcm = 1;
    for (const Partition& p : model.partitions())
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), p.capacity.get_mpz_t());
    for (const Partition& p : model.partitions())
        slots.push_back({p.id, p.capacity.get_si(), p.count * (lcm / p.capacity)});
    if (rest > 0)
        slots.push_back({std::string(kUnutilizedId), rest.get_si(), 0});

    const BigInt alpha = budget > model.total_capacity() ? model.total_capacity() : budget;
    OracleSearch search(slots);
    search.run(alpha.get_si());

    OracleResult result;
    Rational value(search.best_score(), lcm);
    value.canonicalize();
    result.best = {value};
    for (std::size_t i = 0; i < slots.size(); ++i)
        result.witness.push_back({slots[i].id, search.best()[i]});
    return result;
}

}  // namespace binwise
