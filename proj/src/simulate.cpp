#include "binwise/simulate.hpp"

#include "binwise/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace binwise {

TestProjection project(const Corpus& test, const Locator& locate)
{
    TestProjection projection;
    for (const auto& [pw, count] : test.counts()) {
        const BigInt mass(static_cast<unsigned long>(count));
        const auto id = locate(pw);
        if (!id) {
            projection.out_of_space += mass;
            continue;
        }
        if (*id == kUnutilizedId)
            projection.unutilized += mass;
        else
            projection.by_partition[*id] += mass;
        projection.total += mass;
    }
    return projection;
}

TestProjection project(const Corpus& test, const BinModel& train)
{
    return project(test, [&](std::string_view pw) { return train.locate(pw); });
}

TestProjection project(const Corpus& test, const HybridModel& train)
{
    return project(test, [&](std::string_view pw) { return train.locate(pw); });
}

TestProjection project(const SignatureTally& test, const BinModel& train)
{
    TestProjection projection;
    for (const auto& [sig, count] : test.by_signature) {
        const BigInt mass(static_cast<unsigned long>(count));
        if (!train.in_space(sig)) {
            projection.out_of_space += mass;
            continue;
        }
        if (train.model.find(sig) != nullptr)
            projection.by_partition[sig] += mass;
        else
            projection.unutilized += mass;
        projection.total += mass;
    }
    return projection;
}

Ordering parse_ordering(std::string_view name)
{
    if (name == "density")
        return Ordering::density;
    if (name == "probability")
        return Ordering::probability;
    throw std::invalid_argument("unknown ordering '" + std::string(name) + "'");
}

std::string_view to_string(Ordering ordering)
{
    return ordering == Ordering::density ? "density" : "probability";
}

GuessCurve simulate_attack(const PartitionModel& train, const TestProjection& test,
                           Ordering ordering, const std::vector<BigInt>& budgets)
{
    if (!std::is_sorted(budgets.begin(), budgets.end()))
        throw std::invalid_argument("checkpoint budgets must be sorted");
    for (const auto& [id, mass] : test.by_partition)
        if (train.find(id) == nullptr)
            throw UnknownPartition(id);

    const auto order = ordering == Ordering::density ? density_order(train)
                                                     : probability_order(train);
    std::vector<const BigInt*> capacities;
    std::vector<BigInt> masses;
    capacities.reserve(order.size() + 1);
    masses.reserve(order.size() + 1);
    for (const std::size_t i : order) {
        const Partition& p = train.partitions()[i];
        capacities.push_back(&p.capacity);
        const auto it = test.by_partition.find(p.id);
        masses.push_back(it == test.by_partition.end() ? BigInt(0) : it->second);
    }
    const BigInt rest = train.unutilized_capacity();
    if (rest > 0) {
        capacities.push_back(&rest);
        masses.push_back(test.unutilized);
    }

    // prefix_capacity[i] / prefix_mass[i]: totals over the first i partitions.
    std::vector<BigInt> prefix_capacity(capacities.size() + 1, 0);
    std::vector<BigInt> prefix_mass(capacities.size() + 1, 0);
    for (std::size_t i = 0; i < capacities.size(); ++i) {
        prefix_capacity[i + 1] = prefix_capacity[i] + *capacities[i];
        prefix_mass[i + 1] = prefix_mass[i] + masses[i];
    }

    GuessCurve curve;
    curve.test_total = test.total;
    for (const BigInt& budget : budgets) {
        if (budget < 0)
            throw std::invalid_argument("budgets must be non-negative");
        const BigInt& alpha = budget > train.total_capacity() ? train.total_capacity() : budget;
        const auto full = static_cast<std::size_t>(
            std::upper_bound(prefix_capacity.begin(), prefix_capacity.end(), alpha)
            - prefix_capacity.begin() - 1);

        Rational expected(prefix_mass[full]);
        if (full < capacities.size())
            expected += ratio((alpha - prefix_capacity[full]) * masses[full], *capacities[full]);
        expected.canonicalize();

        CurvePoint point{budget, expected, 0.0};
        if (test.total > 0) {
            Rational fraction = expected / Rational(test.total);
            point.fraction = fraction.get_d();
        }
        curve.points.push_back(std::move(point));
    }
    return curve;
}

std::vector<BigInt> parse_checkpoints(std::string_view text, const BigInt& total_capacity)
{
    const auto parse_log2 = [](std::string_view token) {
        std::size_t used = 0;
        const std::string s(token);
        double value = 0;
        try {
            value = std::stod(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != s.size() || s.empty() || !std::isfinite(value) || value < 0)
            throw std::invalid_argument("bad checkpoint '" + s + "'");
        return value;
    };

    std::vector<BigInt> budgets;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find(',', pos);
        if (end == std::string_view::npos)
            end = text.size();
        std::string_view token = text.substr(pos, end - pos);
        while (!token.empty() && token.front() == ' ')
            token.remove_prefix(1);
        while (!token.empty() && token.back() == ' ')
            token.remove_suffix(1);

        if (token == "max") {
            budgets.push_back(total_capacity);
        } else if (const auto colon = token.find(':'); colon != std::string_view::npos) {
            // start:stop[:step]
            const auto second = token.find(':', colon + 1);
            const double start = parse_log2(token.substr(0, colon));
            const double stop = parse_log2(token.substr(
                colon + 1, second == std::string_view::npos ? std::string_view::npos
                                                            : second - colon - 1));
            const double step =
                second == std::string_view::npos ? 1.0 : parse_log2(token.substr(second + 1));
            if (step <= 0 || stop < start)
                throw std::invalid_argument("bad checkpoint range '" + std::string(token) + "'");
            for (long i = 0;; ++i) {
                const double v = start + static_cast<double>(i) * step;
                if (v > stop + 1e-9)
                    break;
                budgets.push_back(budget_from_log2(v));
            }
        } else {
            budgets.push_back(budget_from_log2(parse_log2(token)));
        }
        pos = end + 1;
    }
    for (BigInt& b : budgets)
        if (b > total_capacity)
            b = total_capacity;
    budgets.erase(std::unique(budgets.begin(), budgets.end()), budgets.end());
    return budgets;
}

void write_curve_csv(std::ostream& out, const GuessCurve& curve)
{
    out << "log2_budget,expected_cracked,fraction\n";
    char line[128];
    for (const CurvePoint& p : curve.points) {
        std::snprintf(line, sizeof(line), "%.4f,%.6f,%.9f\n", p.log2_budget(), p.expected.get_d(),
                      p.fraction);
        out << line;
    }
}

}  // namespace binwise
