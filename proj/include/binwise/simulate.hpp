#pragma once

#include "binwise/corpus.hpp"
#include "binwise/models.hpp"
#include "binwise/partition.hpp"

#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace binwise {

/// Test-corpus mass expressed in the train model's partitions.
struct TestProjection
{
    std::unordered_map<std::string, BigInt> by_partition;
    /// Inside the search space but in no trained partition: credited through
    /// the zero-count complement.
    BigInt unutilized = 0;
    /// Test mass the attacker can reach at all (denominator of the fraction).
    BigInt total = 0;
    /// Outside the search space (too long): never cracked, not in `total`.
    BigInt out_of_space = 0;
};

using Locator = std::function<std::optional<std::string>(std::string_view)>;

TestProjection project(const Corpus& test, const Locator& locate);
TestProjection project(const Corpus& test, const BinModel& train);
TestProjection project(const Corpus& test, const HybridModel& train);
/// Signature-only projection for streamed corpora (bin models only).
TestProjection project(const SignatureTally& test, const BinModel& train);

enum class Ordering { density, probability };

Ordering parse_ordering(std::string_view name);
std::string_view to_string(Ordering ordering);

struct CurvePoint
{
    BigInt budget;
    Rational expected;  ///< expected cracked test passwords
    double fraction = 0;

    double log2_budget() const { return log2_of(budget); }
};

struct GuessCurve
{
    std::vector<CurvePoint> points;
    BigInt test_total;
};

/// Expected cracked test mass when the train partitions are explored in the
/// given order, evaluated exactly at each budget. A partially explored
/// partition credits test_count * effort / capacity. Budgets must be
/// non-decreasing (std::invalid_argument otherwise); budgets past the total
/// capacity clamp to it.
GuessCurve simulate_attack(const PartitionModel& train, const TestProjection& test,
                           Ordering ordering, const std::vector<BigInt>& budgets);

/// Parses "10,20,30,max" or "0:64:4,max": log2 budgets, `max` standing for the
/// total capacity. Budgets are clamped to the total capacity and repeats dropped.
std::vector<BigInt> parse_checkpoints(std::string_view text, const BigInt& total_capacity);

/// CSV with header `log2_budget,expected_cracked,fraction`.
void write_curve_csv(std::ostream& out, const GuessCurve& curve);

}  // namespace binwise
