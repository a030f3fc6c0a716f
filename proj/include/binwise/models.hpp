#pragma once

#include "binwise/bins.hpp"
#include "binwise/corpus.hpp"
#include "binwise/partition.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace binwise {

/// A bin partition model: one partition per observed signature, id = the
/// signature text. The model's total capacity is the whole search space so the
/// unobserved bins form the unutilized complement.
struct BinModel
{
    PartitionModel model;
    int l_max = 0;
    /// Mass of valid passwords outside the search space (too long, or outside
    /// the explicit universe).
    std::uint64_t out_of_space_mass = 0;
    /// Set when the search space is an explicit bin universe instead of every
    /// signature up to l_max.
    std::optional<std::vector<BinSignature>> universe;

    /// Partition id for a password: its signature when listed, kUnutilizedId
    /// when inside the search space but unobserved, nullopt when outside.
    std::optional<std::string> locate(std::string_view password) const;
    bool in_space(const std::string& signature) const;
};

/// Search space = all signatures of length 1..l_max.
BinModel build_bin_model(const SignatureTally& tally, int l_max);
BinModel build_bin_model(const Corpus& corpus, int l_max);

/// Search space = the given bins (countermeasure experiments, where the system
/// assigns users only to bins of one universe).
BinModel build_bin_model_over(const SignatureTally& tally, std::vector<BinSignature> universe);

enum class ManglingKind {
    identity,          ///< W
    append_literal,    ///< W followed by a fixed string: W1, W!, W12
    append_digits,     ///< every d-digit suffix
    append_symbols,    ///< every s-symbol suffix
    capitalize_first,
    leet_map,
};

struct ManglingRule
{
    std::string id;
    ManglingKind kind = ManglingKind::identity;
    std::string literal;  ///< append_literal only
    unsigned width = 0;   ///< append_digits / append_symbols
    Rational weight = 0;

    /// Accepts "identity" or "W", "W<suffix>" / "append:<suffix>",
    /// "append-digits(d)", "append-symbol(s)", "capitalize-first", "leet-map".
    static ManglingRule parse(std::string_view text, Rational weight);

    /// Candidates generated per dictionary word.
    BigInt multiplicity() const;
};

/// One symbolic partition per rule with capacity |dictionary| * multiplicity
/// and count = the rule weight. Weights are scaled by the least common
/// denominator so counts stay integral; only ratios matter for ordering.
/// Throws InvalidModel on an empty dictionary or negative weights.
PartitionModel build_mangling_model(const std::vector<std::string>& dictionary,
                                    const std::vector<ManglingRule>& rules);

struct UnitPartition
{
    std::string password;
    std::uint64_t count = 0;
};

/// Id of the unit partition holding exactly one password.
std::string unit_id(std::string_view password);

/// Unit partitions for the top-k training passwords followed by bins for the
/// remaining mass.
///
/// The unit passwords are removed from the residual bins entirely: their
/// counts leave the bin counts and their single slots leave the bin
/// capacities, so every partition of `combined` stays disjoint and the total
/// capacity is still the whole search space.
struct HybridModel
{
    std::vector<UnitPartition> units;
    BinModel residual;
    PartitionModel combined;

    std::optional<std::string> locate(std::string_view password) const;

private:
    std::unordered_map<std::string, std::size_t> unit_index_;
    friend HybridModel build_hybrid_model(const Corpus&, std::size_t, int);
};

/// Units are the k most frequent passwords of length <= l_max (ties broken
/// lexicographically).
HybridModel build_hybrid_model(const Corpus& corpus, std::size_t k, int l_max);

}  // namespace binwise
