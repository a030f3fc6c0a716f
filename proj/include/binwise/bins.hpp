#pragma once

#include "binwise/numeric.hpp"

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace binwise {

class Rng;

/// Character classes of printable ASCII: lowercase, uppercase, digit, symbol.
enum class CharClass : std::uint8_t { L = 0, U = 1, D = 2, S = 3 };

inline constexpr std::array<CharClass, 4> kAllClasses{CharClass::L, CharClass::U, CharClass::D,
                                                      CharClass::S};
inline constexpr std::array<unsigned, 4> kClassSizes{26, 26, 10, 33};
/// All printable ASCII, codes 32..126. S holds the 33 non-alphanumerics
/// including the space character.
inline constexpr unsigned kAlphabetSize = 95;

constexpr unsigned class_size(CharClass c) { return kClassSizes[static_cast<std::size_t>(c)]; }
char class_symbol(CharClass c);
std::optional<CharClass> class_from_symbol(char symbol);
/// Class of a printable ASCII character, nullopt for anything else.
std::optional<CharClass> class_of(char c);

/// A bin: one character class per password position, written one symbol per
/// position ("USLDDSULL").
class BinSignature
{
public:
    BinSignature() = default;
    explicit BinSignature(const std::vector<CharClass>& classes);

    /// Parses the canonical text form. Throws std::invalid_argument.
    static BinSignature parse(std::string_view text);

    const std::string& str() const noexcept { return symbols_; }
    std::size_t length() const noexcept { return symbols_.size(); }
    CharClass at(std::size_t i) const;
    /// Occurrences of each class, indexed like kAllClasses.
    std::array<unsigned, 4> class_counts() const;

    friend BinSignature operator+(const BinSignature& a, const BinSignature& b);
    friend auto operator<=>(const BinSignature&, const BinSignature&) = default;

private:
    std::string symbols_;
};

/// Index of the first character outside printable ASCII, if any.
std::optional<std::size_t> first_invalid_char(std::string_view password);

/// Throws ClassificationError for empty input or non-printable characters.
BinSignature classify(std::string_view password);

/// Number of passwords the bin represents: the product of its class sizes.
BigInt capacity(const BinSignature& signature);

struct SearchSpaceSize
{
    BigInt exact;   ///< sum of 95^l for l = 1..l_max
    BigInt approx;  ///< 95^l_max
};

SearchSpaceSize search_space_size(int l_max);

inline constexpr int kCapacitySumMaxLength = 12;

/// Enumerates all 4^l signatures of length l and sums their capacities.
/// Throws InstanceTooLarge for l > 12.
BigInt capacity_sum_check(int length);

/// One quantified class term. `max` empty means unbounded.
struct PatternTerm
{
    CharClass cls;
    unsigned min;
    std::optional<unsigned> max;

    friend bool operator==(const PatternTerm&, const PatternTerm&) = default;
};

/// Whole-signature pattern over L, U, D, S.
///
/// Accepted syntax per term: a class symbol followed by an optional `^` or `_`
/// and a quantifier: `+`, `*`, `?`, a count (`U1`, `L12`), `{i}`, `{i,}`,
/// `{i,j}` or `[i,j]`. No quantifier means exactly one.
class BinPattern
{
public:
    static inline constexpr std::size_t kMaxTerms = 32;

    BinPattern() = default;
    explicit BinPattern(std::vector<PatternTerm> terms);

    const std::vector<PatternTerm>& terms() const noexcept { return terms_; }
    /// Canonical form, e.g. "U{1,1}L{1,}D{1,}".
    std::string str() const;
    bool matches(const BinSignature& signature) const;

    friend bool operator==(const BinPattern&, const BinPattern&) = default;

private:
    std::vector<PatternTerm> terms_;
};

/// Throws PatternSyntaxError with the offending position.
BinPattern parse_pattern(std::string_view text);
bool matches(const BinPattern& pattern, const BinSignature& signature);

/// Per-class occurrence bounds.
struct ClassBounds
{
    unsigned min = 0;
    std::optional<unsigned> max;
};

/// Filter for bin enumeration: an optional pattern plus per-class count bounds.
///
/// Text form is whitespace separated clauses: `any`, a pattern, or a class
/// bound `L=6`, `L=2..4`, `L<=4`, `L>=2`. "L=6" at length 10 selects the bins
/// with exactly six lowercase positions and U/D/S elsewhere.
struct BinConstraint
{
    std::optional<BinPattern> pattern;
    std::array<ClassBounds, 4> bounds{};

    static BinConstraint parse(std::string_view text);
    bool admits(const BinSignature& signature) const;
};

inline constexpr std::size_t kEnumerationLimit = 1'000'000;

/// All length-l signatures admitted by the constraint, in lexicographic order
/// of their text form. Throws InstanceTooLarge past `limit` results.
std::vector<BinSignature> enumerate_constrained_bins(int length, const BinConstraint& constraint,
                                                     std::size_t limit = kEnumerationLimit);

/// Draws a length-l signature with probability capacity / 95^l: each position
/// independently picks a class with probability size / 95.
BinSignature sample_bin(int length, Rng& rng);

/// A random password inside the bin, each position uniform over its class.
std::string sample_password(const BinSignature& signature, Rng& rng);

}  // namespace binwise
