#pragma once

#include "binwise/numeric.hpp"

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace binwise {

/// Template with literal text around a single alpha slot of length m.
struct PreTerminal
{
    std::string prefix;
    std::string suffix;
    unsigned slot_length = 0;
    std::uint64_t count = 0;

    /// Accepts "{L6}$1" or the bare form "L6$1" / "$L4 12" (a single space
    /// may end the slot digits and is dropped).
    static PreTerminal parse(std::string_view text, std::uint64_t count);

    /// prefix + "L" + m + suffix, e.g. "$L412".
    std::string id() const;
    std::string expand(std::string_view word) const { return prefix + std::string(word) + suffix; }
};

using LengthDictionary = std::map<unsigned, std::vector<std::string>>;

struct GrammarInstance
{
    std::vector<PreTerminal> preterminals;
    LengthDictionary dictionaries;
};

/// {"preterminals":[{"template":"{L4}12","count":2},...],"dictionaries":{"4":[...]}}
GrammarInstance parse_grammar_instance(std::string_view json_text);

struct GuessBlock
{
    std::string id;
    std::uint64_t count = 0;
    std::size_t size = 0;  ///< |W_m|
    Rational density;      ///< count / size
    std::vector<std::string> guesses;
};

/// Blocks by decreasing count (tie: id), each fully expanded.
/// Throws InvalidModel when a referenced length has no dictionary.
std::vector<GuessBlock> order_by_preterminal_probability(const std::vector<PreTerminal>& preterminals,
                                                         const LengthDictionary& dictionaries);

/// Blocks by decreasing count / |W_m| (tie: larger count, then id).
std::vector<GuessBlock> order_by_preterminal_density(const std::vector<PreTerminal>& preterminals,
                                                     const LengthDictionary& dictionaries);

/// Sorts every terminal by its own probability and checks that the resulting
/// block sequence matches the density order, runs of equal density being
/// compared as sets.
bool equivalence_check(const std::vector<PreTerminal>& preterminals,
                       const LengthDictionary& dictionaries);

/// One "# id count=c size=s density=n/d" header line per block, then its guesses.
void write_guess_list(std::ostream& out, const std::vector<GuessBlock>& blocks);

}  // namespace binwise
