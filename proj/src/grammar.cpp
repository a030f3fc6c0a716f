#include "binwise/grammar.hpp"

#include "binwise/errors.hpp"
#include "binwise/partition.hpp"

#include <json.hpp>

#include <algorithm>
#include <set>

namespace binwise {

namespace {

bool is_digit(char c)
{
    return c >= '0' && c <= '9';
}

unsigned parse_slot_length(std::string_view digits, std::string_view text)
{
    if (digits.empty() || digits.size() > 4)
        throw InvalidModel("bad slot length in template '" + std::string(text) + "'");
    unsigned m = 0;
    for (const char c : digits)
        m = m * 10 + static_cast<unsigned>(c - '0');
    if (m == 0)
        throw InvalidModel("slot length must be at least 1 in '" + std::string(text) + "'");
    return m;
}

const std::vector<std::string>& words_for(const PreTerminal& pt, const LengthDictionary& dicts)
{
    const auto it = dicts.find(pt.slot_length);
    if (it == dicts.end() || it->second.empty())
        throw InvalidModel("no dictionary for length " + std::to_string(pt.slot_length)
                           + " (needed by " + pt.id() + ")");
    for (const std::string& w : it->second)
        if (w.size() != pt.slot_length)
            throw InvalidModel("dictionary word '" + w + "' is not of length "
                               + std::to_string(pt.slot_length));
    return it->second;
}

PartitionModel as_model(const std::vector<PreTerminal>& preterminals, const LengthDictionary& dicts)
{
    std::vector<Partition> parts;
    parts.reserve(preterminals.size());
    for (const PreTerminal& pt : preterminals) {
        const auto size = static_cast<unsigned long>(words_for(pt, dicts).size());
        parts.push_back({pt.id(), BigInt(size), BigInt(static_cast<unsigned long>(pt.count))});
    }
    return PartitionModel(std::move(parts));
}

std::vector<GuessBlock> expand_in_order(const std::vector<PreTerminal>& preterminals,
                                        const LengthDictionary& dicts,
                                        const std::vector<std::size_t>& order)
{
    std::vector<GuessBlock> blocks;
    blocks.reserve(order.size());
    for (const std::size_t i : order) {
        const PreTerminal& pt = preterminals[i];
        const auto& words = words_for(pt, dicts);
        GuessBlock block;
        block.id = pt.id();
        block.count = pt.count;
        block.size = words.size();
        block.density = Rational(BigInt(static_cast<unsigned long>(pt.count)),
                                 BigInt(static_cast<unsigned long>(words.size())));
        block.density.canonicalize();
        block.guesses.reserve(words.size());
        for (const std::string& w : words)
            block.guesses.push_back(pt.expand(w));
        blocks.push_back(std::move(block));
    }
    return blocks;
}

}  // namespace

PreTerminal PreTerminal::parse(std::string_view text, std::uint64_t count)
{
    PreTerminal pt;
    pt.count = count;
    if (const auto open = text.find('{'); open != std::string_view::npos) {
        const auto close = text.find('}', open);
        if (close == std::string_view::npos || close < open + 3 || text[open + 1] != 'L')
            throw InvalidModel("bad slot in template '" + std::string(text) + "'");
        pt.slot_length = parse_slot_length(text.substr(open + 2, close - open - 2), text);
        pt.prefix = std::string(text.substr(0, open));
        pt.suffix = std::string(text.substr(close + 1));
        if (pt.prefix.find_first_of("{}") != std::string::npos
            || pt.suffix.find_first_of("{}") != std::string::npos)
            throw InvalidModel("template '" + std::string(text) + "' has more than one slot");
        return pt;
    }

    std::size_t slot = std::string_view::npos;
    for (std::size_t i = 0; i + 1 < text.size(); ++i)
        if (text[i] == 'L' && is_digit(text[i + 1])) {
            slot = i;
            break;
        }
    if (slot == std::string_view::npos)
        throw InvalidModel("template '" + std::string(text) + "' has no alpha slot");
    std::size_t end = slot + 1;
    while (end < text.size() && is_digit(text[end]))
        ++end;
    pt.slot_length = parse_slot_length(text.substr(slot + 1, end - slot - 1), text);
    pt.prefix = std::string(text.substr(0, slot));
    if (end < text.size() && text[end] == ' ')
        ++end;
    pt.suffix = std::string(text.substr(end));
    return pt;
}

std::string PreTerminal::id() const
{
    return prefix + "L" + std::to_string(slot_length) + suffix;
}

GrammarInstance parse_grammar_instance(std::string_view json_text)
{
    using nlohmann::json;
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw InvalidModel(std::string("grammar instance: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("preterminals") || !doc.contains("dictionaries"))
        throw InvalidModel("grammar instance needs 'preterminals' and 'dictionaries'");

    GrammarInstance instance;
    std::set<std::string> seen;
    for (const json& entry : doc.at("preterminals")) {
        if (!entry.is_object() || !entry.contains("template") || !entry.contains("count")
            || !entry.at("template").is_string() || !entry.at("count").is_number_unsigned())
            throw InvalidModel("each pre-terminal needs a string 'template' and a non-negative 'count'");
        PreTerminal pt = PreTerminal::parse(entry.at("template").get<std::string>(),
                                            entry.at("count").get<std::uint64_t>());
        if (!seen.insert(pt.id()).second)
            throw InvalidModel("duplicate pre-terminal '" + pt.id() + "'");
        instance.preterminals.push_back(std::move(pt));
    }
    const json& dicts = doc.at("dictionaries");
    if (!dicts.is_object())
        throw InvalidModel("'dictionaries' must map lengths to word lists");
    for (const auto& [key, words] : dicts.items()) {
        if (key.empty() || !std::all_of(key.begin(), key.end(), is_digit))
            throw InvalidModel("dictionary key '" + key + "' is not a length");
        const unsigned m = parse_slot_length(key, key);
        auto& list = instance.dictionaries[m];
        for (const json& w : words) {
            if (!w.is_string())
                throw InvalidModel("dictionary words must be strings");
            list.push_back(w.get<std::string>());
        }
    }
    return instance;
}

std::vector<GuessBlock> order_by_preterminal_probability(const std::vector<PreTerminal>& preterminals,
                                                         const LengthDictionary& dictionaries)
{
    return expand_in_order(preterminals, dictionaries,
                           probability_order(as_model(preterminals, dictionaries)));
}

std::vector<GuessBlock> order_by_preterminal_density(const std::vector<PreTerminal>& preterminals,
                                                     const LengthDictionary& dictionaries)
{
    return expand_in_order(preterminals, dictionaries,
                           density_order(as_model(preterminals, dictionaries)));
}

bool equivalence_check(const std::vector<PreTerminal>& preterminals,
                       const LengthDictionary& dictionaries)
{
    const auto blocks = order_by_preterminal_density(preterminals, dictionaries);

    BigInt phi = 0;
    for (const PreTerminal& pt : preterminals)
        phi += static_cast<unsigned long>(pt.count);
    if (phi == 0)
        phi = 1;

    struct Terminal
    {
        Rational probability;
        std::size_t preterminal;
    };
    std::vector<Terminal> terminals;
    for (std::size_t i = 0; i < preterminals.size(); ++i) {
        const auto& words = words_for(preterminals[i], dictionaries);
        Rational p(BigInt(static_cast<unsigned long>(preterminals[i].count)), phi);
        p.canonicalize();
        p /= Rational(BigInt(static_cast<unsigned long>(words.size())));
        for (std::size_t w = 0; w < words.size(); ++w)
            terminals.push_back({p, i});
    }
    std::stable_sort(terminals.begin(), terminals.end(),
                     [](const Terminal& a, const Terminal& b) { return a.probability > b.probability; });

    // Runs of equal terminal probability, as sets of pre-terminal ids.
    std::vector<std::set<std::string>> terminal_runs;
    for (std::size_t t = 0; t < terminals.size(); ++t) {
        if (t == 0 || terminals[t].probability != terminals[t - 1].probability)
            terminal_runs.emplace_back();
        terminal_runs.back().insert(preterminals[terminals[t].preterminal].id());
    }

    std::vector<std::set<std::string>> block_runs;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        if (b == 0 || blocks[b].density != blocks[b - 1].density)
            block_runs.emplace_back();
        block_runs.back().insert(blocks[b].id);
    }
    return terminal_runs == block_runs;
}

void write_guess_list(std::ostream& out, const std::vector<GuessBlock>& blocks)
{
    for (const GuessBlock& block : blocks) {
        out << "# " << block.id << " count=" << block.count << " size=" << block.size
            << " density=" << to_fraction(block.density) << '\n';
        for (const std::string& g : block.guesses)
            out << g << '\n';
    }
}

}  // namespace binwise
