#include "binwise/errors.hpp"
#include "binwise/grammar.hpp"
#include "binwise/partition.hpp"
#include "binwise/random.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace binwise;

namespace {

const char* kToy = R"({
  "preterminals": [
    {"template": "{L6}$1", "count": 5},
    {"template": "{L5}!", "count": 3},
    {"template": "${L4}12", "count": 2}
  ],
  "dictionaries": {
    "6": ["monkey", "dragon", "shadow", "master", "killer", "summer", "hunter", "flower"],
    "5": ["tiger", "apple", "lucky", "happy"],
    "4": ["love", "deer"]
  }
})";

std::vector<std::string> ids(const std::vector<GuessBlock>& blocks)
{
    std::vector<std::string> out;
    for (const auto& b : blocks)
        out.push_back(b.id);
    return out;
}

}  // namespace

TEST(PreTerminal, Parse)
{
    const PreTerminal a = PreTerminal::parse("{L6}$1", 5);
    EXPECT_EQ(a.prefix, "");
    EXPECT_EQ(a.suffix, "$1");
    EXPECT_EQ(a.slot_length, 6u);
    EXPECT_EQ(a.id(), "L6$1");
    EXPECT_EQ(a.expand("monkey"), "monkey$1");

    const PreTerminal b = PreTerminal::parse("$L4 12", 2);
    EXPECT_EQ(b.id(), "$L412");
    EXPECT_EQ(b.expand("deer"), "$deer12");
    EXPECT_EQ(PreTerminal::parse("${L4}12", 2).id(), "$L412");
    EXPECT_EQ(PreTerminal::parse("L12x", 1).slot_length, 12u);

    EXPECT_THROW(PreTerminal::parse("abc", 1), InvalidModel);
    EXPECT_THROW(PreTerminal::parse("{L0}", 1), InvalidModel);
    EXPECT_THROW(PreTerminal::parse("{X4}", 1), InvalidModel);
    EXPECT_THROW(PreTerminal::parse("{L4}{L3}", 1), InvalidModel);
}

TEST(Grammar, ToyOrders)
{
    const GrammarInstance g = parse_grammar_instance(kToy);
    const auto dens = order_by_preterminal_density(g.preterminals, g.dictionaries);
    EXPECT_EQ(ids(dens), (std::vector<std::string>{"$L412", "L5!", "L6$1"}));
    EXPECT_EQ(dens[0].density, 1);
    EXPECT_EQ(dens[1].density, Rational(3, 4));
    EXPECT_EQ(dens[2].density, Rational(5, 8));

    const auto prob = order_by_preterminal_probability(g.preterminals, g.dictionaries);
    EXPECT_EQ(ids(prob), (std::vector<std::string>{"L6$1", "L5!", "$L412"}));
    EXPECT_EQ(prob.front().guesses.front(), "monkey$1");
    EXPECT_EQ(prob.back().guesses.back(), "$deer12");
    EXPECT_EQ(dens.front().guesses.front(), "$love12");
    EXPECT_TRUE(equivalence_check(g.preterminals, g.dictionaries));
}

TEST(Grammar, GuessList)
{
    const GrammarInstance g = parse_grammar_instance(kToy);
    std::ostringstream out;
    write_guess_list(out, order_by_preterminal_density(g.preterminals, g.dictionaries));
    const std::string s = out.str();
    EXPECT_EQ(s.substr(0, s.find('\n')), "# $L412 count=2 size=2 density=1");
    EXPECT_NE(s.find("\n$love12\n$deer12\n# L5! count=3 size=4 density=3/4\ntiger!\n"), std::string::npos);
}

TEST(Grammar, AgreesWithPartitionCore)
{
    const GrammarInstance g = parse_grammar_instance(kToy);
    std::vector<Partition> parts;
    for (const auto& pt : g.preterminals)
        parts.push_back({pt.id(), BigInt(static_cast<unsigned long>(g.dictionaries.at(pt.slot_length).size())),
                         BigInt(static_cast<unsigned long>(pt.count))});
    const PartitionModel m(parts);
    const auto dens = order_by_preterminal_density(g.preterminals, g.dictionaries);
    const auto order = density_order(m);
    for (std::size_t i = 0; i < order.size(); ++i)
        EXPECT_EQ(dens[i].id, m.partitions()[order[i]].id);
}

TEST(Grammar, EquivalenceOnRandomInstances)
{
    Rng rng(71);
    for (int trial = 0; trial < 200; ++trial) {
        LengthDictionary dicts;
        for (unsigned m = 1; m <= 4; ++m) {
            const std::uint64_t words = 1 + rng.below(6);
            for (std::uint64_t w = 0; w < words; ++w) {
                std::string word;
                for (unsigned k = 0; k < m; ++k)
                    word.push_back(static_cast<char>('a' + rng.below(26)));
                dicts[m].push_back(word);
            }
        }
        std::vector<PreTerminal> pts;
        const std::uint64_t n = 1 + rng.below(8);
        for (std::uint64_t i = 0; i < n; ++i) {
            PreTerminal pt;
            pt.slot_length = 1 + static_cast<unsigned>(rng.below(4));
            pt.suffix = std::to_string(i);
            pt.count = rng.below(7);
            pts.push_back(pt);
        }
        ASSERT_TRUE(equivalence_check(pts, dicts)) << "trial " << trial;

        // block guesses are non-increasing in per-guess probability
        const auto blocks = order_by_preterminal_density(pts, dicts);
        for (std::size_t b = 1; b < blocks.size(); ++b)
            ASSERT_GE(blocks[b - 1].density, blocks[b].density);
    }
}

TEST(Grammar, Errors)
{
    EXPECT_THROW(parse_grammar_instance("{"), InvalidModel);
    EXPECT_THROW(parse_grammar_instance(R"({"preterminals":[]})"), InvalidModel);
    EXPECT_THROW(parse_grammar_instance(R"({"preterminals":[{"template":"{L2}","count":-1}],"dictionaries":{}})"),
                 InvalidModel);
    EXPECT_THROW(parse_grammar_instance(
                     R"({"preterminals":[{"template":"{L2}","count":1},{"template":"L2","count":2}],"dictionaries":{}})"),
                 InvalidModel);
    EXPECT_THROW(parse_grammar_instance(R"({"preterminals":[],"dictionaries":{"x":[]}})"), InvalidModel);

    const GrammarInstance missing = parse_grammar_instance(
        R"({"preterminals":[{"template":"{L3}","count":1}],"dictionaries":{"2":["ab"]}})");
    EXPECT_THROW(order_by_preterminal_density(missing.preterminals, missing.dictionaries), InvalidModel);
    const GrammarInstance wrong = parse_grammar_instance(
        R"({"preterminals":[{"template":"{L2}","count":1}],"dictionaries":{"2":["abc"]}})");
    EXPECT_THROW(order_by_preterminal_probability(wrong.preterminals, wrong.dictionaries), InvalidModel);
}
