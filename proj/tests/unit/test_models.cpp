#include "binwise/errors.hpp"
#include "binwise/models.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace binwise;

namespace {

Corpus corpus_of(std::initializer_list<std::pair<const char*, std::uint64_t>> entries)
{
    Corpus c;
    for (const auto& [pw, n] : entries)
        c.add(pw, n);
    return c;
}

}  // namespace

TEST(BinModel, OnePartitionPerSignature)
{
    const BinModel m = build_bin_model(corpus_of({{"abc12", 3}, {"Abc12", 1}}), 8);
    ASSERT_EQ(m.model.size(), 2u);
    EXPECT_EQ(m.model.find("LLLDD")->count, 3);
    EXPECT_EQ(m.model.find("ULLDD")->count, 1);
    EXPECT_EQ(m.model.find("LLLDD")->capacity, pow_int(26, 3) * 100);
    EXPECT_EQ(m.model.total_capacity(), search_space_size(8).exact);
}

TEST(BinModel, EmptyCorpus)
{
    const BinModel m = build_bin_model(Corpus{}, 4);
    EXPECT_EQ(m.model.size(), 0u);
    EXPECT_EQ(m.model.total_count(), 0);
    EXPECT_EQ(m.model.unutilized_capacity(), search_space_size(4).exact);
}

TEST(BinModel, LongPasswordsAreOutOfSpace)
{
    const BinModel m = build_bin_model(corpus_of({{"abcdef", 2}, {"abc", 1}}), 4);
    EXPECT_EQ(m.out_of_space_mass, 2u);
    EXPECT_EQ(m.model.total_count(), 1);
    EXPECT_EQ(m.locate("abcdef"), std::nullopt);
    EXPECT_EQ(m.locate("xyz"), "LLL");
    EXPECT_EQ(m.locate("XYZ"), std::string(kUnutilizedId));
}

TEST(BinModel, ExplicitUniverse)
{
    SignatureTally t;
    t.add("ab", 3);
    t.add("a1", 1);
    const BinModel m = build_bin_model_over(t, {BinSignature::parse("LL"), BinSignature::parse("UU")});
    EXPECT_EQ(m.model.total_capacity(), 2 * 676);
    EXPECT_EQ(m.out_of_space_mass, 1u);
    EXPECT_EQ(m.locate("AB"), std::string(kUnutilizedId));
    EXPECT_EQ(m.locate("a1"), std::nullopt);
    EXPECT_THROW(build_bin_model_over(t, {}), InvalidModel);
}

TEST(Mangling, EqualMultiplicityKeepsOrders)
{
    std::vector<ManglingRule> rules = {
        ManglingRule::parse("W", Rational(2, 5)), ManglingRule::parse("W1", Rational(3, 10)),
        ManglingRule::parse("W!", Rational(1, 5)), ManglingRule::parse("W12", Rational(1, 10))};
    const PartitionModel m = build_mangling_model({"dog", "cat", "owl", "emu"}, rules);
    ASSERT_EQ(m.size(), 4u);
    for (const auto& p : m.partitions())
        EXPECT_EQ(p.capacity, 4);
    EXPECT_EQ(m.find("W")->count, 4);
    EXPECT_EQ(m.find("W12")->count, 1);
    EXPECT_EQ(density_order(m), probability_order(m));
}

TEST(Mangling, MultiplicityChangesOrder)
{
    std::vector<ManglingRule> rules = {ManglingRule::parse("append-digits(2)", 1),
                                       ManglingRule::parse("identity", 1)};
    const PartitionModel m = build_mangling_model({"dog", "cat"}, rules);
    EXPECT_EQ(m.find("append-digits(2)")->capacity, 200);
    EXPECT_EQ(m.partitions()[density_order(m)[0]].id, "identity");
    EXPECT_EQ(m.partitions()[probability_order(m)[0]].id, "append-digits(2)");
    EXPECT_EQ(ManglingRule::parse("append-symbol(2)", 1).multiplicity(), 1089);
    EXPECT_EQ(ManglingRule::parse("capitalize-first", 1).multiplicity(), 1);
    EXPECT_EQ(ManglingRule::parse("append:2024", 1).literal, "2024");
}

TEST(Mangling, Errors)
{
    EXPECT_THROW(build_mangling_model({}, {ManglingRule::parse("W", 1)}), InvalidModel);
    EXPECT_THROW(build_mangling_model({"a"}, {ManglingRule::parse("W", -1)}), InvalidModel);
    EXPECT_THROW(ManglingRule::parse("reverse", 1), std::invalid_argument);
    EXPECT_THROW(ManglingRule::parse("append-digits(x)", 1), std::invalid_argument);
    const PartitionModel single = build_mangling_model({"a"}, {ManglingRule::parse("W", 1)});
    EXPECT_EQ(single.size(), 1u);
}

TEST(Hybrid, TopPasswordBecomesUnit)
{
    const Corpus c = corpus_of({{"123456", 290729}, {"654321", 10}, {"abc", 5}});
    const HybridModel h = build_hybrid_model(c, 1, 8);
    ASSERT_EQ(h.units.size(), 1u);
    EXPECT_EQ(h.units[0].password, "123456");
    const Partition* unit = h.combined.find(unit_id("123456"));
    ASSERT_NE(unit, nullptr);
    EXPECT_EQ(unit->capacity, 1);
    EXPECT_EQ(unit->count, 290729);
    // the unit slot leaves the DDDDDD bin
    EXPECT_EQ(h.combined.find("DDDDDD")->capacity, 999999);
    EXPECT_EQ(h.combined.find("DDDDDD")->count, 10);
    EXPECT_EQ(h.combined.total_count(), c.total());
    EXPECT_EQ(h.combined.total_capacity(), search_space_size(8).exact);
    EXPECT_EQ(h.locate("123456"), unit_id("123456"));
    EXPECT_EQ(h.locate("111111"), "DDDDDD");
}

TEST(Hybrid, ZeroAndAllUnits)
{
    const Corpus c = corpus_of({{"aa", 3}, {"bb", 2}, {"C1", 1}});
    const HybridModel none = build_hybrid_model(c, 0, 8);
    EXPECT_TRUE(none.units.empty());
    EXPECT_EQ(none.combined.size(), build_bin_model(c, 8).model.size());

    const HybridModel all = build_hybrid_model(c, 10, 8);
    EXPECT_EQ(all.units.size(), 3u);
    EXPECT_EQ(all.residual.model.size(), 0u);
    EXPECT_EQ(all.combined.size(), 3u);
    EXPECT_EQ(all.combined.total_count(), 6);
}

TEST(Hybrid, CapacitiesStayDisjoint)
{
    const Corpus c = corpus_of({{"ab", 9}, {"cd", 5}, {"ef", 1}, {"A1", 2}});
    const HybridModel h = build_hybrid_model(c, 2, 3);
    BigInt listed = 0;
    for (const auto& p : h.combined.partitions())
        listed += p.capacity;
    // two unit slots carved out of LL
    EXPECT_EQ(h.combined.find("LL")->capacity, 676 - 2);
    EXPECT_LE(listed, h.combined.total_capacity());
}
