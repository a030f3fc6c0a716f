#include "binwise/bins.hpp"
#include "binwise/errors.hpp"
#include "binwise/random.hpp"

#include <gtest/gtest.h>

#include <functional>
#include <map>

using namespace binwise;

namespace {

std::vector<BinSignature> all_signatures(int length)
{
    std::vector<BinSignature> out;
    std::string s(static_cast<std::size_t>(length), 'L');
    const std::string classes = "DLSU";
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == s.size()) {
            out.push_back(BinSignature::parse(s));
            return;
        }
        for (const char c : classes) {
            s[i] = c;
            rec(i + 1);
        }
    };
    rec(0);
    return out;
}

// Plain recursive matcher without memoization, used as a reference.
bool naive_match(const std::vector<PatternTerm>& terms, std::size_t t, const std::string& sig, std::size_t i)
{
    if (t == terms.size())
        return i == sig.size();
    const PatternTerm& term = terms[t];
    const char symbol = class_symbol(term.cls);
    std::size_t run = 0;
    while (true) {
        if (run >= term.min && (!term.max || run <= *term.max) && naive_match(terms, t + 1, sig, i + run))
            return true;
        if (term.max && run >= *term.max)
            return false;
        if (i + run >= sig.size() || sig[i + run] != symbol)
            return false;
        ++run;
    }
}

std::string random_pattern_text(Rng& rng)
{
    static const char* classes = "LUDS";
    static const char* quantifiers[] = {"", "+", "*", "?", "1", "2", "{0,2}", "{1,3}", "{2,}", "[1,2]"};
    std::string text;
    const std::uint64_t terms = 1 + rng.below(4);
    for (std::uint64_t i = 0; i < terms; ++i) {
        text.push_back(classes[rng.below(4)]);
        text += quantifiers[rng.below(10)];
    }
    return text;
}

std::string random_signature_text(Rng& rng, std::size_t max_len)
{
    static const char* classes = "LUDS";
    std::string s;
    const std::uint64_t len = 1 + rng.below(max_len);
    for (std::uint64_t i = 0; i < len; ++i)
        s.push_back(classes[rng.below(4)]);
    return s;
}

}  // namespace

TEST(Classify, Examples)
{
    EXPECT_EQ(classify("D@c45&Mac").str(), "USLDDSULL");
    EXPECT_EQ(classify("password").str(), "LLLLLLLL");
    EXPECT_EQ(classify("I's12&Iah").str(), "USLDDSULL");
    EXPECT_EQ(classify("a b").str(), "LSL");
    EXPECT_EQ(classify("~").str(), "S");
}

TEST(Classify, RejectsControlAndNonAscii)
{
    try {
        classify("ab\x07" "c");
        FAIL() << "expected ClassificationError";
    } catch (const ClassificationError& e) {
        EXPECT_EQ(e.index(), 2u);
    }
    EXPECT_THROW(classify("caf\xc3\xa9"), ClassificationError);
    EXPECT_THROW(classify(""), ClassificationError);
    EXPECT_EQ(first_invalid_char("abc\x7f"), 3u);
    EXPECT_EQ(first_invalid_char("abc"), std::nullopt);
}

TEST(Signature, ParseAndConcat)
{
    EXPECT_THROW(BinSignature::parse("LX"), std::exception);
    EXPECT_THROW(BinSignature::parse(""), std::exception);
    const auto a = BinSignature::parse("LLD");
    const auto b = BinSignature::parse("SU");
    EXPECT_EQ((a + b).str(), "LLDSU");
    EXPECT_EQ(capacity(a + b), capacity(a) * capacity(b));
    EXPECT_EQ(a.class_counts(), (std::array<unsigned, 4>{2, 0, 1, 0}));
}

TEST(Capacity, Examples)
{
    EXPECT_EQ(capacity(BinSignature::parse("LLLLLLLL")), BigInt("208827064576"));
    EXPECT_EQ(capacity(BinSignature::parse("DDDDDD")), 1000000);
    EXPECT_EQ(capacity(BinSignature::parse("U")), 26);
    EXPECT_EQ(capacity(BinSignature::parse("S")), 33);
}

TEST(SearchSpace, Sizes)
{
    EXPECT_EQ(search_space_size(1).exact, 95);
    EXPECT_EQ(search_space_size(2).exact, 9120);
    EXPECT_NEAR(log2_of(search_space_size(10).approx), 65.7, 0.01);
    EXPECT_EQ(search_space_size(10).approx, pow_int(95, 10));
}

TEST(CapacitySum, MatchesPower)
{
    for (int l = 1; l <= 6; ++l)
        EXPECT_EQ(capacity_sum_check(l), pow_int(95, static_cast<unsigned>(l)));
    EXPECT_THROW(capacity_sum_check(13), InstanceTooLarge);
}

TEST(Pattern, Parse)
{
    EXPECT_EQ(parse_pattern("U1L+D+").str(), "U{1,1}L{1,}D{1,}");
    EXPECT_EQ(parse_pattern("L*S1L*").str(), "L{0,}S{1,1}L{0,}");
    EXPECT_EQ(parse_pattern("U1L7"), parse_pattern("U{1,1}L{7,7}"));
    EXPECT_EQ(parse_pattern("L^{2,3}D_2"), parse_pattern("L{2,3}D{2}"));
    EXPECT_EQ(parse_pattern("D[1,2]").str(), "D{1,2}");
    EXPECT_EQ(parse_pattern("L?").str(), "L{0,1}");
    EXPECT_EQ(parse_pattern("L").str(), "L{1,1}");
}

TEST(Pattern, Errors)
{
    try {
        parse_pattern("L{2,1}");
        FAIL();
    } catch (const PatternSyntaxError& e) {
        EXPECT_GE(e.position(), 1u);
    }
    EXPECT_THROW(parse_pattern(""), PatternSyntaxError);
    EXPECT_THROW(parse_pattern("X+"), PatternSyntaxError);
    EXPECT_THROW(parse_pattern("L{2"), PatternSyntaxError);
    EXPECT_THROW(parse_pattern("L++"), PatternSyntaxError);
}

TEST(Pattern, MatchExamples)
{
    EXPECT_TRUE(matches(parse_pattern("U1L+D+"), BinSignature::parse("ULLLLLDD")));
    EXPECT_FALSE(matches(parse_pattern("L*S1L*"), BinSignature::parse("LLLL")));
    EXPECT_TRUE(matches(parse_pattern("L*S1L*"), BinSignature::parse("LSL")));
    EXPECT_FALSE(matches(parse_pattern("L+"), BinSignature::parse("LLD")));
}

TEST(Pattern, LettersThenDigitsAtLengthEight)
{
    const BinPattern p = parse_pattern("L+D+");
    int hits = 0;
    for (const auto& sig : all_signatures(8))
        hits += p.matches(sig);
    EXPECT_EQ(hits, 7);
}

TEST(Pattern, AgreesWithNaiveMatcher)
{
    Rng rng(21);
    for (int i = 0; i < 4000; ++i) {
        const std::string text = random_pattern_text(rng);
        const BinPattern p = parse_pattern(text);
        const std::string sig = random_signature_text(rng, 8);
        ASSERT_EQ(p.matches(BinSignature::parse(sig)), naive_match(p.terms(), 0, sig, 0))
            << text << " vs " << sig;
    }
}

TEST(Constraint, ParseAndAdmit)
{
    const auto c = BinConstraint::parse("L=6");
    EXPECT_TRUE(c.admits(BinSignature::parse("LLLLLLDDSU")));
    EXPECT_FALSE(c.admits(BinSignature::parse("LLLLLDDDSU")));
    const auto r = BinConstraint::parse("L=2..3 D>=1");
    EXPECT_TRUE(r.admits(BinSignature::parse("LLD")));
    EXPECT_FALSE(r.admits(BinSignature::parse("LLL")));
    EXPECT_TRUE(BinConstraint::parse("any").admits(BinSignature::parse("SSS")));
    EXPECT_TRUE(BinConstraint::parse("L+D+ L<=3").admits(BinSignature::parse("LLLD")));
    EXPECT_FALSE(BinConstraint::parse("L+D+ L<=3").admits(BinSignature::parse("LLLLD")));
    EXPECT_THROW(BinConstraint::parse("L=x"), PatternSyntaxError);
}

TEST(Enumerate, Examples)
{
    EXPECT_EQ(enumerate_constrained_bins(10, BinConstraint::parse("L=6")).size(), 17010u);
    const auto two = enumerate_constrained_bins(2, BinConstraint::parse("any"));
    ASSERT_EQ(two.size(), 16u);
    EXPECT_EQ(two.front().str(), "DD");
    EXPECT_EQ(two.back().str(), "UU");
    EXPECT_TRUE(std::is_sorted(two.begin(), two.end(),
                               [](const auto& a, const auto& b) { return a.str() < b.str(); }));
    const auto digits = enumerate_constrained_bins(3, BinConstraint::parse("D+"));
    ASSERT_EQ(digits.size(), 1u);
    EXPECT_EQ(digits[0].str(), "DDD");
    EXPECT_THROW(enumerate_constrained_bins(11, BinConstraint::parse("any"), 1000), InstanceTooLarge);
}

TEST(Enumerate, AgreesWithFilter)
{
    Rng rng(22);
    for (int i = 0; i < 60; ++i) {
        const std::string text = random_pattern_text(rng);
        const BinConstraint c = BinConstraint::parse(text);
        const int len = 1 + static_cast<int>(rng.below(5));
        std::vector<std::string> expected;
        for (const auto& s : all_signatures(len))
            if (c.admits(s))
                expected.push_back(s.str());
        std::sort(expected.begin(), expected.end());
        std::vector<std::string> got;
        for (const auto& s : enumerate_constrained_bins(len, c))
            got.push_back(s.str());
        ASSERT_EQ(got, expected) << text << " length " << len;
    }
}

TEST(Enumerate, CapacitiesSumToPower)
{
    BigInt sum = 0;
    for (const auto& s : enumerate_constrained_bins(4, BinConstraint::parse("any")))
        sum += capacity(s);
    EXPECT_EQ(sum, pow_int(95, 4));
}

TEST(Sample, ClassFrequenciesChiSquare)
{
    Rng rng(23);
    std::array<double, 4> observed{};
    const int n = 100000;
    for (int i = 0; i < n; ++i)
        observed[static_cast<std::size_t>(sample_bin(1, rng).at(0))] += 1;
    double chi2 = 0;
    for (std::size_t k = 0; k < 4; ++k) {
        const double expected = n * kClassSizes[k] / 95.0;
        chi2 += (observed[k] - expected) * (observed[k] - expected) / expected;
    }
    // 3 degrees of freedom, p = 0.001
    EXPECT_LT(chi2, 16.27);
}

TEST(Sample, BinExpectationMatchesCapacity)
{
    Rng rng(24);
    std::map<std::string, int> counts;
    const int n = 200000;
    for (int i = 0; i < n; ++i)
        ++counts[sample_bin(2, rng).str()];
    double chi2 = 0;
    for (const auto& s : all_signatures(2)) {
        const double expected = n * capacity(s).get_d() / 9025.0;
        const double got = counts[s.str()];
        chi2 += (got - expected) * (got - expected) / expected;
    }
    // 15 degrees of freedom, p = 0.001
    EXPECT_LT(chi2, 37.70);
}

TEST(Sample, LengthAndReproducibility)
{
    Rng a(5), b(5);
    for (int i = 0; i < 50; ++i) {
        const auto s = sample_bin(10, a);
        EXPECT_EQ(s.length(), 10u);
        EXPECT_EQ(s, sample_bin(10, b));
    }
    Rng c(6);
    const auto sig = BinSignature::parse("USLDDSULL");
    for (int i = 0; i < 100; ++i)
        EXPECT_EQ(classify(sample_password(sig, c)), sig);
}
