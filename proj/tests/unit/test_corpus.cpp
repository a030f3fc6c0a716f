#include "binwise/corpus.hpp"
#include "binwise/errors.hpp"
#include "binwise/random.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace binwise;

namespace {

Corpus from_text(const std::string& text, CorpusFormat format = CorpusFormat::raw)
{
    std::istringstream in(text);
    return ingest(in, format);
}

std::filesystem::path temp_file(const std::string& name, const std::string& content)
{
    const auto path = std::filesystem::temp_directory_path() / ("binwise_test_" + name);
    std::ofstream(path, std::ios::binary) << content;
    return path;
}

}  // namespace

TEST(Ingest, RawCounts)
{
    const Corpus c = from_text("abc\nabc\nxyz1\n");
    EXPECT_EQ(c.total(), 3u);
    EXPECT_EQ(c.distinct(), 2u);
    EXPECT_EQ(c.count_of("abc"), 2u);
}

TEST(Ingest, FreqCounts)
{
    const Corpus c = from_text("290729\t123456\n3\tpass word\r\n", CorpusFormat::freq);
    EXPECT_EQ(c.total(), 290732u);
    EXPECT_EQ(c.count_of("123456"), 290729u);
    EXPECT_EQ(c.count_of("pass word"), 3u);
}

TEST(Ingest, SkipsAndCounts)
{
    const Corpus raw = from_text("ok\n\nbad\x07\nfine\n");
    EXPECT_EQ(raw.total(), 2u);
    EXPECT_EQ(raw.skipped().empty_lines, 1u);
    EXPECT_EQ(raw.skipped().invalid_char_lines, 1u);
    EXPECT_EQ(raw.skipped().invalid_char_mass, 1u);

    const Corpus freq = from_text("x\tabc\n5\t\n0\tzero\n4\tcaf\xc3\xa9\nnotab\n2\tgood\n", CorpusFormat::freq);
    EXPECT_EQ(freq.total(), 2u);
    EXPECT_EQ(freq.skipped().malformed_lines, 3u);
    EXPECT_EQ(freq.skipped().empty_lines, 1u);
    EXPECT_EQ(freq.skipped().invalid_char_mass, 4u);
}

TEST(Ingest, MissingFile)
{
    EXPECT_THROW(ingest_file("/nonexistent/binwise/corpus.txt", CorpusFormat::raw), IoError);
    EXPECT_THROW(tally_file("/nonexistent/binwise/corpus.txt", CorpusFormat::raw, 2), IoError);
}

TEST(Corpus, RankedTiesLexicographic)
{
    const Corpus c = from_text("b\nb\na\nc\na\nz\n");
    const auto r = c.ranked();
    ASSERT_EQ(r.size(), 4u);
    EXPECT_EQ(r[0].first, "a");
    EXPECT_EQ(r[1].first, "b");
    EXPECT_EQ(r[2].first, "c");
    EXPECT_EQ(r[3].first, "z");
}

TEST(Tally, MergeIsAssociativeAndCommutative)
{
    SignatureTally a, b, c;
    a.add("abc", 2);
    b.add("Abc", 1);
    b.add("xyz", 4);
    c.add("12", 7);
    SignatureTally left = a;
    left.merge(b);
    left.merge(c);
    SignatureTally right = c;
    SignatureTally bc = b;
    bc.merge(a);
    right.merge(bc);
    EXPECT_EQ(left.by_signature, right.by_signature);
    EXPECT_EQ(left.total, right.total);
    EXPECT_EQ(left.by_signature.at("LLL"), 6u);
}

TEST(Tally, ShardedFileMatchesInMemory)
{
    Rng rng(31);
    std::ostringstream text;
    const char* alphabet = "abcXYZ019!@ ";
    for (int i = 0; i < 30000; ++i) {
        const std::uint64_t len = rng.below(10);
        for (std::uint64_t j = 0; j < len; ++j)
            text << alphabet[rng.below(12)];
        if (rng.below(50) == 0)
            text << '\x01';
        text << (rng.below(20) == 0 ? "\r\n" : "\n");
    }
    text << "lastline-without-newline";
    const auto path = temp_file("sharded.txt", text.str());

    std::istringstream in(text.str());
    const SignatureTally expected = tally(ingest(in, CorpusFormat::raw));
    for (const unsigned shards : {1u, 2u, 3u, 7u}) {
        const SignatureTally got = tally_file(path, CorpusFormat::raw, shards);
        EXPECT_EQ(got.by_signature, expected.by_signature) << shards;
        EXPECT_EQ(got.total, expected.total);
        EXPECT_EQ(got.skipped.empty_lines, expected.skipped.empty_lines);
        EXPECT_EQ(got.skipped.invalid_char_lines, expected.skipped.invalid_char_lines);
    }
    std::filesystem::remove(path);
}

TEST(Tally, ShardsFromEnvironment)
{
    setenv("BINWISE_THREADS", "3", 1);
    EXPECT_EQ(ingestion_shards_from_env(), 3u);
    setenv("BINWISE_THREADS", "junk", 1);
    EXPECT_GE(ingestion_shards_from_env(), 1u);
    unsetenv("BINWISE_THREADS");
}

TEST(Tally, ConservesMass)
{
    const Corpus c = from_text("abc\nabc\n\xff\nA1!\n");
    const SignatureTally t = tally(c);
    std::uint64_t sum = 0;
    for (const auto& [sig, n] : t.by_signature)
        sum += n;
    EXPECT_EQ(sum + t.skipped.invalid_char_mass, 4u);
}
