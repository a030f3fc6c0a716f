#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <istream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace binwise {

/// raw: one password per line, repeats add multiplicity.
/// freq: "count<TAB>password" with a positive decimal count.
enum class CorpusFormat { raw, freq };

CorpusFormat parse_corpus_format(std::string_view name);

/// Lines rejected during ingestion. `*_mass` fields weight each line by its
/// multiplicity (1 for raw lines).
struct SkipStats
{
    std::uint64_t empty_lines = 0;
    std::uint64_t invalid_char_lines = 0;
    std::uint64_t invalid_char_mass = 0;
    std::uint64_t malformed_lines = 0;

    std::uint64_t total_lines() const { return empty_lines + invalid_char_lines + malformed_lines; }
    void merge(const SkipStats& other);
};

/// Parses one line (without its terminator; a trailing '\r' is ignored).
/// Calls `sink(password, count)` for an accepted record, otherwise bumps the
/// matching skip counter.
void parse_line(std::string_view line, CorpusFormat format, SkipStats& skipped,
                const std::function<void(std::string_view, std::uint64_t)>& sink);

/// Streams every record of `in` through `sink`.
void for_each_record(std::istream& in, CorpusFormat format, SkipStats& skipped,
                     const std::function<void(std::string_view, std::uint64_t)>& sink);

/// In-memory multiset of valid passwords.
class Corpus
{
public:
    void add(std::string_view password, std::uint64_t count = 1);

    std::uint64_t total() const noexcept { return total_; }
    std::size_t distinct() const noexcept { return counts_.size(); }
    const std::unordered_map<std::string, std::uint64_t>& counts() const noexcept { return counts_; }
    std::uint64_t count_of(std::string_view password) const;

    /// Entries by decreasing count, ties in lexicographic order.
    std::vector<std::pair<std::string, std::uint64_t>> ranked() const;

    SkipStats& skipped() noexcept { return skipped_; }
    const SkipStats& skipped() const noexcept { return skipped_; }

private:
    std::unordered_map<std::string, std::uint64_t> counts_;
    std::uint64_t total_ = 0;
    SkipStats skipped_;
};

Corpus ingest(std::istream& in, CorpusFormat format);
/// Throws IoError when the file cannot be opened.
Corpus ingest_file(const std::filesystem::path& path, CorpusFormat format);

/// Per-signature totals of a corpus, the only state bin models need. Memory
/// grows with the number of distinct signatures, not with the corpus.
struct SignatureTally
{
    std::unordered_map<std::string, std::uint64_t> by_signature;
    std::uint64_t total = 0;
    SkipStats skipped;

    void add(std::string_view password, std::uint64_t count);
    /// Associative and commutative, so shards may merge in any order.
    void merge(const SignatureTally& other);
};

SignatureTally tally(const Corpus& corpus);

/// Streams a corpus file in `shards` byte ranges processed concurrently and
/// merges the per-shard tallies. Throws IoError when the file cannot be read.
SignatureTally tally_file(const std::filesystem::path& path, CorpusFormat format,
                          unsigned shards = 1);

/// Shard count from BINWISE_THREADS, defaulting to the hardware concurrency.
unsigned ingestion_shards_from_env();

}  // namespace binwise
