#include "binwise/corpus.hpp"

#include "binwise/bins.hpp"
#include "binwise/errors.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <thread>

namespace binwise {

CorpusFormat parse_corpus_format(std::string_view name)
{
    if (name == "raw")
        return CorpusFormat::raw;
    if (name == "freq")
        return CorpusFormat::freq;
    throw std::invalid_argument("unknown corpus format '" + std::string(name) + "'");
}

void SkipStats::merge(const SkipStats& other)
{
    empty_lines += other.empty_lines;
    invalid_char_lines += other.invalid_char_lines;
    invalid_char_mass += other.invalid_char_mass;
    malformed_lines += other.malformed_lines;
}

void parse_line(std::string_view line, CorpusFormat format, SkipStats& skipped,
                const std::function<void(std::string_view, std::uint64_t)>& sink)
{
    if (!line.empty() && line.back() == '\r')
        line.remove_suffix(1);

    std::uint64_t count = 1;
    std::string_view password = line;
    if (format == CorpusFormat::freq) {
        const auto tab = line.find('\t');
        if (tab == std::string_view::npos || tab == 0) {
            ++skipped.malformed_lines;
            return;
        }
        std::uint64_t value = 0;
        for (const char c : line.substr(0, tab)) {
            if (c < '0' || c > '9'
                || value > (std::numeric_limits<std::uint64_t>::max() - 9) / 10) {
                ++skipped.malformed_lines;
                return;
            }
            value = value * 10 + static_cast<std::uint64_t>(c - '0');
        }
        if (value == 0) {
            ++skipped.malformed_lines;
            return;
        }
        count = value;
        password = line.substr(tab + 1);
    }

    if (password.empty()) {
        ++skipped.empty_lines;
        return;
    }
    if (first_invalid_char(password)) {
        ++skipped.invalid_char_lines;
        skipped.invalid_char_mass += count;
        return;
    }
    sink(password, count);
}

void for_each_record(std::istream& in, CorpusFormat format, SkipStats& skipped,
                     const std::function<void(std::string_view, std::uint64_t)>& sink)
{
    std::string line;
    while (std::getline(in, line))
        parse_line(line, format, skipped, sink);
}

void Corpus::add(std::string_view password, std::uint64_t count)
{
    if (count == 0)
        return;
    counts_[std::string(password)] += count;
    total_ += count;
}

std::uint64_t Corpus::count_of(std::string_view password) const
{
    const auto it = counts_.find(std::string(password));
    return it == counts_.end() ? 0 : it->second;
}

std::vector<std::pair<std::string, std::uint64_t>> Corpus::ranked() const
{
    std::vector<std::pair<std::string, std::uint64_t>> entries(counts_.begin(), counts_.end());
    std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second)
            return a.second > b.second;
        return a.first < b.first;
    });
    return entries;
}

Corpus ingest(std::istream& in, CorpusFormat format)
{
    Corpus corpus;
    for_each_record(in, format, corpus.skipped(),
                    [&](std::string_view pw, std::uint64_t count) { corpus.add(pw, count); });
    return corpus;
}

Corpus ingest_file(const std::filesystem::path& path, CorpusFormat format)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open corpus '" + path.string() + "'");
    Corpus corpus = ingest(in, format);
    if (in.bad())
        throw IoError("error while reading '" + path.string() + "'");
    return corpus;
}

void SignatureTally::add(std::string_view password, std::uint64_t count)
{
    std::string signature(password.size(), 'L');
    for (std::size_t i = 0; i < password.size(); ++i)
        signature[i] = class_symbol(*class_of(password[i]));
    by_signature[signature] += count;
    total += count;
}

void SignatureTally::merge(const SignatureTally& other)
{
    for (const auto& [sig, count] : other.by_signature)
        by_signature[sig] += count;
    total += other.total;
    skipped.merge(other.skipped);
}

SignatureTally tally(const Corpus& corpus)
{
    SignatureTally t;
    for (const auto& [pw, count] : corpus.counts())
        t.add(pw, count);
    t.skipped = corpus.skipped();
    return t;
}

namespace {

/// Processes the lines that start inside [begin, end).
SignatureTally tally_range(const std::filesystem::path& path, CorpusFormat format,
                           std::uint64_t begin, std::uint64_t end)
{
    SignatureTally shard;
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open corpus '" + path.string() + "'");

    std::uint64_t pos = begin;
    std::string line;
    if (begin > 0) {
        // A line starting exactly at `begin` belongs to this shard only when
        // the previous byte ends a line.
        in.seekg(static_cast<std::streamoff>(begin - 1));
        std::getline(in, line);
        pos = begin - 1 + line.size() + 1;
    }
    const auto sink = [&](std::string_view pw, std::uint64_t count) { shard.add(pw, count); };
    while (pos < end && std::getline(in, line)) {
        pos += line.size() + 1;
        parse_line(line, format, shard.skipped, sink);
    }
    if (in.bad())
        throw IoError("error while reading '" + path.string() + "'");
    return shard;
}

}  // namespace

SignatureTally tally_file(const std::filesystem::path& path, CorpusFormat format, unsigned shards)
{
    std::error_code ec;
    const auto size = std::filesystem::file_size(path, ec);
    if (ec)
        throw IoError("cannot open corpus '" + path.string() + "'");
    shards = std::max(1U, shards);
    if (size < (1U << 16))
        shards = 1;

    std::vector<SignatureTally> results(shards);
    std::vector<std::exception_ptr> errors(shards);
    {
        std::vector<std::jthread> workers;
        for (unsigned s = 0; s < shards; ++s) {
            const std::uint64_t begin = size * s / shards;
            const std::uint64_t end = size * (s + 1) / shards;
            workers.emplace_back([&, s, begin, end] {
                try {
                    results[s] = tally_range(path, format, begin, end);
                } catch (...) {
                    errors[s] = std::current_exception();
                }
            });
        }
    }
    for (const auto& e : errors)
        if (e)
            std::rethrow_exception(e);

    SignatureTally merged;
    for (const auto& r : results)
        merged.merge(r);
    return merged;
}

unsigned ingestion_shards_from_env()
{
    if (const char* value = std::getenv("BINWISE_THREADS")) {
        char* end = nullptr;
        const unsigned long n = std::strtoul(value, &end, 10);
        if (end != value && *end == '\0' && n >= 1)
            return static_cast<unsigned>(std::min(n, 256UL));
    }
    return std::max(1U, std::thread::hardware_concurrency());
}

}  // namespace binwise
