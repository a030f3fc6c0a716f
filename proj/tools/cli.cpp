#include "cli.hpp"

#include "binwise/analytics.hpp"
#include "binwise/bins.hpp"
#include "binwise/corpus.hpp"
#include "binwise/errors.hpp"
#include "binwise/explorer.hpp"
#include "binwise/grammar.hpp"
#include "binwise/model_json.hpp"
#include "binwise/models.hpp"
#include "binwise/simulate.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <unistd.h>

namespace binwise::cli {

namespace {

using Json = nlohmann::ordered_json;
namespace fs = std::filesystem;

struct UsageError : std::invalid_argument
{
    using std::invalid_argument::invalid_argument;
};

struct Common
{
    int l_max = 12;
    std::optional<std::uint64_t> seed;
    std::string out = "-";
    std::string format = "csv";
};

void add_common(CLI::App* cmd, Common& common, const std::string& default_format)
{
    common.format = default_format;
    cmd->add_option("--lmax", common.l_max, "longest password length in the search space")
        ->check(CLI::Range(1, 64))
        ->capture_default_str();
    cmd->add_option("--seed", common.seed, "seed for randomized subcommands");
    cmd->add_option("--out", common.out, "output path, '-' for stdout")->capture_default_str();
    cmd->add_option("--format", common.format, "report format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad())
        throw IoError("cannot read '" + path + "'");
    return buffer.str();
}

std::vector<std::string> read_lines(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open '" + path + "'");
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (!line.empty())
            lines.push_back(line);
    }
    return lines;
}

/// Whole report or nothing: the file only appears once fully written.
void emit(const std::string& path, const std::string& content, std::ostream& out)
{
    if (path.empty() || path == "-") {
        out << content;
        out.flush();
        return;
    }
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".partial." + std::to_string(::getpid());
    {
        std::ofstream file(tmp, std::ios::binary | std::ios::trunc);
        if (file)
            file << content;
        file.flush();
        if (!file) {
            std::error_code ec;
            fs::remove(tmp, ec);
            throw IoError("cannot write '" + path + "'");
        }
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw IoError("cannot move report into '" + path + "'");
    }
}

double round2(double x)
{
    return std::isfinite(x) ? std::round(x * 100.0) / 100.0 : x;
}

Json big(const BigInt& value)
{
    return Json{{"value", to_decimal(value)}, {"log2", round2(log2_of(value))}};
}

Json fraction(const Rational& value)
{
    return Json{{"num", to_decimal(value.get_num())},
                {"den", to_decimal(value.get_den())},
                {"approx", value.get_d()}};
}

std::string fixed(double value, int digits)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", digits, value);
    return buf;
}

Json skip_json(const SkipStats& s)
{
    return Json{{"empty_lines", s.empty_lines},
                {"invalid_char_lines", s.invalid_char_lines},
                {"invalid_char_mass", s.invalid_char_mass},
                {"malformed_lines", s.malformed_lines}};
}

// analyze

struct AnalyzeArgs
{
    Common common;
    std::string input;
    std::string input_format = "raw";
    std::string patterns;
    std::size_t top = 20;
};

std::string run_analyze(const AnalyzeArgs& a)
{
    const Corpus corpus = ingest_file(a.input, parse_corpus_format(a.input_format));
    if (corpus.total() == 0)
        throw InvalidModel("corpus '" + a.input + "' has no valid passwords");
    const SignatureTally sigs = tally(corpus);
    const BinModel bins = build_bin_model(sigs, a.common.l_max);

    std::vector<Partition> parts = bins.model.partitions();
    std::vector<Partition> by_density = parts;
    std::sort(by_density.begin(), by_density.end(), [](const Partition& x, const Partition& y) {
        if (const auto c = compare_density(x, y); c != 0)
            return c > 0;
        if (x.count != y.count)
            return x.count > y.count;
        return x.id < y.id;
    });
    std::vector<Partition> by_count = parts;
    std::sort(by_count.begin(), by_count.end(), [](const Partition& x, const Partition& y) {
        if (x.count != y.count)
            return x.count > y.count;
        return x.id < y.id;
    });
    const BigInt phi(static_cast<unsigned long>(corpus.total()));

    const auto bin_rows = [&](const std::vector<Partition>& sorted) {
        Json rows = Json::array();
        for (std::size_t i = 0; i < sorted.size() && i < a.top; ++i) {
            const Partition& p = sorted[i];
            Rational density(p.count, p.capacity);
            density.canonicalize();
            Rational share(p.count, phi);
            share.canonicalize();
            rows.push_back({{"signature", p.id},
                            {"count", to_decimal(p.count)},
                            {"capacity", big(p.capacity)},
                            {"density", fraction(density)},
                            {"share", share.get_d()}});
        }
        return rows;
    };

    std::vector<std::string> pattern_texts = {"L+", "D+", "L+D+", "U1L+D+"};
    if (!a.patterns.empty())
        pattern_texts = read_lines(a.patterns);
    Json shares = Json::array();
    for (const std::string& text : pattern_texts) {
        const BinPattern pattern = parse_pattern(text);
        std::array<bool, 4> used{};
        for (const PatternTerm& t : pattern.terms())
            used[static_cast<std::size_t>(t.cls)] = true;
        std::uint64_t mass = 0;
        std::uint64_t alphabet_mass = 0;
        for (const auto& [sig_text, count] : sigs.by_signature) {
            const BinSignature sig = BinSignature::parse(sig_text);
            const auto counts = sig.class_counts();
            bool within = true;
            for (std::size_t k = 0; k < 4; ++k)
                within = within && (used[k] || counts[k] == 0);
            if (within)
                alphabet_mass += count;
            if (pattern.matches(sig))
                mass += count;
        }
        shares.push_back(
            {{"pattern", text},
             {"canonical", pattern.str()},
             {"mass", mass},
             {"share", static_cast<double>(mass) / static_cast<double>(corpus.total())},
             {"alphabet_mass", alphabet_mass},
             {"share_within_alphabet",
              alphabet_mass ? static_cast<double>(mass) / static_cast<double>(alphabet_mass) : 0.0}});
    }

    std::map<std::size_t, std::uint64_t> utilized;
    for (const Partition& p : parts)
        ++utilized[p.id.size()];
    Json per_length = Json::array();
    for (const auto& [len, n] : utilized)
        per_length.push_back({{"length", len},
                              {"utilized", n},
                              {"available", big(pow_int(4, static_cast<unsigned>(len)))}});

    if (a.common.format == "csv") {
        std::ostringstream csv;
        csv << "rank,signature,count,capacity,density_num,density_den,log2_capacity\n";
        for (std::size_t i = 0; i < by_density.size() && i < a.top; ++i) {
            const Partition& p = by_density[i];
            Rational density(p.count, p.capacity);
            density.canonicalize();
            csv << i + 1 << ',' << p.id << ',' << to_decimal(p.count) << ','
                << to_decimal(p.capacity) << ',' << to_decimal(density.get_num()) << ','
                << to_decimal(density.get_den()) << ',' << format_log2(log2_of(p.capacity)) << '\n';
        }
        return csv.str();
    }

    Json report;
    report["phi"] = big(phi);
    report["distinct"] = corpus.distinct();
    report["skipped"] = skip_json(corpus.skipped());
    report["l_max"] = a.common.l_max;
    report["search_space"] = big(bins.model.total_capacity());
    report["out_of_space_mass"] = bins.out_of_space_mass;
    report["utilized_bins"] = parts.size();
    report["utilized_by_length"] = std::move(per_length);
    report["top_by_density"] = bin_rows(by_density);
    report["top_by_count"] = bin_rows(by_count);
    report["pattern_shares"] = std::move(shares);
    return report.dump(2) + "\n";
}

// attack

struct AttackArgs
{
    Common common;
    std::string train;
    std::string test;
    std::string input_format = "raw";
    std::string ordering = "density";
    std::string checkpoints = "0:64:4";
    std::size_t k = 0;
    std::string dump_model;
};

std::string run_attack(const AttackArgs& a, std::ostream& out)
{
    const CorpusFormat format = parse_corpus_format(a.input_format);
    const Ordering ordering = parse_ordering(a.ordering);
    const std::string& test_path = a.test.empty() ? a.train : a.test;

    PartitionModel train_model;
    TestProjection projection;
    if (a.k == 0) {
        const unsigned shards = ingestion_shards_from_env();
        const SignatureTally train = tally_file(a.train, format, shards);
        const BinModel model = build_bin_model(train, a.common.l_max);
        projection = test_path == a.train ? project(train, model)
                                          : project(tally_file(test_path, format, shards), model);
        train_model = model.model;
    } else {
        const Corpus train = ingest_file(a.train, format);
        const HybridModel model = build_hybrid_model(train, a.k, a.common.l_max);
        projection = test_path == a.train ? project(train, model)
                                          : project(ingest_file(test_path, format), model);
        train_model = model.combined;
    }
    if (train_model.total_count() == 0)
        throw InvalidModel("training corpus '" + a.train + "' has no valid passwords");

    const auto budgets = parse_checkpoints(a.checkpoints, train_model.total_capacity());
    const GuessCurve curve = simulate_attack(train_model, projection, ordering, budgets);

    if (!a.dump_model.empty())
        emit(a.dump_model, model_to_json(train_model, 2) + "\n", out);

    if (a.common.format == "csv") {
        std::ostringstream csv;
        write_curve_csv(csv, curve);
        return csv.str();
    }
    Json points = Json::array();
    for (const CurvePoint& p : curve.points)
        points.push_back({{"budget", big(p.budget)},
                          {"expected_cracked", fraction(p.expected)},
                          {"fraction", p.fraction}});
    Json report;
    report["ordering"] = std::string(to_string(ordering));
    report["k"] = a.k;
    report["l_max"] = a.common.l_max;
    report["partitions"] = train_model.size();
    report["total_capacity"] = big(train_model.total_capacity());
    report["test_total"] = to_decimal(projection.total);
    report["test_out_of_space"] = to_decimal(projection.out_of_space);
    report["points"] = std::move(points);
    return report.dump(2) + "\n";
}

// policy

struct PolicyArgs
{
    Common common;
    std::string users;
    std::string budget;
    std::string rate;
    std::string duration;
    std::string tolerated = "1";
    unsigned alphabet = kAlphabetSize;
    std::string salted_users;
};

Rational parse_duration(const std::string& text)
{
    static const std::pair<const char*, long> units[] = {
        {"min", 60}, {"s", 1}, {"h", 3600}, {"d", 86400}};
    for (const auto& [suffix, seconds] : units) {
        const std::string_view s(suffix);
        if (text.size() > s.size() && text.compare(text.size() - s.size(), s.size(), s) == 0)
            return parse_decimal(std::string_view(text).substr(0, text.size() - s.size()))
                   * Rational(seconds);
    }
    return parse_decimal(text);
}

std::string run_policy(const PolicyArgs& a)
{
    if (a.budget.empty() == a.rate.empty())
        throw UsageError("give either --budget or --rate with --duration");
    if (!a.rate.empty() && a.duration.empty())
        throw UsageError("--rate needs --duration");

    Json report;
    Json inputs;
    inputs["users"] = big(parse_integer(a.users));
    inputs["tolerated"] = big(parse_integer(a.tolerated));
    inputs["alphabet_size"] = a.alphabet;

    BigInt budget;
    if (!a.budget.empty()) {
        budget = parse_integer(a.budget);
        inputs["budget"] = big(budget);
    } else {
        const Rational rate = parse_decimal(a.rate);
        const Rational seconds = parse_duration(a.duration);
        const RateBudget rb = budget_from_rate(rate, seconds);
        budget = rb.guesses;
        inputs["rate"] = fraction(rate);
        inputs["seconds"] = fraction(seconds);
        inputs["budget"] = Json{{"value", to_decimal(rb.guesses)}, {"log2", round2(rb.log2)}};
    }
    report["inputs"] = inputs;

    if (!a.salted_users.empty()) {
        const BigInt salted = parse_integer(a.salted_users);
        const BigInt effective = effective_budget_after_salting(budget, salted);
        report["salting"] = Json{{"salted_users", big(salted)}, {"effective_budget", big(effective)}};
        budget = effective;
    }

    const PolicyResult r =
        min_length({parse_integer(a.users), budget, parse_integer(a.tolerated), a.alphabet});
    const BigInt below =
        pow_int(a.alphabet, static_cast<unsigned>(r.min_length - 1)) * parse_integer(a.tolerated);
    report["min_length"] = r.min_length;
    report["estimate"] = r.estimate;
    report["witness"] = Json{{"required", big(r.required)},
                             {"achieved", big(r.achieved)},
                             {"achieved_at_min_length_minus_1", big(below)}};

    if (a.common.format == "csv") {
        std::ostringstream csv;
        csv << "key,value,log2\n";
        csv << "users," << to_decimal(parse_integer(a.users)) << ','
            << format_log2(log2_of(parse_integer(a.users))) << '\n';
        csv << "budget," << to_decimal(budget) << ',' << format_log2(log2_of(budget)) << '\n';
        csv << "tolerated," << to_decimal(parse_integer(a.tolerated)) << ',' << format_log2(log2_of(parse_integer(a.tolerated)))
            << '\n';
        csv << "alphabet_size," << a.alphabet << ','
            << format_log2(std::log2(static_cast<double>(a.alphabet))) << '\n';
        csv << "required," << to_decimal(r.required) << ',' << format_log2(log2_of(r.required)) << '\n';
        csv << "achieved," << to_decimal(r.achieved) << ',' << format_log2(log2_of(r.achieved)) << '\n';
        csv << "min_length," << r.min_length << ",\n";
        return csv.str();
    }
    return report.dump(2) + "\n";
}

// assign

struct AssignArgs
{
    Common common;
    std::string strategy = "all";
    std::string universe;
    int length = 0;
    std::string pattern;
    std::uint64_t users = 0;
    std::size_t trials = 1;
    std::string emit_what = "stretch";
};

std::string run_assign(const AssignArgs& a)
{
    if (!a.common.seed)
        throw UsageError("assign needs --seed");
    const std::uint64_t seed = *a.common.seed;

    std::vector<BinSignature> universe;
    bool implicit = false;
    if (!a.universe.empty()) {
        std::istringstream in(read_file(a.universe));
        universe = load_universe(in);
    } else if (a.length > 0) {
        const bool emits = a.emit_what == "passwords" || a.emit_what == "bins";
        if (a.pattern.empty() && a.strategy == "random" && emits
            && pow_int(4, static_cast<unsigned>(a.length)) > kMaxExplicitBins)
            implicit = true;
        else
            universe = enumerate_constrained_bins(a.length, BinConstraint::parse(
                                                                a.pattern.empty() ? "any" : a.pattern),
                                                  kMaxExplicitBins);
    } else {
        throw UsageError("give --universe or --length");
    }

    if (a.emit_what == "passwords" || a.emit_what == "bins") {
        if (a.strategy == "all")
            throw UsageError("--emit passwords/bins needs a single --strategy");
        const Strategy s = parse_strategy(a.strategy);
        Rng rng(seed, static_cast<std::uint64_t>(s));
        Rng chars(seed, 100 + static_cast<std::uint64_t>(s));
        BinAssigner assigner = implicit ? BinAssigner::implicit_random(a.length, std::move(rng))
                                        : BinAssigner(s, universe, std::move(rng));
        std::ostringstream text;
        for (std::uint64_t u = 0; u < a.users; ++u) {
            const BinSignature bin = assigner.assign_next();
            text << (a.emit_what == "bins" ? bin.str() : sample_password(bin, chars)) << '\n';
        }
        return text.str();
    }
    if (implicit)
        throw UsageError("random over an implicit universe tracks no counts; use --emit");

    std::vector<std::uint64_t> seeds;
    for (std::size_t t = 0; t < std::max<std::size_t>(a.trials, 1); ++t)
        seeds.push_back(seed + t);

    if (a.emit_what == "counts") {
        if (a.strategy == "all")
            throw UsageError("--emit counts needs a single --strategy");
        const Strategy s = parse_strategy(a.strategy);
        BinAssigner assigner(s, universe, Rng(seed, static_cast<std::uint64_t>(s)));
        for (std::uint64_t u = 0; u < a.users; ++u)
            assigner.assign_next_index();
        std::ostringstream csv;
        csv << "signature,capacity,count\n";
        for (std::size_t i = 0; i < universe.size(); ++i)
            csv << universe[i].str() << ',' << to_decimal(assigner.capacities()[i]) << ','
                << assigner.counts()[i] << '\n';
        return csv.str();
    }
    if (a.emit_what != "stretch")
        throw UsageError("--emit must be stretch, counts, bins or passwords");

    std::vector<Strategy> strategies;
    if (a.strategy == "all")
        strategies.assign(std::begin(kAllStrategies), std::end(kAllStrategies));
    else
        strategies.push_back(parse_strategy(a.strategy));
    const auto rows = strategy_comparison(universe, a.users, seeds, strategies);

    if (a.common.format == "csv") {
        std::ostringstream csv;
        write_comparison_csv(csv, rows);
        return csv.str();
    }
    Json list = Json::array();
    for (const ComparisonRow& r : rows)
        list.push_back({{"strategy", std::string(to_string(r.strategy))},
                        {"users", r.users},
                        {"bins", r.bins},
                        {"expected_density", fraction(r.expected_density)},
                        {"max_count", r.max_count},
                        {"stretch", r.stretch}});
    Json report;
    report["seed"] = seed;
    report["trials"] = seeds.size();
    report["rows"] = std::move(list);
    return report.dump(2) + "\n";
}

// grammar

struct GrammarArgs
{
    Common common;
    std::string instance;
    std::string order = "both";
    bool guesses = false;
};

std::string run_grammar(const GrammarArgs& a)
{
    const GrammarInstance g = parse_grammar_instance(read_file(a.instance));
    std::vector<std::pair<std::string, std::vector<GuessBlock>>> orders;
    if (a.order == "probability" || a.order == "both")
        orders.emplace_back("probability",
                            order_by_preterminal_probability(g.preterminals, g.dictionaries));
    if (a.order == "density" || a.order == "both")
        orders.emplace_back("density", order_by_preterminal_density(g.preterminals, g.dictionaries));
    if (orders.empty())
        throw UsageError("--order must be probability, density or both");
    const bool equivalent = equivalence_check(g.preterminals, g.dictionaries);

    if (a.guesses) {
        std::ostringstream text;
        for (const auto& [name, blocks] : orders) {
            text << "## " << name << " order\n";
            write_guess_list(text, blocks);
        }
        return text.str();
    }
    if (a.common.format == "csv") {
        std::ostringstream csv;
        csv << "order,rank,id,count,size,density_num,density_den\n";
        for (const auto& [name, blocks] : orders)
            for (std::size_t i = 0; i < blocks.size(); ++i)
                csv << name << ',' << i + 1 << ',' << blocks[i].id << ',' << blocks[i].count << ','
                    << blocks[i].size << ',' << to_decimal(blocks[i].density.get_num()) << ','
                    << to_decimal(blocks[i].density.get_den()) << '\n';
        return csv.str();
    }
    Json report;
    for (const auto& [name, blocks] : orders) {
        Json list = Json::array();
        for (const GuessBlock& b : blocks)
            list.push_back({{"id", b.id},
                            {"count", b.count},
                            {"size", b.size},
                            {"density", to_fraction(b.density)},
                            {"first_guess", b.guesses.front()},
                            {"last_guess", b.guesses.back()}});
        report[name] = std::move(list);
    }
    report["equivalent"] = equivalent;
    return report.dump(2) + "\n";
}

// longpass

struct LongpassArgs
{
    Common common;
    std::string input;
    std::string input_format = "raw";
    std::string popular;
    std::size_t min_length = 13;
};

std::string run_longpass(const LongpassArgs& a)
{
    const Corpus corpus = ingest_file(a.input, parse_corpus_format(a.input_format));
    const std::vector<std::string> popular = read_lines(a.popular);
    const SubstringShare share = long_password_substring_share(corpus, popular, a.min_length);

    if (a.common.format == "csv") {
        std::ostringstream csv;
        csv << "min_length,popular,qualifying,containing,share_num,share_den,share\n";
        csv << a.min_length << ',' << popular.size() << ',' << share.qualifying << ','
            << share.containing << ',' << to_decimal(share.share.get_num()) << ','
            << to_decimal(share.share.get_den()) << ',' << fixed(share.share.get_d(), 6) << '\n';
        return csv.str();
    }
    Json report;
    report["min_length"] = a.min_length;
    report["popular"] = popular.size();
    report["qualifying"] = share.qualifying;
    report["containing"] = share.containing;
    report["share"] = fraction(share.share);
    return report.dump(2) + "\n";
}

// utilization

struct UtilizationArgs
{
    Common common;
    std::string input;
    std::string input_format = "raw";
};

std::string run_utilization(const UtilizationArgs& a)
{
    const SignatureTally sigs =
        tally_file(a.input, parse_corpus_format(a.input_format), ingestion_shards_from_env());
    const BinModel bins = build_bin_model(sigs, a.common.l_max);
    std::vector<int> lengths;
    for (int l = 1; l <= a.common.l_max; ++l)
        lengths.push_back(l);
    const auto rows = utilization_report(bins.model, lengths);

    if (a.common.format == "csv") {
        std::ostringstream csv;
        csv << "length,available,log2_available,utilized,cumulative\n";
        for (const UtilizationRow& r : rows)
            csv << r.length << ',' << to_decimal(r.available) << ','
                << format_log2(log2_of(r.available)) << ',' << r.utilized << ',' << r.cumulative
                << '\n';
        return csv.str();
    }
    Json list = Json::array();
    for (const UtilizationRow& r : rows)
        list.push_back({{"length", r.length},
                        {"available", big(r.available)},
                        {"utilized", r.utilized},
                        {"cumulative", r.cumulative}});
    Json report;
    report["phi"] = sigs.total;
    report["skipped"] = skip_json(sigs.skipped);
    report["rows"] = std::move(list);
    return report.dump(2) + "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"binwise: partition attacks, bin models and password policy"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "binwise 0.1");

    AnalyzeArgs analyze;
    auto* c_analyze = app.add_subcommand("analyze", "bin statistics of a corpus");
    add_common(c_analyze, analyze.common, "json");
    c_analyze->add_option("--input", analyze.input, "corpus file")->required();
    c_analyze->add_option("--input-format", analyze.input_format)->check(CLI::IsMember({"raw", "freq"}));
    c_analyze->add_option("--patterns", analyze.patterns, "file with one bin pattern per line");
    c_analyze->add_option("--top", analyze.top, "rows in the top-bin tables")->capture_default_str();

    AttackArgs attack;
    auto* c_attack = app.add_subcommand("attack", "guess curve of a trained partition attacker");
    add_common(c_attack, attack.common, "csv");
    c_attack->add_option("--train", attack.train, "training corpus")->required();
    c_attack->add_option("--test", attack.test, "test corpus (defaults to the training corpus)");
    c_attack->add_option("--input-format", attack.input_format)->check(CLI::IsMember({"raw", "freq"}));
    c_attack->add_option("--ordering", attack.ordering)->check(CLI::IsMember({"density", "probability"}));
    c_attack->add_option("--checkpoints", attack.checkpoints, "log2 budgets: 10,20,max or 0:64:4")
        ->capture_default_str();
    c_attack->add_option("--k", attack.k, "unit partitions for the top-k passwords (hybrid)");
    c_attack->add_option("--dump-model", attack.dump_model, "write the trained model as JSON");

    PolicyArgs policy;
    auto* c_policy = app.add_subcommand("policy", "minimum length for a tolerated expected success");
    add_common(c_policy, policy.common, "json");
    c_policy->add_option("--users", policy.users, "phi, e.g. 2^25")->required();
    c_policy->add_option("--budget", policy.budget, "attacker guesses, e.g. 2^56");
    c_policy->add_option("--rate", policy.rate, "guesses per second, e.g. 350e9");
    c_policy->add_option("--duration", policy.duration, "seconds, or with suffix s/min/h/d");
    c_policy->add_option("--tolerated", policy.tolerated, "tolerated expected success E")
        ->capture_default_str();
    c_policy->add_option("--alphabet", policy.alphabet)->check(CLI::Range(2u, 1000000u))->capture_default_str();
    c_policy->add_option("--salted-users", policy.salted_users, "per-user salts: divide the budget");

    AssignArgs assign;
    auto* c_assign = app.add_subcommand("assign", "assign users to bins and report stretch");
    add_common(c_assign, assign.common, "csv");
    c_assign->add_option("--strategy", assign.strategy)
        ->check(CLI::IsMember({"all", "round_robin", "density_ordered", "random", "two_choices"}))
        ->capture_default_str();
    c_assign->add_option("--universe", assign.universe, "universe file");
    c_assign->add_option("--length", assign.length, "bins of one length");
    c_assign->add_option("--pattern", assign.pattern, "bin constraint for --length");
    c_assign->add_option("--users", assign.users)->required();
    c_assign->add_option("--trials", assign.trials, "seeds seed..seed+trials-1")->capture_default_str();
    c_assign->add_option("--emit", assign.emit_what, "stretch, counts, bins or passwords")
        ->capture_default_str();

    GrammarArgs grammar;
    auto* c_grammar = app.add_subcommand("grammar", "pre-terminal orderings of a grammar instance");
    add_common(c_grammar, grammar.common, "json");
    c_grammar->add_option("--instance", grammar.instance, "instance JSON")->required();
    c_grammar->add_option("--order", grammar.order)
        ->check(CLI::IsMember({"both", "density", "probability"}))
        ->capture_default_str();
    c_grammar->add_flag("--guesses", grammar.guesses, "print the guess lists");

    LongpassArgs longpass;
    auto* c_longpass = app.add_subcommand("longpass", "share of long passwords built on popular ones");
    add_common(c_longpass, longpass.common, "json");
    c_longpass->add_option("--input", longpass.input)->required();
    c_longpass->add_option("--input-format", longpass.input_format)->check(CLI::IsMember({"raw", "freq"}));
    c_longpass->add_option("--popular", longpass.popular, "popular list, one per line")->required();
    c_longpass->add_option("--min-length", longpass.min_length)->capture_default_str();

    UtilizationArgs utilization;
    auto* c_util = app.add_subcommand("utilization", "observed vs available bins per length");
    add_common(c_util, utilization.common, "csv");
    c_util->add_option("--input", utilization.input)->required();
    c_util->add_option("--input-format", utilization.input_format)->check(CLI::IsMember({"raw", "freq"}));

    std::vector<std::string> argv_store;
    argv_store.reserve(args.size() + 1);
    argv_store.emplace_back("binwise");
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& s : argv_store)
        argv.push_back(s.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        std::string report;
        const Common* common = nullptr;
        if (*c_analyze) {
            report = run_analyze(analyze);
            common = &analyze.common;
        } else if (*c_attack) {
            report = run_attack(attack, out);
            common = &attack.common;
        } else if (*c_policy) {
            report = run_policy(policy);
            common = &policy.common;
        } else if (*c_assign) {
            report = run_assign(assign);
            common = &assign.common;
        } else if (*c_grammar) {
            report = run_grammar(grammar);
            common = &grammar.common;
        } else if (*c_longpass) {
            report = run_longpass(longpass);
            common = &longpass.common;
        } else {
            report = run_utilization(utilization);
            common = &utilization.common;
        }
        emit(common->out, report, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace binwise::cli
