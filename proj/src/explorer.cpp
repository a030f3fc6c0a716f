#include "binwise/explorer.hpp"

#include "binwise/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace binwise {

PolicyResult min_length(const PolicyParams& params)
{
    if (params.users < 1 || params.budget < 1 || params.tolerated < 1 || params.alphabet_size < 2)
        throw std::invalid_argument("policy parameters must be >= 1 (alphabet >= 2)");
    if (params.tolerated > params.users)
        throw std::invalid_argument("tolerated success cannot exceed the user count");

    PolicyResult result;
    result.required = params.users * params.budget;
    result.estimate = (log2_of(params.users) + log2_of(params.budget) - log2_of(params.tolerated))
                      / std::log2(static_cast<double>(params.alphabet_size));

    const auto achieved = [&](int l) -> BigInt {
        return pow_int(params.alphabet_size, static_cast<unsigned>(l)) * params.tolerated;
    };
    int l = std::max(1, static_cast<int>(std::ceil(result.estimate)));
    // The float estimate can be off by one either way near integers.
    while (achieved(l) < result.required)
        ++l;
    while (l > 1 && achieved(l - 1) >= result.required)
        --l;
    result.min_length = l;
    result.achieved = achieved(l);
    return result;
}

Strategy parse_strategy(std::string_view name)
{
    if (name == "round_robin")
        return Strategy::round_robin;
    if (name == "density_ordered")
        return Strategy::density_ordered;
    if (name == "random")
        return Strategy::random;
    if (name == "two_choices")
        return Strategy::two_choices;
    throw std::invalid_argument("unknown strategy '" + std::string(name) + "'");
}

std::string_view to_string(Strategy strategy)
{
    switch (strategy) {
    case Strategy::round_robin: return "round_robin";
    case Strategy::density_ordered: return "density_ordered";
    case Strategy::random: return "random";
    case Strategy::two_choices: return "two_choices";
    }
    return "?";
}

bool BinAssigner::DensityLess::operator()(const DensityKey& a, const DensityKey& b) const
{
    // a.count / a.cap < b.count / b.cap
    if (a.capacity == b.capacity || *a.capacity == *b.capacity)
        return a.count < b.count;
    return cmp(BigInt(static_cast<unsigned long>(a.count)) * *b.capacity,
               BigInt(static_cast<unsigned long>(b.count)) * *a.capacity)
           < 0;
}

BinAssigner::BinAssigner(Strategy strategy, std::vector<BinSignature> universe, Rng rng)
    : strategy_(strategy), rng_(std::move(rng)), bins_(std::move(universe))
{
    if (bins_.empty())
        throw std::invalid_argument("bin universe is empty");
    if (bins_.size() > kMaxExplicitBins)
        throw InstanceTooLarge("explicit universes are limited to 1e6 bins; use implicit random");
    {
        std::vector<BinSignature> sorted = bins_;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw std::invalid_argument("bin universe contains duplicates");
    }

    capacities_.reserve(bins_.size());
    for (const auto& b : bins_) {
        capacities_.push_back(capacity(b));
        total_capacity_ += capacities_.back();
    }
    const bool equal = std::all_of(capacities_.begin(), capacities_.end(),
                                   [&](const BigInt& c) { return c == capacities_.front(); });
    if (!equal) {
        prefix_capacity_.reserve(bins_.size());
        BigInt running = 0;
        for (const auto& c : capacities_) {
            running += c;
            prefix_capacity_.push_back(running);
        }
    }
    counts_.assign(bins_.size(), 0);

    if (strategy_ == Strategy::density_ordered) {
        slot_.assign(bins_.size(), 0);
        for (std::size_t i = 0; i < bins_.size(); ++i)
            bucket_insert(i);
    }
}

BinAssigner::BinAssigner(int implicit_length, Rng rng)
    : strategy_(Strategy::random), rng_(std::move(rng)), implicit_length_(implicit_length)
{
    if (implicit_length < 1)
        throw std::invalid_argument("length must be at least 1");
}

BinAssigner BinAssigner::implicit_random(int length, Rng rng)
{
    return BinAssigner(length, std::move(rng));
}

std::size_t BinAssigner::draw_weighted()
{
    if (prefix_capacity_.empty())
        return static_cast<std::size_t>(rng_.below(static_cast<std::uint64_t>(bins_.size())));
    const BigInt r = rng_.below(total_capacity_);
    // First bin whose running total exceeds r.
    return static_cast<std::size_t>(
        std::upper_bound(prefix_capacity_.begin(), prefix_capacity_.end(), r)
        - prefix_capacity_.begin());
}

bool BinAssigner::denser(std::size_t a, std::size_t b) const
{
    return DensityLess{}({counts_[b], &capacities_[b]}, {counts_[a], &capacities_[a]});
}

void BinAssigner::bucket_insert(std::size_t bin)
{
    auto& members = buckets_[DensityKey{counts_[bin], &capacities_[bin]}];
    slot_[bin] = members.size();
    members.push_back(bin);
}

std::size_t BinAssigner::take_least_dense()
{
    const auto least = buckets_.begin();
    auto& members = least->second;
    const std::size_t pick = static_cast<std::size_t>(rng_.below(members.size()));
    const std::size_t bin = members[pick];
    members[pick] = members.back();
    slot_[members[pick]] = pick;
    members.pop_back();
    if (members.empty())
        buckets_.erase(least);
    return bin;
}

std::size_t BinAssigner::assign_next_index()
{
    if (implicit_length_)
        throw std::logic_error("implicit random universes have no bin indices");

    std::size_t bin = 0;
    switch (strategy_) {
    case Strategy::round_robin:
        bin = cursor_;
        cursor_ = (cursor_ + 1) % bins_.size();
        break;
    case Strategy::density_ordered:
        bin = take_least_dense();
        break;
    case Strategy::random:
        bin = draw_weighted();
        break;
    case Strategy::two_choices: {
        const std::size_t first = draw_weighted();
        const std::size_t second = draw_weighted();
        bin = denser(first, second) ? second : first;
        break;
    }
    }
    ++counts_[bin];
    ++assigned_;
    if (strategy_ == Strategy::density_ordered)
        bucket_insert(bin);
    return bin;
}

BinSignature BinAssigner::assign_next()
{
    if (implicit_length_) {
        ++assigned_;
        return sample_bin(*implicit_length_, rng_);
    }
    return bins_[assign_next_index()];
}

StretchReport BinAssigner::stretch() const
{
    if (implicit_length_)
        throw std::logic_error("random assignment over an implicit universe tracks no counts");
    if (assigned_ == 0)
        throw std::logic_error("stretch needs at least one assigned user");

    StretchReport report;
    report.users = assigned_;
    report.bins = bins_.size();
    report.expected_density = Rational(BigInt(static_cast<unsigned long>(assigned_)), total_capacity_);
    report.expected_density.canonicalize();

    std::size_t densest = 0;
    for (std::size_t i = 1; i < bins_.size(); ++i)
        if (denser(i, densest))
            densest = i;
    report.max_density = Rational(BigInt(static_cast<unsigned long>(counts_[densest])),
                                  capacities_[densest]);
    report.max_density.canonicalize();
    report.stretch = Rational(report.max_density / report.expected_density).get_d();

    const auto [lo, hi] = std::minmax_element(counts_.begin(), counts_.end());
    report.min_count = *lo;
    report.max_count = *hi;
    return report;
}

std::vector<BinSignature> load_universe(std::istream& in)
{
    std::vector<BinSignature> bins;
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t'))
            line.pop_back();
        const auto start = line.find_first_not_of(" \t");
        if (start == std::string::npos || line[start] == '#')
            continue;
        const std::string_view text = std::string_view(line).substr(start);

        if (text.rfind("length=", 0) == 0) {
            const auto space = text.find(' ');
            const std::string len_text(text.substr(7, space == std::string_view::npos
                                                         ? std::string_view::npos
                                                         : space - 7));
            if (len_text.empty() || len_text.find_first_not_of("0123456789") != std::string::npos)
                throw std::invalid_argument("bad universe generator line '" + line + "'");
            const int length = std::stoi(len_text);
            BinConstraint constraint;
            if (space != std::string_view::npos) {
                std::string_view rest = text.substr(space + 1);
                rest.remove_prefix(std::min(rest.find_first_not_of(' '), rest.size()));
                if (rest.rfind("pattern=", 0) != 0)
                    throw std::invalid_argument("expected pattern= in '" + line + "'");
                constraint = BinConstraint::parse(rest.substr(8));
            }
            auto generated = enumerate_constrained_bins(length, constraint,
                                                        kMaxExplicitBins - bins.size());
            bins.insert(bins.end(), generated.begin(), generated.end());
        } else {
            if (bins.size() == kMaxExplicitBins)
                throw InstanceTooLarge("explicit universes are limited to 1e6 bins");
            bins.push_back(BinSignature::parse(text));
        }
    }
    return bins;
}

namespace {

template <typename T>
T lower_median(std::vector<T> values)
{
    std::sort(values.begin(), values.end());
    return values[(values.size() - 1) / 2];
}

double median(std::vector<double> values)
{
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

}  // namespace

std::vector<ComparisonRow> strategy_comparison(const std::vector<BinSignature>& universe,
                                               std::uint64_t users,
                                               const std::vector<std::uint64_t>& seeds,
                                               const std::vector<Strategy>& strategies)
{
    if (seeds.empty())
        throw std::invalid_argument("at least one seed is required");
    if (users == 0)
        throw std::invalid_argument("at least one user is required");

    std::vector<ComparisonRow> rows;
    for (const Strategy s : strategies) {
        std::vector<double> stretches;
        std::vector<std::uint64_t> max_counts;
        ComparisonRow row{s, users, universe.size(), 0, 0, 0};
        for (const std::uint64_t seed : seeds) {
            BinAssigner assigner(s, universe, Rng(seed, static_cast<std::uint64_t>(s)));
            for (std::uint64_t u = 0; u < users; ++u)
                assigner.assign_next_index();
            const StretchReport report = assigner.stretch();
            stretches.push_back(report.stretch);
            max_counts.push_back(report.max_count);
            row.expected_density = report.expected_density;
        }
        row.stretch = median(stretches);
        row.max_count = lower_median(max_counts);
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_comparison_csv(std::ostream& out, const std::vector<ComparisonRow>& rows)
{
    out << "strategy,users,bins,expected_density_num,expected_density_den,max_count,stretch\n";
    char stretch[32];
    for (const ComparisonRow& r : rows) {
        std::snprintf(stretch, sizeof(stretch), "%.6f", r.stretch);
        out << to_string(r.strategy) << ',' << r.users << ',' << r.bins << ','
            << r.expected_density.get_num().get_str() << ','
            << r.expected_density.get_den().get_str() << ',' << r.max_count << ',' << stretch
            << '\n';
    }
}

}  // namespace binwise
