#include "binwise/analytics.hpp"

#include "binwise/bins.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>

namespace binwise {

BigInt effective_budget_after_salting(const BigInt& budget, const BigInt& users)
{
    if (users < 1)
        throw std::invalid_argument("user count must be at least 1");
    if (budget < 0)
        throw std::invalid_argument("budget must be non-negative");
    return budget / users;  // truncation == floor for non-negative operands
}

RateBudget budget_from_rate(const Rational& guesses_per_second, const Rational& seconds)
{
    if (guesses_per_second < 0 || seconds < 0)
        throw std::invalid_argument("rate and duration must be non-negative");
    const Rational product = guesses_per_second * seconds;
    RateBudget result;
    mpz_fdiv_q(result.guesses.get_mpz_t(), product.get_num_mpz_t(), product.get_den_mpz_t());
    result.log2 = log2_of(product);
    return result;
}

SubstringAutomaton::SubstringAutomaton(const std::vector<std::string>& patterns)
{
    nodes_.emplace_back();
    for (const std::string& pattern : patterns) {
        if (pattern.empty())
            continue;
        ++patterns_;
        std::uint32_t node = 0;
        for (const char ch : pattern) {
            const auto c = static_cast<unsigned char>(ch);
            std::uint32_t next = child(node, c);
            if (next == 0) {
                next = static_cast<std::uint32_t>(nodes_.size());
                nodes_.emplace_back();
                auto& edges = nodes_[node].edges;
                edges.insert(std::lower_bound(edges.begin(), edges.end(),
                                              std::make_pair(c, std::uint32_t{0})),
                             {c, next});
            }
            node = next;
        }
        nodes_[node].terminal = true;
    }

    // Breadth-first failure links.
    std::deque<std::uint32_t> queue;
    for (const auto& [c, next] : nodes_[0].edges)
        queue.push_back(next);
    while (!queue.empty()) {
        const std::uint32_t node = queue.front();
        queue.pop_front();
        for (const auto& [c, next] : nodes_[node].edges) {
            std::uint32_t f = nodes_[node].fail;
            while (f != 0 && child(f, c) == 0)
                f = nodes_[f].fail;
            const std::uint32_t target = child(f, c);
            nodes_[next].fail = target != next ? target : 0;
            nodes_[next].terminal = nodes_[next].terminal || nodes_[nodes_[next].fail].terminal;
            queue.push_back(next);
        }
    }
}

std::uint32_t SubstringAutomaton::child(std::uint32_t node, unsigned char c) const
{
    const auto& edges = nodes_[node].edges;
    const auto it = std::lower_bound(edges.begin(), edges.end(), std::make_pair(c, std::uint32_t{0}));
    return (it != edges.end() && it->first == c) ? it->second : 0;
}

std::uint32_t SubstringAutomaton::step(std::uint32_t node, unsigned char c) const
{
    while (true) {
        if (const std::uint32_t next = child(node, c); next != 0)
            return next;
        if (node == 0)
            return 0;
        node = nodes_[node].fail;
    }
}

bool SubstringAutomaton::contains_any(std::string_view text) const
{
    if (patterns_ == 0)
        return false;
    std::uint32_t node = 0;
    for (const char ch : text) {
        node = step(node, static_cast<unsigned char>(ch));
        if (nodes_[node].terminal)
            return true;
    }
    return false;
}

SubstringShare long_password_substring_share(const Corpus& corpus,
                                             const std::vector<std::string>& popular,
                                             std::size_t min_length)
{
    if (popular.empty())
        throw std::invalid_argument("popular list must not be empty");
    const SubstringAutomaton automaton(popular);

    SubstringShare result;
    for (const auto& [pw, count] : corpus.counts()) {
        if (pw.size() < min_length
            || std::any_of(pw.begin(), pw.end(), [](char c) { return c >= 'A' && c <= 'Z'; }))
            continue;
        result.qualifying += count;
        if (automaton.contains_any(pw))
            result.containing += count;
    }
    if (result.qualifying > 0) {
        result.share = Rational(BigInt(static_cast<unsigned long>(result.containing)),
                                BigInt(static_cast<unsigned long>(result.qualifying)));
        result.share.canonicalize();
    }
    return result;
}

std::vector<UtilizationRow> utilization_report(const PartitionModel& model, std::vector<int> lengths)
{
    std::sort(lengths.begin(), lengths.end());
    lengths.erase(std::unique(lengths.begin(), lengths.end()), lengths.end());

    std::map<std::size_t, std::uint64_t> per_length;
    for (const Partition& p : model.partitions()) {
        if (p.count <= 0 || p.id.empty())
            continue;
        if (std::all_of(p.id.begin(), p.id.end(),
                        [](char c) { return class_from_symbol(c).has_value(); }))
            ++per_length[p.id.size()];
    }

    std::vector<UtilizationRow> rows;
    std::uint64_t cumulative = 0;
    for (const int l : lengths) {
        if (l < 1)
            throw std::invalid_argument("lengths must be positive");
        UtilizationRow row;
        row.length = l;
        row.available = pow_int(4, static_cast<unsigned>(l));
        const auto it = per_length.find(static_cast<std::size_t>(l));
        row.utilized = it == per_length.end() ? 0 : it->second;
        cumulative += row.utilized;
        row.cumulative = cumulative;
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace binwise
