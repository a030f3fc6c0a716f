#include "binwise/models.hpp"

#include "binwise/errors.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

namespace binwise {

namespace {

std::string signature_text(std::string_view password)
{
    std::string sig(password.size(), 'L');
    for (std::size_t i = 0; i < password.size(); ++i) {
        const auto c = class_of(password[i]);
        if (!c)
            return {};
        sig[i] = class_symbol(*c);
    }
    return sig;
}

}  // namespace

bool BinModel::in_space(const std::string& signature) const
{
    if (signature.empty())
        return false;
    if (universe)
        return std::binary_search(universe->begin(), universe->end(), BinSignature::parse(signature));
    return signature.size() <= static_cast<std::size_t>(l_max);
}

std::optional<std::string> BinModel::locate(std::string_view password) const
{
    std::string sig = signature_text(password);
    if (!in_space(sig))
        return std::nullopt;
    if (model.find(sig) != nullptr)
        return sig;
    return std::string(kUnutilizedId);
}

BinModel build_bin_model(const SignatureTally& tally, int l_max)
{
    if (l_max < 1)
        throw std::invalid_argument("l_max must be at least 1");

    // Sorted ids keep the model layout independent of hash order.
    std::vector<std::pair<std::string, std::uint64_t>> entries(tally.by_signature.begin(),
                                                               tally.by_signature.end());
    std::sort(entries.begin(), entries.end());

    BinModel result;
    result.l_max = l_max;
    std::vector<Partition> parts;
    for (const auto& [sig, count] : entries) {
        if (sig.size() > static_cast<std::size_t>(l_max)) {
            result.out_of_space_mass += count;
            continue;
        }
        const BinSignature signature = BinSignature::parse(sig);
        parts.push_back({sig, capacity(signature), BigInt(static_cast<unsigned long>(count))});
    }
    result.model = PartitionModel(std::move(parts), search_space_size(l_max).exact);
    return result;
}

BinModel build_bin_model(const Corpus& corpus, int l_max)
{
    return build_bin_model(tally(corpus), l_max);
}

BinModel build_bin_model_over(const SignatureTally& tally, std::vector<BinSignature> universe)
{
    if (universe.empty())
        throw InvalidModel("bin universe is empty");
    std::sort(universe.begin(), universe.end());
    if (std::adjacent_find(universe.begin(), universe.end()) != universe.end())
        throw InvalidModel("bin universe contains duplicates");

    BinModel result;
    BigInt total = 0;
    for (const auto& sig : universe) {
        total += capacity(sig);
        result.l_max = std::max(result.l_max, static_cast<int>(sig.length()));
    }

    std::vector<std::pair<std::string, std::uint64_t>> entries(tally.by_signature.begin(),
                                                               tally.by_signature.end());
    std::sort(entries.begin(), entries.end());
    std::vector<Partition> parts;
    for (const auto& [sig, count] : entries) {
        const BinSignature signature = BinSignature::parse(sig);
        if (!std::binary_search(universe.begin(), universe.end(), signature)) {
            result.out_of_space_mass += count;
            continue;
        }
        parts.push_back({sig, capacity(signature), BigInt(static_cast<unsigned long>(count))});
    }
    result.model = PartitionModel(std::move(parts), std::move(total));
    result.universe = std::move(universe);
    return result;
}

ManglingRule ManglingRule::parse(std::string_view text, Rational weight)
{
    ManglingRule rule;
    rule.id = std::string(text);
    rule.weight = std::move(weight);

    const auto width_arg = [&](std::string_view prefix) {
        const std::string_view inner = text.substr(prefix.size(), text.size() - prefix.size() - 1);
        if (text.back() != ')' || inner.empty()
            || inner.find_first_not_of("0123456789") != std::string_view::npos || inner.size() > 3)
            throw std::invalid_argument("bad mangling rule '" + std::string(text) + "'");
        return static_cast<unsigned>(std::stoul(std::string(inner)));
    };

    if (text == "identity" || text == "W") {
        rule.kind = ManglingKind::identity;
    } else if (text == "capitalize-first") {
        rule.kind = ManglingKind::capitalize_first;
    } else if (text == "leet-map") {
        rule.kind = ManglingKind::leet_map;
    } else if (text.rfind("append-digits(", 0) == 0) {
        rule.kind = ManglingKind::append_digits;
        rule.width = width_arg("append-digits(");
    } else if (text.rfind("append-symbol(", 0) == 0) {
        rule.kind = ManglingKind::append_symbols;
        rule.width = width_arg("append-symbol(");
    } else if (text.rfind("append:", 0) == 0 && text.size() > 7) {
        rule.kind = ManglingKind::append_literal;
        rule.literal = std::string(text.substr(7));
    } else if (text.size() > 1 && text[0] == 'W') {
        rule.kind = ManglingKind::append_literal;
        rule.literal = std::string(text.substr(1));
    } else {
        throw std::invalid_argument("unknown mangling rule '" + std::string(text) + "'");
    }
    if (rule.kind == ManglingKind::append_literal && first_invalid_char(rule.literal))
        throw std::invalid_argument("mangling suffix must be printable ASCII");
    return rule;
}

BigInt ManglingRule::multiplicity() const
{
    switch (kind) {
    case ManglingKind::append_digits: return pow_int(10, width);
    case ManglingKind::append_symbols: return pow_int(33, width);
    default: return 1;
    }
}

PartitionModel build_mangling_model(const std::vector<std::string>& dictionary,
                                    const std::vector<ManglingRule>& rules)
{
    const std::set<std::string> words(dictionary.begin(), dictionary.end());
    if (words.empty())
        throw InvalidModel("mangling model needs a non-empty dictionary");

    BigInt scale = 1;
    for (const ManglingRule& r : rules) {
        if (r.weight < 0)
            throw InvalidModel("mangling rule '" + r.id + "' has a negative weight");
        mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), r.weight.get_den_mpz_t());
    }

    const BigInt size(static_cast<unsigned long>(words.size()));
    std::vector<Partition> parts;
    for (const ManglingRule& r : rules) {
        const Rational scaled = r.weight * scale;
        parts.push_back({r.id, size * r.multiplicity(), BigInt(scaled.get_num())});
    }
    return PartitionModel(std::move(parts));
}

std::string unit_id(std::string_view password)
{
    return "pw:" + std::string(password);
}

std::optional<std::string> HybridModel::locate(std::string_view password) const
{
    if (unit_index_.count(std::string(password)) != 0)
        return unit_id(password);
    return residual.locate(password);
}

HybridModel build_hybrid_model(const Corpus& corpus, std::size_t k, int l_max)
{
    if (l_max < 1)
        throw std::invalid_argument("l_max must be at least 1");

    HybridModel hybrid;
    SignatureTally rest;
    rest.skipped = corpus.skipped();
    for (const auto& [pw, count] : corpus.ranked()) {
        if (hybrid.units.size() < k && pw.size() <= static_cast<std::size_t>(l_max)) {
            hybrid.unit_index_.emplace(pw, hybrid.units.size());
            hybrid.units.push_back({pw, count});
        } else {
            rest.add(pw, count);
        }
    }
    hybrid.residual = build_bin_model(rest, l_max);

    // Carve the unit slots out of their bins.
    std::unordered_map<std::string, unsigned long> carved;
    for (const UnitPartition& u : hybrid.units)
        ++carved[signature_text(u.password)];

    std::vector<Partition> parts;
    for (const UnitPartition& u : hybrid.units)
        parts.push_back({unit_id(u.password), 1, BigInt(static_cast<unsigned long>(u.count))});

    std::vector<Partition> bins;
    for (Partition p : hybrid.residual.model.partitions()) {
        if (const auto it = carved.find(p.id); it != carved.end())
            p.capacity -= it->second;
        // A bin whose every password is a unit cannot hold residual mass.
        if (p.capacity > 0)
            bins.push_back(std::move(p));
    }
    hybrid.residual.model =
        PartitionModel(bins, hybrid.residual.model.total_capacity());
    parts.insert(parts.end(), std::make_move_iterator(bins.begin()),
                 std::make_move_iterator(bins.end()));
    hybrid.combined = PartitionModel(std::move(parts), hybrid.residual.model.total_capacity());
    return hybrid;
}

}  // namespace binwise
