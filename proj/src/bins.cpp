#include "binwise/bins.hpp"

#include "binwise/errors.hpp"
#include "binwise/random.hpp"

#include <cctype>
#include <limits>
#include <stdexcept>

namespace binwise {

namespace {

constexpr std::string_view kSymbols = " !\"#$%&'()*+,-./:;<=>?@[\\]^_`{|}~";
static_assert(kSymbols.size() == 33);

constexpr unsigned kUnbounded = std::numeric_limits<unsigned>::max();

unsigned upper(const std::optional<unsigned>& max)
{
    return max ? *max : kUnbounded;
}

unsigned saturating_add(unsigned a, unsigned b)
{
    return (a > kUnbounded - b) ? kUnbounded : a + b;
}

/// Memoized backtracking over (term, position). Answers whether `symbols`
/// can be extended by exactly `remaining` more symbols into a full match.
/// With remaining == 0 this is plain whole-signature matching.
class PrefixMatcher
{
public:
    PrefixMatcher(const std::vector<PatternTerm>& terms, std::string_view symbols,
                  unsigned remaining)
        : terms_(terms),
          symbols_(symbols),
          remaining_(remaining),
          suffix_min_(terms.size() + 1, 0),
          suffix_max_(terms.size() + 1, 0),
          memo_((terms.size() + 1) * (symbols.size() + 1), kUnknown)
    {
        for (std::size_t t = terms.size(); t-- > 0;) {
            suffix_min_[t] = saturating_add(suffix_min_[t + 1], terms[t].min);
            suffix_max_[t] = saturating_add(suffix_max_[t + 1], upper(terms[t].max));
        }
    }

    bool run() { return match(0, 0); }

private:
    static constexpr signed char kUnknown = -1;

    bool match(std::size_t t, std::size_t p)
    {
        signed char& slot = memo_[t * (symbols_.size() + 1) + p];
        if (slot == kUnknown)
            slot = compute(t, p) ? 1 : 0;
        return slot == 1;
    }

    bool compute(std::size_t t, std::size_t p)
    {
        const std::size_t n = symbols_.size();
        if (p == n)
            return suffix_min_[t] <= remaining_ && remaining_ <= suffix_max_[t];
        if (t == terms_.size())
            return false;

        const PatternTerm& term = terms_[t];
        const char want = class_symbol(term.cls);
        const unsigned max = upper(term.max);
        for (unsigned k = 0;; ++k) {
            if (p + k == n) {
                // Prefix ends inside this term: the rest of the term and all
                // later terms must absorb exactly `remaining_` symbols.
                const unsigned low = saturating_add(term.min > k ? term.min - k : 0,
                                                    suffix_min_[t + 1]);
                const unsigned high = saturating_add(max == kUnbounded ? kUnbounded : max - k,
                                                     suffix_max_[t + 1]);
                return low <= remaining_ && remaining_ <= high;
            }
            if (k >= term.min && match(t + 1, p + k))
                return true;
            if (k == max || symbols_[p + k] != want)
                return false;
        }
    }

    const std::vector<PatternTerm>& terms_;
    std::string_view symbols_;
    unsigned remaining_;
    std::vector<unsigned> suffix_min_;
    std::vector<unsigned> suffix_max_;
    std::vector<signed char> memo_;
};

}  // namespace

char class_symbol(CharClass c)
{
    static constexpr char symbols[] = {'L', 'U', 'D', 'S'};
    return symbols[static_cast<std::size_t>(c)];
}

std::optional<CharClass> class_from_symbol(char symbol)
{
    switch (symbol) {
    case 'L': return CharClass::L;
    case 'U': return CharClass::U;
    case 'D': return CharClass::D;
    case 'S': return CharClass::S;
    default: return std::nullopt;
    }
}

std::optional<CharClass> class_of(char c)
{
    const auto code = static_cast<unsigned char>(c);
    if (code < 32 || code > 126)
        return std::nullopt;
    if (c >= 'a' && c <= 'z')
        return CharClass::L;
    if (c >= 'A' && c <= 'Z')
        return CharClass::U;
    if (c >= '0' && c <= '9')
        return CharClass::D;
    return CharClass::S;
}

BinSignature::BinSignature(const std::vector<CharClass>& classes)
{
    symbols_.reserve(classes.size());
    for (const CharClass c : classes)
        symbols_.push_back(class_symbol(c));
}

BinSignature BinSignature::parse(std::string_view text)
{
    if (text.empty())
        throw std::invalid_argument("empty bin signature");
    BinSignature sig;
    for (const char c : text) {
        if (!class_from_symbol(c))
            throw std::invalid_argument("invalid bin signature '" + std::string(text) + "'");
    }
    sig.symbols_ = std::string(text);
    return sig;
}

CharClass BinSignature::at(std::size_t i) const
{
    return *class_from_symbol(symbols_.at(i));
}

std::array<unsigned, 4> BinSignature::class_counts() const
{
    std::array<unsigned, 4> counts{};
    for (const char c : symbols_)
        ++counts[static_cast<std::size_t>(*class_from_symbol(c))];
    return counts;
}

BinSignature operator+(const BinSignature& a, const BinSignature& b)
{
    BinSignature joined;
    joined.symbols_ = a.symbols_ + b.symbols_;
    return joined;
}

std::optional<std::size_t> first_invalid_char(std::string_view password)
{
    for (std::size_t i = 0; i < password.size(); ++i)
        if (!class_of(password[i]))
            return i;
    return std::nullopt;
}

BinSignature classify(std::string_view password)
{
    if (password.empty())
        throw ClassificationError("empty password");
    std::vector<CharClass> classes;
    classes.reserve(password.size());
    for (std::size_t i = 0; i < password.size(); ++i) {
        const auto c = class_of(password[i]);
        if (!c)
            throw ClassificationError(i);
        classes.push_back(*c);
    }
    return BinSignature(classes);
}

BigInt capacity(const BinSignature& signature)
{
    const auto counts = signature.class_counts();
    BigInt result = 1;
    for (std::size_t k = 0; k < counts.size(); ++k)
        result *= pow_int(kClassSizes[k], counts[k]);
    return result;
}

SearchSpaceSize search_space_size(int l_max)
{
    if (l_max < 1)
        throw std::invalid_argument("l_max must be at least 1");
    SearchSpaceSize size;
    // (95^(l_max+1) - 95) / 94
    size.exact = (pow_int(kAlphabetSize, static_cast<unsigned>(l_max) + 1) - kAlphabetSize)
                 / (kAlphabetSize - 1);
    size.approx = pow_int(kAlphabetSize, static_cast<unsigned>(l_max));
    return size;
}

BigInt capacity_sum_check(int length)
{
    if (length < 1)
        throw std::invalid_argument("length must be at least 1");
    if (length > kCapacitySumMaxLength)
        throw InstanceTooLarge("capacity_sum_check enumerates 4^l bins; l must be at most 12");

    // 33^12 < 2^61, so every single capacity fits in 64 bits.
    std::array<std::array<std::uint64_t, kCapacitySumMaxLength + 1>, 4> powers{};
    for (std::size_t k = 0; k < 4; ++k) {
        powers[k][0] = 1;
        for (int e = 1; e <= kCapacitySumMaxLength; ++e)
            powers[k][e] = powers[k][e - 1] * kClassSizes[k];
    }

    const std::uint64_t bins = std::uint64_t{1} << (2 * length);
    unsigned __int128 sum = 0;
    for (std::uint64_t code = 0; code < bins; ++code) {
        std::array<unsigned, 4> counts{};
        for (int pos = 0; pos < length; ++pos)
            ++counts[(code >> (2 * pos)) & 3U];
        sum += static_cast<unsigned __int128>(powers[0][counts[0]]) * powers[1][counts[1]]
               * powers[2][counts[2]] * powers[3][counts[3]];
    }

    BigInt result;
    const std::uint64_t limbs[2] = {static_cast<std::uint64_t>(sum >> 64),
                                    static_cast<std::uint64_t>(sum)};
    mpz_import(result.get_mpz_t(), 2, 1, sizeof(std::uint64_t), 0, 0, limbs);
    return result;
}

BinPattern::BinPattern(std::vector<PatternTerm> terms) : terms_(std::move(terms))
{
    if (terms_.empty())
        throw std::invalid_argument("pattern needs at least one term");
    if (terms_.size() > kMaxTerms)
        throw std::invalid_argument("pattern has more than 32 terms");
    for (const auto& t : terms_)
        if (t.max && *t.max < t.min)
            throw std::invalid_argument("pattern quantifier has max below min");
}

std::string BinPattern::str() const
{
    std::string out;
    for (const PatternTerm& t : terms_) {
        out.push_back(class_symbol(t.cls));
        out += "{" + std::to_string(t.min) + ",";
        if (t.max)
            out += std::to_string(*t.max);
        out += "}";
    }
    return out;
}

bool BinPattern::matches(const BinSignature& signature) const
{
    return PrefixMatcher(terms_, signature.str(), 0).run();
}

BinPattern parse_pattern(std::string_view text)
{
    std::size_t pos = 0;
    const auto at_end = [&] { return pos >= text.size(); };
    const auto read_number = [&]() -> unsigned {
        if (at_end() || !std::isdigit(static_cast<unsigned char>(text[pos])))
            throw PatternSyntaxError("expected a number", pos);
        unsigned long value = 0;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            value = value * 10 + static_cast<unsigned>(text[pos] - '0');
            if (value > 4096)
                throw PatternSyntaxError("quantifier bound too large", pos);
            ++pos;
        }
        return static_cast<unsigned>(value);
    };
    const auto expect = [&](char c) {
        if (at_end() || text[pos] != c)
            throw PatternSyntaxError(std::string("expected '") + c + "'", pos);
        ++pos;
    };

    if (text.empty())
        throw PatternSyntaxError("empty pattern", 0);

    std::vector<PatternTerm> terms;
    while (!at_end()) {
        const auto cls = class_from_symbol(text[pos]);
        if (!cls)
            throw PatternSyntaxError("expected one of L, U, D, S", pos);
        ++pos;
        PatternTerm term{*cls, 1, 1u};

        bool need_quantifier = false;
        if (!at_end() && (text[pos] == '^' || text[pos] == '_')) {
            ++pos;
            need_quantifier = true;
        }

        const std::size_t qpos = pos;
        if (!at_end() && text[pos] == '+') {
            term.min = 1;
            term.max.reset();
            ++pos;
        } else if (!at_end() && text[pos] == '*') {
            term.min = 0;
            term.max.reset();
            ++pos;
        } else if (!at_end() && text[pos] == '?') {
            term.min = 0;
            term.max = 1;
            ++pos;
        } else if (!at_end() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            term.min = read_number();
            term.max = term.min;
        } else if (!at_end() && (text[pos] == '{' || text[pos] == '[')) {
            const char close = text[pos] == '{' ? '}' : ']';
            ++pos;
            term.min = read_number();
            term.max = term.min;
            if (!at_end() && text[pos] == ',') {
                ++pos;
                if (!at_end() && text[pos] == close)
                    term.max.reset();
                else
                    term.max = read_number();
            }
            expect(close);
            if (term.max && *term.max < term.min)
                throw PatternSyntaxError("quantifier requires min <= max", qpos);
        } else if (need_quantifier) {
            throw PatternSyntaxError("expected a quantifier", pos);
        }

        terms.push_back(term);
        if (terms.size() > BinPattern::kMaxTerms)
            throw PatternSyntaxError("too many terms", qpos);
    }
    return BinPattern(std::move(terms));
}

bool matches(const BinPattern& pattern, const BinSignature& signature)
{
    return pattern.matches(signature);
}

BinConstraint BinConstraint::parse(std::string_view text)
{
    BinConstraint constraint;
    std::size_t pos = 0;
    while (pos < text.size()) {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
            ++pos;
        if (pos == text.size())
            break;
        std::size_t end = pos;
        while (end < text.size() && !std::isspace(static_cast<unsigned char>(text[end])))
            ++end;
        const std::string_view clause = text.substr(pos, end - pos);

        const auto cls = clause.size() >= 2 ? class_from_symbol(clause[0]) : std::nullopt;
        const auto op = clause.find_first_of("=<>");
        if (clause == "any") {
            // no restriction
        } else if (cls && op == 1) {
            ClassBounds& b = constraint.bounds[static_cast<std::size_t>(*cls)];
            const auto number = [&](std::string_view digits) {
                if (digits.empty() || digits.find_first_not_of("0123456789") != std::string_view::npos)
                    throw PatternSyntaxError("bad class bound '" + std::string(clause) + "'", pos);
                return static_cast<unsigned>(std::stoul(std::string(digits)));
            };
            const std::string_view rest = clause.substr(1);
            if (rest.rfind("<=", 0) == 0) {
                b.max = number(rest.substr(2));
            } else if (rest.rfind(">=", 0) == 0) {
                b.min = number(rest.substr(2));
            } else if (rest.rfind("=", 0) == 0) {
                const std::string_view value = rest.substr(1);
                const auto dots = value.find("..");
                if (dots == std::string_view::npos) {
                    b.min = number(value);
                    b.max = b.min;
                } else {
                    b.min = number(value.substr(0, dots));
                    b.max = number(value.substr(dots + 2));
                }
            } else {
                throw PatternSyntaxError("bad class bound '" + std::string(clause) + "'", pos);
            }
            if (b.max && *b.max < b.min)
                throw PatternSyntaxError("class bound requires min <= max", pos);
        } else {
            if (constraint.pattern)
                throw PatternSyntaxError("only one pattern clause is allowed", pos);
            try {
                constraint.pattern = parse_pattern(clause);
            } catch (const PatternSyntaxError& e) {
                throw PatternSyntaxError("bad pattern clause '" + std::string(clause) + "'",
                                         pos + e.position());
            }
        }
        pos = end;
    }
    return constraint;
}

bool BinConstraint::admits(const BinSignature& signature) const
{
    const auto counts = signature.class_counts();
    for (std::size_t k = 0; k < 4; ++k) {
        if (counts[k] < bounds[k].min)
            return false;
        if (bounds[k].max && counts[k] > *bounds[k].max)
            return false;
    }
    return !pattern || pattern->matches(signature);
}

// Text order: D < L < S < U.
constexpr std::array<CharClass, 4> kTextOrder{CharClass::D, CharClass::L, CharClass::S,
                                              CharClass::U};

std::vector<BinSignature> enumerate_constrained_bins(int length, const BinConstraint& constraint,
                                                     std::size_t limit)
{
    if (length < 1 || length > 64)
        throw std::invalid_argument("enumeration length must be in [1, 64]");

    const auto total = static_cast<unsigned>(length);
    std::vector<BinSignature> out;
    std::string prefix;
    prefix.reserve(total);
    std::array<unsigned, 4> counts{};

    const auto viable = [&]() {
        const unsigned remaining = total - static_cast<unsigned>(prefix.size());
        unsigned needed = 0;
        for (std::size_t k = 0; k < 4; ++k) {
            const ClassBounds& b = constraint.bounds[k];
            if (b.max && counts[k] > *b.max)
                return false;
            if (counts[k] < b.min)
                needed += b.min - counts[k];
        }
        if (needed > remaining)
            return false;
        return !constraint.pattern
               || PrefixMatcher(constraint.pattern->terms(), prefix, remaining).run();
    };

    const auto descend = [&](auto&& self) -> void {
        if (!viable())
            return;
        if (prefix.size() == total) {
            if (out.size() == limit)
                throw InstanceTooLarge("enumeration exceeds " + std::to_string(limit) + " bins");
            out.push_back(BinSignature::parse(prefix));
            return;
        }
        for (const CharClass c : kTextOrder) {
            prefix.push_back(class_symbol(c));
            ++counts[static_cast<std::size_t>(c)];
            self(self);
            --counts[static_cast<std::size_t>(c)];
            prefix.pop_back();
        }
    };
    descend(descend);
    return out;
}

BinSignature sample_bin(int length, Rng& rng)
{
    if (length < 1)
        throw std::invalid_argument("length must be at least 1");
    std::vector<CharClass> classes;
    classes.reserve(static_cast<std::size_t>(length));
    for (int i = 0; i < length; ++i) {
        const std::uint64_t r = rng.below(kAlphabetSize);
        if (r < 26)
            classes.push_back(CharClass::L);
        else if (r < 52)
            classes.push_back(CharClass::U);
        else if (r < 62)
            classes.push_back(CharClass::D);
        else
            classes.push_back(CharClass::S);
    }
    return BinSignature(classes);
}

std::string sample_password(const BinSignature& signature, Rng& rng)
{
    std::string password;
    password.reserve(signature.length());
    for (const char symbol : signature.str()) {
        switch (*class_from_symbol(symbol)) {
        case CharClass::L: password.push_back(static_cast<char>('a' + rng.below(26))); break;
        case CharClass::U: password.push_back(static_cast<char>('A' + rng.below(26))); break;
        case CharClass::D: password.push_back(static_cast<char>('0' + rng.below(10))); break;
        case CharClass::S: password.push_back(kSymbols[rng.below(33)]); break;
        }
    }
    return password;
}

}  // namespace binwise
