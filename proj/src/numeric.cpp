#include "binwise/numeric.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace binwise {

BigInt pow_int(std::uint64_t base, unsigned exponent)
{
    BigInt result;
    mpz_ui_pow_ui(result.get_mpz_t(), base, exponent);
    return result;
}

double log2_of(const BigInt& value)
{
    if (sgn(value) <= 0)
        return -std::numeric_limits<double>::infinity();
    long exp = 0;
    const double mantissa = mpz_get_d_2exp(&exp, value.get_mpz_t());
    return std::log2(mantissa) + static_cast<double>(exp);
}

double log2_of(const Rational& value)
{
    if (sgn(value) <= 0)
        return -std::numeric_limits<double>::infinity();
    return log2_of(BigInt(value.get_num())) - log2_of(BigInt(value.get_den()));
}

BigInt budget_from_log2(double exponent)
{
    if (!std::isfinite(exponent))
        throw std::invalid_argument("budget exponent must be finite");
    if (exponent < 0)
        return 0;
    const double whole = std::floor(exponent);
    const long double frac = static_cast<long double>(exponent) - whole;
    const long double mantissa = std::exp2l(frac);  // [1, 2)
    const auto scaled = static_cast<unsigned long long>(std::ldexp(mantissa, 62));

    BigInt result;
    mpz_import(result.get_mpz_t(), 1, 1, sizeof(scaled), 0, 0, &scaled);
    const long shift = static_cast<long>(whole) - 62;
    if (shift >= 0)
        mpz_mul_2exp(result.get_mpz_t(), result.get_mpz_t(), static_cast<mp_bitcnt_t>(shift));
    else
        mpz_fdiv_q_2exp(result.get_mpz_t(), result.get_mpz_t(), static_cast<mp_bitcnt_t>(-shift));
    return result;
}

Rational parse_decimal(std::string_view text)
{
    const auto fail = [&] {
        throw std::invalid_argument("not a decimal number: '" + std::string(text) + "'");
    };
    std::size_t pos = 0;
    bool negative = false;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-'))
        negative = text[pos++] == '-';

    std::string digits;
    long scale = 0;
    bool seen_digit = false;
    bool seen_point = false;
    for (; pos < text.size(); ++pos) {
        const char c = text[pos];
        if (c >= '0' && c <= '9') {
            digits.push_back(c);
            seen_digit = true;
            if (seen_point)
                --scale;
        } else if (c == '.' && !seen_point) {
            seen_point = true;
        } else {
            break;
        }
    }
    if (!seen_digit)
        fail();

    if (pos < text.size()) {
        if (text[pos] != 'e' && text[pos] != 'E')
            fail();
        ++pos;
        bool exp_negative = false;
        if (pos < text.size() && (text[pos] == '+' || text[pos] == '-'))
            exp_negative = text[pos++] == '-';
        if (pos == text.size())
            fail();
        long exp = 0;
        for (; pos < text.size(); ++pos) {
            const char c = text[pos];
            if (c < '0' || c > '9')
                fail();
            exp = exp * 10 + (c - '0');
            if (exp > 100000)
                fail();
        }
        scale += exp_negative ? -exp : exp;
    }

    Rational value{BigInt(digits, 10)};
    if (scale > 0)
        value *= pow_int(10, static_cast<unsigned>(scale));
    else if (scale < 0)
        value /= pow_int(10, static_cast<unsigned>(-scale));
    value.canonicalize();
    return negative ? Rational(-value) : value;
}

BigInt parse_integer(std::string_view text)
{
    const auto fail = [&] {
        throw std::invalid_argument("not a non-negative integer: '" + std::string(text) + "'");
    };
    const auto parse_plain = [&](std::string_view part) {
        if (part.empty())
            fail();
        for (const char c : part)
            if (c < '0' || c > '9')
                fail();
        return BigInt(std::string(part), 10);
    };

    const auto caret = text.find('^');
    if (caret == std::string_view::npos)
        return parse_plain(text);
    const BigInt base = parse_plain(text.substr(0, caret));
    const BigInt exponent = parse_plain(text.substr(caret + 1));
    if (!exponent.fits_ulong_p() || exponent > 100000)
        fail();
    BigInt result;
    mpz_pow_ui(result.get_mpz_t(), base.get_mpz_t(), exponent.get_ui());
    return result;
}

std::string to_decimal(const BigInt& value)
{
    return value.get_str(10);
}

std::string to_fraction(const Rational& value)
{
    if (value.get_den() == 1)
        return value.get_num().get_str(10);
    return value.get_num().get_str(10) + "/" + value.get_den().get_str(10);
}

std::string format_log2(double value)
{
    if (std::isinf(value))
        return value < 0 ? "-inf" : "inf";
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.2f", value);
    return buffer;
}

}  // namespace binwise
