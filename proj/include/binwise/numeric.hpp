#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace binwise {

/// Unbounded-width integer used for capacities, counts and budgets.
using BigInt = mpz_class;
/// Exact rational used for densities and expected values.
using Rational = mpq_class;

BigInt pow_int(std::uint64_t base, unsigned exponent);

/// num / den in canonical form (den must be non-zero).
inline Rational ratio(const BigInt& num, const BigInt& den)
{
    Rational r(num, den);
    r.canonicalize();
    return r;
}

/// log2 of a positive integer; -inf for zero.
double log2_of(const BigInt& value);
/// log2 of a non-negative rational; -inf for zero.
double log2_of(const Rational& value);

/// floor(2^exponent), computed from a 64-bit mantissa so large exponents stay
/// deterministic across runs.
BigInt budget_from_log2(double exponent);

/// Parses a decimal literal such as "350e9", "2.5", "0.4" or "12" into an exact
/// rational. Throws std::invalid_argument on anything else.
Rational parse_decimal(std::string_view text);

/// Parses a non-negative decimal integer string ("208827064576"). Also accepts
/// power notation "2^56" and "95^10".
BigInt parse_integer(std::string_view text);

std::string to_decimal(const BigInt& value);
/// "num/den", or just "num" when the denominator is one.
std::string to_fraction(const Rational& value);

/// Formats log2 with two decimals, the convention used in reports.
std::string format_log2(double value);

}  // namespace binwise
