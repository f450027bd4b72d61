#pragma once
// Exact rational score arithmetic and its decimal rendering.
//
// All indicator values are computed as exact rationals and only converted to
// decimal text at the output boundary (12 significant digits, round half to
// even), so golden files are bit-stable across runs and parallelism levels.

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "disruptkit/errors.hpp"

namespace disruptkit {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_ratio(std::int64_t num, std::int64_t den = 1) {
    return Rational(BigInt(num), BigInt(den));
}

// Smallest integer >= r.
inline BigInt ceil_rational(const Rational& r) {
    BigInt q = numerator(r) / denominator(r);
    if (numerator(r) > 0 && q * denominator(r) != numerator(r)) ++q;
    return q;
}

// Renders |digits|=sig significant digits without exponent notation.
// Exact: never round-trips through floating point.
std::string format_decimal(const Rational& value, int significant_digits = 12);

// Integer components print bare ("90"), fractional ones as 12-digit decimals.
std::string format_component(const Rational& value);

// Parses "3", "-0.5", "12.25" exactly. Throws UsageError on malformed text.
Rational parse_decimal(std::string_view text);

double to_double(const Rational& value);

}  // namespace disruptkit
