#include "disruptkit/rational.hpp"

#include <cctype>

namespace disruptkit {

namespace {

BigInt pow10(int e) {
    BigInt p = 1;
    for (int i = 0; i < e; ++i) p *= 10;
    return p;
}

// floor(log10(n/d)) for n, d > 0.
int decimal_exponent(const BigInt& n, const BigInt& d) {
    if (n >= d) {
        BigInt q = n / d;
        int e = -1;
        while (q > 0) {
            q /= 10;
            ++e;
        }
        return e;
    }
    int e = 0;
    BigInt scaled = n;
    while (scaled < d) {
        scaled *= 10;
        --e;
    }
    return e;
}

// round-half-even of n/d, n >= 0, d > 0.
BigInt round_half_even(const BigInt& n, const BigInt& d) {
    BigInt q = n / d;
    BigInt twice_rem = (n - q * d) * 2;
    if (twice_rem > d || (twice_rem == d && (q & 1) != 0)) ++q;
    return q;
}

}  // namespace

std::string format_decimal(const Rational& value, int significant_digits) {
    const int sig = significant_digits;
    if (value == 0) return "0";
    const bool negative = value < 0;
    BigInt n = numerator(value);
    if (negative) n = -n;
    const BigInt d = denominator(value);

    int e = decimal_exponent(n, d);
    // digits = round(|value| * 10^(sig-1-e)), a sig-digit integer.
    int shift = sig - 1 - e;
    BigInt digits = shift >= 0 ? round_half_even(n * pow10(shift), d)
                               : round_half_even(n, d * pow10(-shift));
    if (digits == pow10(sig)) {  // rounding carried into an extra digit
        digits = pow10(sig - 1);
        ++e;
    }

    std::string s = digits.str();
    std::string out;
    if (e >= sig - 1) {
        out = s + std::string(static_cast<std::size_t>(e - (sig - 1)), '0');
    } else if (e >= 0) {
        out = s.substr(0, static_cast<std::size_t>(e + 1)) + "." +
              s.substr(static_cast<std::size_t>(e + 1));
    } else {
        out = "0." + std::string(static_cast<std::size_t>(-e - 1), '0') + s;
    }
    return negative ? "-" + out : out;
}

std::string format_component(const Rational& value) {
    if (denominator(value) == 1) return numerator(value).str();
    return format_decimal(value);
}

Rational parse_decimal(std::string_view text) {
    std::size_t pos = 0;
    bool negative = false;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
        negative = text[pos] == '-';
        ++pos;
    }
    BigInt mantissa = 0;
    int frac_digits = 0;
    bool seen_digit = false, seen_dot = false;
    for (; pos < text.size(); ++pos) {
        char c = text[pos];
        if (c == '.') {
            if (seen_dot) throw UsageError("malformed decimal: " + std::string(text));
            seen_dot = true;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            mantissa = mantissa * 10 + (c - '0');
            if (seen_dot) ++frac_digits;
            seen_digit = true;
        } else {
            throw UsageError("malformed decimal: " + std::string(text));
        }
    }
    if (!seen_digit) throw UsageError("malformed decimal: " + std::string(text));
    Rational r(mantissa, pow10(frac_digits));
    return negative ? -r : r;
}

double to_double(const Rational& value) {
    return value.convert_to<double>();
}

}  // namespace disruptkit
