#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace condent {

/// Exact arithmetic backend. Probabilities read from files are always kept
/// in this form; the engine converts to its working scalar on demand.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Per-scalar tolerances and conversions. Exact scalars have zero tolerances.
template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
    static constexpr bool exact = false;
    static double pivot_eps() { return 1e-11; }
    static double feas_eps() { return 1e-9; }
    static double from_rational(const Rational& r) { return static_cast<double>(r); }
    static double from_double(double d) { return d; }
    static double to_double(double d) { return d; }
    static std::string to_string(double d) {
        std::ostringstream os;
        os.precision(12);
        os << d;
        return os.str();
    }
};

template <>
struct ScalarTraits<Rational> {
    static constexpr bool exact = true;
    static Rational pivot_eps() { return Rational(0); }
    static Rational feas_eps() { return Rational(0); }
    static Rational from_rational(const Rational& r) { return r; }
    // Every finite double is a dyadic rational, so this conversion is exact.
    static Rational from_double(double d) { return Rational(d); }
    static double to_double(const Rational& r) { return static_cast<double>(r); }
    static std::string to_string(const Rational& r) {
        if (denominator(r) == 1) return numerator(r).str();
        return numerator(r).str() + "/" + denominator(r).str();
    }
};

template <class T>
T abs_value(const T& x) {
    return x < T(0) ? T(-x) : x;
}

namespace detail {

// cpp_int reads a leading 0 as an octal prefix.
inline std::string decimal_digits(std::string_view digits, bool negative) {
    std::size_t first = digits.find_first_not_of('0');
    std::string out = first == std::string_view::npos ? "0" : std::string(digits.substr(first));
    return negative ? "-" + out : out;
}

}  // namespace detail

/// Parses `p/q`, an integer, or a decimal literal (`0.7`, `.5`, `1e-3`) exactly.
inline Rational parse_rational(std::string_view text) {
    auto fail = [&] { throw std::invalid_argument("malformed number '" + std::string(text) + "'"); };
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (text.empty()) fail();

    auto parse_int = [&](std::string_view s) {
        if (s.empty()) fail();
        std::size_t i = 0;
        if (s[0] == '+' || s[0] == '-') ++i;
        if (i == s.size()) fail();
        for (std::size_t j = i; j < s.size(); ++j)
            if (!std::isdigit(static_cast<unsigned char>(s[j]))) fail();
        return BigInt(detail::decimal_digits(s.substr(i), s[0] == '-'));
    };

    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        BigInt num = parse_int(text.substr(0, slash));
        BigInt den = parse_int(text.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
        return Rational(num, den);
    }

    std::string_view mantissa = text;
    long exponent = 0;
    if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
        mantissa = text.substr(0, e);
        std::string_view exp_text = text.substr(e + 1);
        BigInt ev = parse_int(exp_text);
        if (ev > 4000 || ev < -4000) fail();
        exponent = ev.convert_to<long>();
    }

    bool negative = false;
    if (!mantissa.empty() && (mantissa[0] == '+' || mantissa[0] == '-')) {
        negative = mantissa[0] == '-';
        mantissa.remove_prefix(1);
    }
    std::string digits;
    long frac_digits = 0;
    bool seen_dot = false;
    for (char c : mantissa) {
        if (c == '.') {
            if (seen_dot) fail();
            seen_dot = true;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            digits.push_back(c);
            if (seen_dot) ++frac_digits;
        } else {
            fail();
        }
    }
    if (digits.empty()) fail();

    BigInt num(detail::decimal_digits(digits, negative));
    long scale = exponent - frac_digits;
    BigInt ten_pow = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(std::labs(scale)));
    return scale >= 0 ? Rational(num * ten_pow) : Rational(num, ten_pow);
}

}  // namespace condent
