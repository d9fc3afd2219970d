#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace rainbow {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Falling factorial (n)_k = n(n-1)...(n-k+1), with (n)_0 = 1 (so (0)_0 = 1).
inline BigInt falling_factorial(const BigInt& n, std::uint64_t k) {
    BigInt out = 1;
    for (std::uint64_t i = 0; i < k; ++i)
        out *= n - i;
    return out;
}

inline BigInt binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n)
        return 0;
    if (k > n - k)
        k = n - k;
    BigInt out = 1;
    for (std::uint64_t i = 0; i < k; ++i) {
        out *= n - i;
        out /= i + 1; // exact: prefix products of binomials are integers
    }
    return out;
}

inline BigInt int_pow(const BigInt& base, std::uint64_t e) {
    BigInt out = 1;
    BigInt b = base;
    while (e > 0) {
        if (e & 1)
            out *= b;
        b *= b;
        e >>= 1;
    }
    return out;
}

inline BigInt factorial(std::uint64_t n) { return falling_factorial(n, n); }

// Fractions serialize as "p/q" everywhere; plain integers are accepted on input.
inline std::string to_fraction_string(const Rational& x) {
    return numerator(x).str() + "/" + denominator(x).str();
}

// Human-facing form: drop the "/1" on integers.
inline std::string to_display_string(const Rational& x) {
    if (denominator(x) == 1)
        return numerator(x).str();
    return to_fraction_string(x);
}

inline Rational parse_rational(const std::string& text) {
    auto begin = text.find_first_not_of(" \t");
    auto end = text.find_last_not_of(" \t");
    if (begin == std::string::npos)
        throw std::invalid_argument("not a fraction: '" + text + "'");
    std::string body = text.substr(begin, end - begin + 1);
    auto slash = body.find('/');
    try {
        if (slash == std::string::npos)
            return Rational(BigInt(body));
        BigInt num(body.substr(0, slash));
        BigInt den(body.substr(slash + 1));
        if (den == 0)
            throw std::invalid_argument("zero denominator");
        return Rational(num, den);
    } catch (const std::exception&) {
        throw std::invalid_argument("not a fraction: '" + text + "'");
    }
}

// Smallest integer strictly greater than x.
inline BigInt minimal_beating_integer(const Rational& x) {
    BigInt q = numerator(x) / denominator(x); // truncates toward zero
    if (q * denominator(x) > numerator(x))
        --q; // fix truncation for negatives
    return q + 1;
}

// Rational upper bound on sqrt(x), x >= 0. Used for standard-error bounds,
// where any sound overestimate will do.
inline Rational sqrt_upper_bound(const Rational& x) {
    if (x < 0)
        throw std::domain_error("sqrt of negative rational");
    if (x == 0)
        return 0;
    BigInt num = numerator(x), den = denominator(x);
    BigInt sn = sqrt(num), sd = sqrt(den); // floor integer sqrt, sd >= 1
    if (sn * sn < num)
        ++sn;
    return Rational(sn, sd);
}

} // namespace rainbow
