#pragma once

// Exact rational scalars and the combinatorial coefficients used everywhere
// else. Rational is boost::multiprecision::cpp_rational: an arbitrary-
// precision fraction kept canonical (denominator > 0, gcd(|num|, den) = 1)
// after every operation. No floating point is involved anywhere.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace exactlyone {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// C(n, m). Returns 0 when m < 0 or m > n, so sums of the form
// sum_m C(n-t, m-t) x_m can run over the full index range uniformly.
inline Integer binomial(int n, int m) {
    if (m < 0 || m > n || n < 0) return 0;
    if (m > n - m) m = n - m;
    Integer result = 1;
    for (int i = 1; i <= m; ++i) {
        result *= n - m + i;
        result /= i;  // exact: product of i consecutive integers is divisible by i!
    }
    return result;
}

// Exact x^t with the convention x^0 = 1 (including 0^0).
inline Rational rational_pow(const Rational& x, unsigned t) {
    Rational result = 1;
    Rational base = x;
    for (unsigned e = t; e != 0; e >>= 1) {
        if (e & 1) result *= base;
        if (e > 1) base *= base;
    }
    return result;
}

// Parses an integer ("7", "-3"), a fraction ("a/b", b != 0), or a finite
// decimal ("0.25", "-1.5", ".5") into canonical form.
inline Rational rational_parse(std::string_view text) {
    const auto fail = [&](const char* why) -> Rational {
        throw std::invalid_argument(std::string("bad rational '") +
                                    std::string(text) + "': " + why);
    };

    std::string_view s = text;
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    if (s.empty()) return fail("empty");

    bool negative = false;
    if (s.front() == '+' || s.front() == '-') {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }

    const auto digits = [](std::string_view v) {
        for (char c : v)
            if (c < '0' || c > '9') return false;
        return !v.empty();
    };

    Rational value;
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        std::string_view num = s.substr(0, slash);
        std::string_view den = s.substr(slash + 1);
        if (!digits(num) || !digits(den)) return fail("expected digits/digits");
        Integer d(std::string(den));
        if (d == 0) return fail("zero denominator");
        value = Rational(Integer(std::string(num)), d);
    } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
        std::string_view whole = s.substr(0, dot);
        std::string_view frac = s.substr(dot + 1);
        if (whole.empty() && frac.empty()) return fail("expected digits around '.'");
        if (!whole.empty() && !digits(whole)) return fail("bad integer part");
        if (!frac.empty() && !digits(frac)) return fail("bad fractional part");
        Integer w = whole.empty() ? Integer(0) : Integer(std::string(whole));
        Integer f = frac.empty() ? Integer(0) : Integer(std::string(frac));
        Integer scale = 1;
        for (size_t i = 0; i < frac.size(); ++i) scale *= 10;
        value = Rational(w * scale + f, scale);
    } else {
        if (!digits(s)) return fail("expected digits");
        value = Rational(Integer(std::string(s)));
    }
    return negative ? -value : value;
}

// "a" for integers, "a/b" otherwise; always canonical.
inline std::string to_string(const Rational& x) {
    std::string out = numerator(x).str();
    if (denominator(x) != 1) {
        out += '/';
        out += denominator(x).str();
    }
    return out;
}

// Fixed-point rendering with exactly `digits` fractional digits, produced by
// exact long division and truncated toward zero.
inline std::string decimal_string(const Rational& x, int digits) {
    if (digits < 0) throw std::invalid_argument("digits must be >= 0");
    Integer num = numerator(x);
    const Integer& den = denominator(x);
    std::string out;
    if (num < 0) {
        out += '-';
        num = -num;
    }
    out += Integer(num / den).str();
    if (digits > 0) {
        out += '.';
        Integer rem = num % den;
        for (int i = 0; i < digits; ++i) {
            rem *= 10;
            out += static_cast<char>('0' + static_cast<int>(Integer(rem / den)));
            rem %= den;
        }
    }
    return out;
}

inline Integer floor_rational(const Rational& x) {
    Integer q = numerator(x) / denominator(x);  // truncates toward zero
    if (numerator(x) < 0 && numerator(x) % denominator(x) != 0) --q;
    return q;
}

inline Integer ceil_rational(const Rational& x) {
    Integer q = numerator(x) / denominator(x);
    if (numerator(x) > 0 && numerator(x) % denominator(x) != 0) ++q;
    return q;
}

}  // namespace exactlyone
