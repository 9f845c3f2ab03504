#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

#include "air/error.hpp"

namespace air {

/// Exact rational number, always canonical (lowest terms, positive denominator).
using Rational = mpq_class;

inline int sign(const Rational& q) { return sgn(q); }

/// Parses "n", "-n", "p/q" or a decimal literal such as "0.25".
inline Rational parse_rational(std::string_view text) {
    std::string s(text);
    auto bad = [&]() { fail("ParseError", "not a rational number: '" + s + "'"); };
    if (s.empty()) bad();
    std::string t;
    for (char c : s)
        if (c != ' ') t.push_back(c);
    if (t.empty()) bad();
    auto dot = t.find('.');
    try {
        if (dot != std::string::npos) {
            if (t.find('/') != std::string::npos) bad();
            std::string whole = t.substr(0, dot), frac = t.substr(dot + 1);
            bool neg = !whole.empty() && whole[0] == '-';
            if (neg || (!whole.empty() && whole[0] == '+')) whole.erase(0, 1);
            if (whole.empty()) whole = "0";
            for (char c : whole + frac)
                if (c < '0' || c > '9') bad();
            Rational q(mpz_class(whole + frac, 10), mpz_class("1" + std::string(frac.size(), '0'), 10));
            q.canonicalize();
            return neg ? Rational(-q) : q;
        }
        for (std::size_t i = 0; i < t.size(); ++i) {
            char c = t[i];
            bool ok = (c >= '0' && c <= '9') || c == '/' || ((c == '-' || c == '+') && (i == 0 || t[i - 1] == '/'));
            if (!ok) bad();
        }
        if (t[0] == '+') t.erase(0, 1);
        Rational q(t, 10);
        if (q.get_den() == 0) fail("ParseError", "zero denominator in '" + s + "'");
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        bad();
    }
    return {};
}

/// "n" for integers, "p/q" otherwise.
inline std::string to_string(const Rational& q) { return q.get_str(10); }

/// Always "p/q", including integers ("3/1").
inline std::string to_fraction_string(const Rational& q) {
    return q.get_num().get_str(10) + "/" + q.get_den().get_str(10);
}

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
    Rational q(static_cast<long>(num), static_cast<long>(den));
    q.canonicalize();
    return q;
}

/// Fixed-point decimal rendering with `digits` fractional digits, rounded half away from zero.
inline std::string to_decimal(const Rational& q, int digits) {
    mpz_class scale = 1;
    for (int i = 0; i < digits; ++i) scale *= 10;
    mpz_class num = q.get_num() * scale, den = q.get_den();
    bool neg = num < 0;
    if (neg) num = -num;
    mpz_class scaled = (2 * num + den) / (2 * den);
    std::string s = scaled.get_str(10);
    if (static_cast<int>(s.size()) <= digits) s = std::string(digits + 1 - s.size(), '0') + s;
    std::string out = s.substr(0, s.size() - digits);
    if (digits > 0) out += "." + s.substr(s.size() - digits);
    if (neg && scaled != 0) out = "-" + out;
    return out;
}

}  // namespace air
