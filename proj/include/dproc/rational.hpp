#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/integer.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace dproc {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Int binomial(long long n, long long k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    Int r = 1;
    for (long long i = 1; i <= k; ++i) {
        r *= (n - k + i);
        r /= i;
    }
    return r;
}

// Parses "p/q", a plain integer, or a decimal like "0.25" (kept exact).
inline Rational parse_rational(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational");
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        Int p(s.substr(0, slash));
        Int q(s.substr(slash + 1));
        if (q == 0) throw std::invalid_argument("zero denominator: " + s);
        return Rational(p, q);
    }
    auto dot = s.find('.');
    if (dot != std::string::npos) {
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        size_t frac_len = s.size() - dot - 1;
        bool neg = false;
        if (!digits.empty() && (digits[0] == '-' || digits[0] == '+')) {
            neg = digits[0] == '-';
            digits.erase(digits.begin());
        }
        if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
            throw std::invalid_argument("bad rational: " + s);
        Int p = 0;
        for (char c : digits) p = p * 10 + (c - '0');
        if (neg) p = -p;
        Int q = 1;
        for (size_t i = 0; i < frac_len; ++i) q *= 10;
        return Rational(p, q);
    }
    return Rational(Int(s));
}

// Decimal rendering with round-half-even, `digits` places after the point.
inline std::string decimal_string(const Rational& r, int digits = 6) {
    if (digits < 0) throw std::invalid_argument("negative digit count");
    Int p = boost::multiprecision::numerator(r);
    Int q = boost::multiprecision::denominator(r);
    bool neg = p < 0;
    if (neg) p = -p;
    Int scale = 1;
    for (int i = 0; i < digits; ++i) scale *= 10;
    Int num = p * scale;
    Int quo = num / q;
    Int rem = num % q;
    Int twice = rem * 2;
    if (twice > q || (twice == q && (quo & 1) != 0)) ++quo;
    std::string s = quo.str();
    std::string out;
    if (digits == 0) {
        out = s;
    } else {
        while (static_cast<int>(s.size()) <= digits) s.insert(s.begin(), '0');
        out = s.substr(0, s.size() - digits) + "." + s.substr(s.size() - digits);
    }
    if (neg && quo != 0) out.insert(out.begin(), '-');
    return out;
}

inline std::string rational_string(const Rational& r) {
    Int p = boost::multiprecision::numerator(r);
    Int q = boost::multiprecision::denominator(r);
    if (q == 1) return p.str();
    return p.str() + "/" + q.str();
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline Rational abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

}  // namespace dproc
