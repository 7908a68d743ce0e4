#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "bulgsol/error.hpp"

namespace bulgsol {

/// Exact rational with 64-bit numerator/denominator. Products go through
/// 128-bit intermediates so pile sizes up to ~10^12 never round.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;

    Rational(std::int64_t n, std::int64_t d) {
        if (d == 0) fail(ErrorCode::BadInput, "rational with zero denominator");
        if (d < 0) { n = -n; d = -d; }
        const std::int64_t g = std::gcd(n < 0 ? -n : n, d);
        num = (g != 0) ? n / g : n;
        den = (g != 0) ? d / g : d;
    }

    static Rational of(std::int64_t n, std::int64_t d = 1) { return Rational(n, d); }

    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

    /// ceil(num*h/den) for h >= 0.
    std::int64_t ceil_mul(std::int64_t h) const {
        if (num == 1 && h >= 0) return (h + den - 1) / den;
        const __int128 p = static_cast<__int128>(num) * h;
        __int128 q = p / den;
        if (p % den != 0 && p > 0) ++q;
        if (q > INT64_MAX || q < INT64_MIN) fail(ErrorCode::Overflow, "rational ceil_mul overflow");
        return static_cast<std::int64_t>(q);
    }

    /// floor(num*h/den) for h >= 0.
    std::int64_t floor_mul(std::int64_t h) const {
        const __int128 p = static_cast<__int128>(num) * h;
        __int128 q = p / den;
        if (p % den != 0 && p < 0) --q;
        if (q > INT64_MAX || q < INT64_MIN) fail(ErrorCode::Overflow, "rational floor_mul overflow");
        return static_cast<std::int64_t>(q);
    }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num == b.num && a.den == b.den;
    }

    friend bool operator<(const Rational& a, const Rational& b) {
        return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
    }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }

    std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }

    /// Parses "3/10" or a bare integer "1".
    static Rational parse(const std::string& text);
};

} // namespace bulgsol
