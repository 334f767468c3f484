// Exact rationals for interval rankings (clean rankings are integral,
// raw ones may not be). Serialized as "p/q", integers bare.
#pragma once

#include "mw/common.hpp"

#include <cstdint>
#include <numeric>
#include <string>

namespace mw {

struct Rat {
    long long num = 0;
    long long den = 1; // always > 0

    Rat() = default;
    Rat(long long n) : num(n), den(1) {}
    Rat(long long n, long long d) : num(n), den(d) { normalize(); }

    void normalize()
    {
        if (den == 0) throw std::invalid_argument("rational with zero denominator");
        if (den < 0) { num = -num; den = -den; }
        long long g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
        if (num == 0) den = 1;
    }

    bool is_integer() const { return den == 1; }

    bool operator==(const Rat&) const = default;

    friend bool operator<(const Rat& a, const Rat& b)
    {
        return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
    }
    friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
    friend bool operator<=(const Rat& a, const Rat& b) { return !(b < a); }
    friend bool operator>=(const Rat& a, const Rat& b) { return !(a < b); }

    friend Rat operator+(const Rat& a, const Rat& b) { return Rat(a.num * b.den + b.num * a.den, a.den * b.den); }
    friend Rat operator-(const Rat& a, const Rat& b) { return Rat(a.num * b.den - b.num * a.den, a.den * b.den); }
    friend Rat operator*(const Rat& a, const Rat& b) { return Rat(a.num * b.num, a.den * b.den); }
    friend Rat operator/(const Rat& a, const Rat& b)
    {
        if (b.num == 0) throw std::invalid_argument("rational division by zero");
        return Rat(a.num * b.den, a.den * b.num);
    }
};

inline Rat min(const Rat& a, const Rat& b) { return a < b ? a : b; }
inline Rat max(const Rat& a, const Rat& b) { return a < b ? b : a; }

inline std::string to_string(const Rat& r)
{
    if (r.den == 1) return std::to_string(r.num);
    return std::to_string(r.num) + "/" + std::to_string(r.den);
}

inline Rat parse_rational(const std::string& tok, int line = 0)
{
    try {
        auto slash = tok.find('/');
        if (slash == std::string::npos) {
            size_t pos = 0;
            long long n = std::stoll(tok, &pos);
            if (pos != tok.size()) throw std::invalid_argument(tok);
            return Rat(n);
        }
        size_t pos = 0;
        long long n = std::stoll(tok.substr(0, slash), &pos);
        if (pos != slash) throw std::invalid_argument(tok);
        long long d = std::stoll(tok.substr(slash + 1), &pos);
        if (pos != tok.size() - slash - 1 || d <= 0) throw std::invalid_argument(tok);
        return Rat(n, d);
    } catch (const std::exception&) {
        throw ParseError("bad rational '" + tok + "'", line);
    }
}

// Closed interval [lo, hi] with lo <= hi.
struct Interval {
    Rat lo, hi;

    bool operator==(const Interval&) const = default;
    bool contains(const Rat& x) const { return lo <= x && x <= hi; }
    friend bool intersects(const Interval& a, const Interval& b)
    {
        return max(a.lo, b.lo) <= min(a.hi, b.hi);
    }
};

} // namespace mw
