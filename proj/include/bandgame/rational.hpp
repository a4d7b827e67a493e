#pragma once

#include <boost/rational.hpp>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace bandgame {

// Exact arithmetic for prices, funds and budget boundaries. Magnitudes in
// this domain are tiny (funds <= 1, unit counts <= a few hundred), so a
// 64-bit rational never overflows in core/equilibrium code paths.
using Rat = boost::rational<long long>;

inline long long rat_floor(const Rat& r) {
    long long q = r.numerator() / r.denominator();
    if (r.numerator() % r.denominator() != 0 && r.numerator() < 0) --q;
    return q;
}

inline long long rat_ceil(const Rat& r) { return -rat_floor(-r); }

// Nearest integer, ties to even. Used for the scenario generators' value
// rounding rule.
inline long long rat_round_half_even(const Rat& r) {
    long long lo = rat_floor(r);
    Rat frac = r - Rat(lo);
    if (frac < Rat(1, 2)) return lo;
    if (frac > Rat(1, 2)) return lo + 1;
    return (lo % 2 == 0) ? lo : lo + 1;
}

inline double rat_to_double(const Rat& r) {
    return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

// Best rational approximation of a double with bounded denominator, via the
// continued-fraction expansion. Recovers the intended fraction from decimal
// JSON values (0.625 -> 5/8, 0.1 -> 1/10) exactly.
inline Rat rat_from_double(double x, long long max_den = 1'000'000) {
    if (!std::isfinite(x)) throw std::invalid_argument("rat_from_double: non-finite value");
    bool neg = x < 0;
    double v = neg ? -x : x;
    long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double frac = v;
    for (int iter = 0; iter < 64; ++iter) {
        double fa = std::floor(frac);
        if (fa > static_cast<double>(max_den)) break;
        long long a = static_cast<long long>(fa);
        long long p2 = a * p1 + p0;
        long long q2 = a * q1 + q0;
        if (q2 > max_den) break;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        double rem = frac - fa;
        if (rem < 1e-13) break;
        frac = 1.0 / rem;
    }
    if (q1 == 0) throw std::invalid_argument("rat_from_double: no approximation");
    Rat r(p1, q1);
    return neg ? -r : r;
}

inline std::string rat_to_string(const Rat& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

// Fixed formatting for CSV/JSON emission; %.10g keeps short decimals short
// and is byte-stable across runs.
inline std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return std::string(buf);
}

}  // namespace bandgame
