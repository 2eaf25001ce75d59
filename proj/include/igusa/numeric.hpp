#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace igusa {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Sentinel for "valuation of zero" in exact-rational contexts.
inline constexpr long val_infinity = std::numeric_limits<long>::max() / 4;

inline Int ipow(const Int& base, unsigned long e) {
    Int r = 1, b = base;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

// Canonical residue in [0, m), m > 0.
inline Int mod_canonical(const Int& x, const Int& m) {
    Int r = x % m;
    if (r < 0) r += m;
    return r;
}

// v_p of a nonzero integer; val_infinity for zero.
inline long vp(const Int& x, const Int& p) {
    if (x == 0) return val_infinity;
    Int y = x < 0 ? Int(-x) : x;
    long v = 0;
    while (y % p == 0) {
        y /= p;
        ++v;
    }
    return v;
}

// v_p of a rational (may be negative); val_infinity for zero.
inline long vp(const Rat& x, const Int& p) {
    if (x == 0) return val_infinity;
    return vp(numerator(x), p) - vp(denominator(x), p);
}

// Extended gcd: returns g = gcd(a, b) and x, y with a*x + b*y = g.
inline Int ext_gcd(Int a, Int b, Int& x, Int& y) {
    Int x0 = 1, y0 = 0, x1 = 0, y1 = 1;
    while (b != 0) {
        Int q = a / b;
        Int t = a - q * b; a = b; b = t;
        t = x0 - q * x1; x0 = x1; x1 = t;
        t = y0 - q * y1; y0 = y1; y1 = t;
    }
    x = x0;
    y = y0;
    return a;
}

// Inverse of a modulo m; requires gcd(a, m) = 1.
inline Int mod_inverse(const Int& a, const Int& m) {
    Int x, y;
    Int g = ext_gcd(mod_canonical(a, m), m, x, y);
    if (g != 1 && g != -1)
        throw std::domain_error("mod_inverse: element not invertible");
    return mod_canonical(x, m);
}

// Residue of a p-integral rational modulo m = p^M.
inline Int rat_mod(const Rat& r, const Int& m, const Int& p) {
    Int den = denominator(r);
    if (den % p == 0)
        throw std::domain_error("rat_mod: denominator divisible by p");
    Int num = mod_canonical(numerator(r), m);
    return mod_canonical(num * mod_inverse(den, m), m);
}

// Smallest integer >= r.
inline Int ceil_rat(const Rat& r) {
    Int q = numerator(r) / denominator(r);
    if (q * denominator(r) < numerator(r)) ++q;
    return q;
}

inline std::string to_string(const Int& x) { return x.str(); }

inline std::string to_string(const Rat& x) {
    if (denominator(x) == 1) return numerator(x).str();
    return numerator(x).str() + "/" + denominator(x).str();
}

} // namespace igusa
