#pragma once

#include "igusa/errors.hpp"
#include "igusa/numeric.hpp"
#include "igusa/qpoly.hpp"

#include <utility>
#include <vector>

namespace igusa {

// An exact rational function in t = p^{-s} with rational coefficients.
// Canonical form: gcd(num, den) = 1 and den monic; the zero function is
// 0/1. Equality of canonical forms is coefficient-list equality.
class ZetaRational {
public:
    ZetaRational() : num_(), den_(QPoly::constant(Rat(1))), p_(0) {}

    ZetaRational(QPoly num, QPoly den, Int p)
        : num_(std::move(num)), den_(std::move(den)), p_(std::move(p)) {
        if (den_.is_zero())
            throw Error(ErrorCategory::Internal, "ZetaRational with zero denominator");
        canonicalize();
    }

    static ZetaRational zero(const Int& p) { return ZetaRational(QPoly(), QPoly::constant(Rat(1)), p); }
    static ZetaRational constant(const Rat& v, const Int& p) {
        return ZetaRational(QPoly::constant(v), QPoly::constant(Rat(1)), p);
    }

    const QPoly& numerator() const { return num_; }
    const QPoly& denominator() const { return den_; }
    const Int& prime() const { return p_; }

    friend ZetaRational operator+(const ZetaRational& a, const ZetaRational& b) {
        a.check_same_prime(b);
        return ZetaRational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_, a.p_);
    }

    friend ZetaRational operator-(const ZetaRational& a, const ZetaRational& b) {
        a.check_same_prime(b);
        return ZetaRational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_, a.p_);
    }

    friend ZetaRational operator*(const ZetaRational& a, const ZetaRational& b) {
        a.check_same_prime(b);
        return ZetaRational(a.num_ * b.num_, a.den_ * b.den_, a.p_);
    }

    friend ZetaRational operator*(const Rat& s, const ZetaRational& a) {
        return ZetaRational(s * a.num_, a.den_, a.p_);
    }

    // Equality as rational functions (canonical forms are unique, but
    // cross-multiplication keeps this independent of normalization).
    friend bool operator==(const ZetaRational& a, const ZetaRational& b) {
        return a.num_ * b.den_ == b.num_ * a.den_;
    }

    bool is_zero() const { return num_.is_zero(); }

    // Power-series coefficients of t^0..t^{degree} by long division;
    // requires den(0) != 0, which holds for every measure-valued Z(t).
    std::vector<Rat> series(long degree) const {
        Rat d0 = den_.coeff(0);
        if (d0 == 0)
            throw Error(ErrorCategory::Internal, "ZetaRational series: pole at t = 0");
        std::vector<Rat> out(static_cast<size_t>(degree) + 1, Rat(0));
        for (long k = 0; k <= degree; ++k) {
            Rat acc = num_.coeff(k);
            for (long j = 1; j <= k; ++j) acc -= den_.coeff(j) * out[static_cast<size_t>(k - j)];
            out[static_cast<size_t>(k)] = acc / d0;
        }
        return out;
    }

    // Evaluate at a real t with |t| < 1 (presentation only).
    double eval_double(double t) const {
        auto horner = [t](const QPoly& q) {
            double r = 0;
            for (long i = q.degree(); i >= 0; --i)
                r = r * t + static_cast<double>(q.coeff(i));
            return r;
        };
        return horner(num_) / horner(den_);
    }

private:
    void check_same_prime(const ZetaRational& other) const {
        if (p_ != other.p_ && p_ != 0 && other.p_ != 0)
            throw Error(ErrorCategory::Internal, "mixing zeta functions of different primes");
    }

    void canonicalize() {
        if (num_.is_zero()) {
            den_ = QPoly::constant(Rat(1));
            return;
        }
        QPoly g = QPoly::gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = QPoly::divmod(num_, g).first;
            den_ = QPoly::divmod(den_, g).first;
        }
        Rat lead = den_.leading();
        num_ = Rat(1) / lead * num_;
        den_ = Rat(1) / lead * den_;
    }

    QPoly num_;
    QPoly den_;
    Int p_;
};

} // namespace igusa
