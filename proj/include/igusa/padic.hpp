#pragma once

#include "igusa/errors.hpp"
#include "igusa/numeric.hpp"

#include <compare>

namespace igusa {

// Valuation of a residue known modulo p^M. When exact is false the residue
// is zero at this precision and all we know is v >= bound (= M).
struct Valuation {
    long bound = 0;
    bool exact = true;

    friend bool operator==(const Valuation&, const Valuation&) = default;
};

// An element of Z/p^M with tracked precision: the computational stand-in
// for a p-adic integer known to M digits.
class PadicApprox {
public:
    PadicApprox(Int value, long precision, Int prime)
        : p_(std::move(prime)), precision_(precision) {
        if (precision_ <= 0)
            throw ValidationError("PadicApprox precision must be positive");
        modulus_ = ipow(p_, static_cast<unsigned long>(precision_));
        value_ = mod_canonical(value, modulus_);
    }

    const Int& value() const { return value_; }
    long precision() const { return precision_; }
    const Int& prime() const { return p_; }
    const Int& modulus() const { return modulus_; }

    // Largest v <= M with p^v | value; "at least M" when the residue is 0.
    Valuation valuation() const {
        if (value_ == 0) return {precision_, false};
        return {vp(value_, p_), true};
    }

    PadicApprox reduced_to(long m) const {
        if (m > precision_)
            throw PreconditionViolated("cannot raise precision of a PadicApprox");
        return PadicApprox(value_, m, p_);
    }

    bool congruent(const PadicApprox& other, long m) const {
        if (m > precision_ || m > other.precision_)
            throw PreconditionViolated("congruence check beyond known precision");
        Int pm = ipow(p_, static_cast<unsigned long>(m));
        return p_ == other.p_ && mod_canonical(value_ - other.value_, pm) == 0;
    }

private:
    Int p_;
    long precision_;
    Int modulus_;
    Int value_;
};

// The ball center + p^m Z_p. Centers are carried at precision >= m.
struct Ball {
    PadicApprox center;
    long radius_exponent; // m >= 0

    Ball(PadicApprox c, long m) : center(std::move(c)), radius_exponent(m) {
        if (m < 0) throw ValidationError("ball radius exponent must be >= 0");
        if (center.precision() < m)
            throw ValidationError("ball center precision below radius exponent");
    }

    bool same_ball(const Ball& other) const {
        return radius_exponent == other.radius_exponent &&
               (radius_exponent == 0 || center.congruent(other.center, radius_exponent));
    }

    Rat measure() const {
        return Rat(1, ipow(center.prime(), static_cast<unsigned long>(radius_exponent)));
    }
};

} // namespace igusa
