#pragma once

#include "igusa/errors.hpp"
#include "igusa/numeric.hpp"

#include <algorithm>
#include <utility>
#include <vector>

namespace igusa {

// Dense univariate polynomial over Q, coefficient of t^i at index i.
// The zero polynomial is the empty coefficient vector (degree -1).
class QPoly {
public:
    QPoly() = default;
    explicit QPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }
    static QPoly constant(Rat v) { return QPoly(std::vector<Rat>{std::move(v)}); }
    static QPoly monomial(const Rat& v, long degree) {
        std::vector<Rat> c(static_cast<size_t>(degree) + 1, Rat(0));
        c.back() = v;
        return QPoly(std::move(c));
    }

    long degree() const { return static_cast<long>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<Rat>& coeffs() const { return c_; }

    Rat coeff(long i) const {
        if (i < 0 || i > degree()) return Rat(0);
        return c_[static_cast<size_t>(i)];
    }

    Rat leading() const { return c_.empty() ? Rat(0) : c_.back(); }

    Rat eval(const Rat& x) const {
        Rat r(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
        return r;
    }

    friend QPoly operator+(const QPoly& a, const QPoly& b) {
        std::vector<Rat> r(std::max(a.c_.size(), b.c_.size()), Rat(0));
        for (size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
        for (size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
        return QPoly(std::move(r));
    }

    friend QPoly operator-(const QPoly& a, const QPoly& b) {
        std::vector<Rat> r(std::max(a.c_.size(), b.c_.size()), Rat(0));
        for (size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
        for (size_t i = 0; i < b.c_.size(); ++i) r[i] -= b.c_[i];
        return QPoly(std::move(r));
    }

    friend QPoly operator*(const QPoly& a, const QPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Rat> r(a.c_.size() + b.c_.size() - 1, Rat(0));
        for (size_t i = 0; i < a.c_.size(); ++i)
            for (size_t j = 0; j < b.c_.size(); ++j)
                r[i + j] += a.c_[i] * b.c_[j];
        return QPoly(std::move(r));
    }

    friend QPoly operator*(const Rat& s, const QPoly& a) {
        if (s == 0) return {};
        std::vector<Rat> r = a.c_;
        for (auto& x : r) x *= s;
        return QPoly(std::move(r));
    }

    friend bool operator==(const QPoly& a, const QPoly& b) { return a.c_ == b.c_; }

    // Quotient and remainder; divisor must be nonzero.
    static std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b) {
        if (b.is_zero()) throw Error(ErrorCategory::Internal, "QPoly division by zero");
        QPoly rem = a;
        std::vector<Rat> q(a.c_.size() > b.c_.size() ? a.c_.size() - b.c_.size() + 1 : 1, Rat(0));
        Rat lead = b.leading();
        while (!rem.is_zero() && rem.degree() >= b.degree()) {
            long shift = rem.degree() - b.degree();
            Rat f = rem.leading() / lead;
            q[static_cast<size_t>(shift)] = f;
            rem = rem - QPoly::monomial(f, shift) * b;
        }
        return {QPoly(std::move(q)), rem};
    }

    QPoly monic() const {
        if (is_zero()) return {};
        return Rat(1) / leading() * *this;
    }

    // Monic gcd by the Euclidean remainder sequence.
    static QPoly gcd(QPoly a, QPoly b) {
        while (!b.is_zero()) {
            QPoly r = divmod(a, b).second;
            a = std::move(b);
            b = r.monic();
        }
        return a.monic();
    }

    QPoly derivative() const {
        if (c_.size() <= 1) return {};
        std::vector<Rat> r(c_.size() - 1);
        for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = Rat(Int(i)) * c_[i];
        return QPoly(std::move(r));
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::vector<Rat> c_;
};

} // namespace igusa
