#pragma once

#include "igusa/errors.hpp"
#include "igusa/numeric.hpp"
#include "igusa/padic.hpp"
#include "igusa/qpoly.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace igusa {

using Exponent = std::vector<long>;

inline long total_degree(const Exponent& e) {
    long s = 0;
    for (long x : e) s += x;
    return s;
}

// a dominates b coordinatewise (a >= b everywhere).
inline bool dominates(const Exponent& a, const Exponent& b) {
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] < b[i]) return false;
    return true;
}

struct Term {
    Exponent exponent;
    Rat coefficient;
};

// Finite multivariate polynomial with exact rational coefficients.
// Terms are kept sorted lexicographically with distinct exponents and
// nonzero coefficients.
class PolySeries {
public:
    explicit PolySeries(int n) : n_(n) {
        if (n < 1) throw ValidationError("polynomial needs at least one variable");
    }

    PolySeries(int n, std::vector<Term> terms) : PolySeries(n) {
        std::map<Exponent, Rat> acc;
        for (auto& t : terms) {
            if (static_cast<int>(t.exponent.size()) != n)
                throw ValidationError("exponent arity does not match variable count");
            for (long e : t.exponent)
                if (e < 0) throw ValidationError("negative exponent");
            acc[t.exponent] += t.coefficient;
        }
        for (auto& [e, c] : acc)
            if (c != 0) terms_.push_back({e, c});
    }

    static PolySeries monomial(int n, Exponent e, Rat c) {
        return PolySeries(n, {Term{std::move(e), std::move(c)}});
    }

    // One-variable polynomial from dense coefficients, index = degree.
    static PolySeries from_coeffs(const std::vector<Rat>& coeffs) {
        std::vector<Term> ts;
        for (size_t i = 0; i < coeffs.size(); ++i)
            if (coeffs[i] != 0) ts.push_back({Exponent{static_cast<long>(i)}, coeffs[i]});
        return PolySeries(1, std::move(ts));
    }

    int vars() const { return n_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Rat coefficient(const Exponent& e) const {
        auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                                   [](const Term& t, const Exponent& k) { return t.exponent < k; });
        if (it != terms_.end() && it->exponent == e) return it->coefficient;
        return Rat(0);
    }

    Rat constant_term() const { return coefficient(Exponent(n_, 0)); }

    long degree() const {
        long d = -1;
        for (const auto& t : terms_) d = std::max(d, total_degree(t.exponent));
        return d;
    }

    std::vector<Exponent> support() const {
        std::vector<Exponent> s;
        s.reserve(terms_.size());
        for (const auto& t : terms_) s.push_back(t.exponent);
        return s;
    }

    friend PolySeries operator+(const PolySeries& a, const PolySeries& b) {
        check_arity(a, b);
        std::vector<Term> ts = a.terms_;
        ts.insert(ts.end(), b.terms_.begin(), b.terms_.end());
        return PolySeries(a.n_, std::move(ts));
    }

    friend PolySeries operator-(const PolySeries& a, const PolySeries& b) {
        return a + Rat(-1) * b;
    }

    friend PolySeries operator*(const Rat& s, const PolySeries& a) {
        std::vector<Term> ts;
        for (const auto& t : a.terms_) ts.push_back({t.exponent, s * t.coefficient});
        return PolySeries(a.n_, std::move(ts));
    }

    friend PolySeries operator*(const PolySeries& a, const PolySeries& b) {
        check_arity(a, b);
        std::vector<Term> ts;
        for (const auto& ta : a.terms_)
            for (const auto& tb : b.terms_) {
                Exponent e(a.n_);
                for (int i = 0; i < a.n_; ++i) e[i] = ta.exponent[i] + tb.exponent[i];
                ts.push_back({std::move(e), ta.coefficient * tb.coefficient});
            }
        return PolySeries(a.n_, std::move(ts));
    }

    friend bool operator==(const PolySeries& a, const PolySeries& b) {
        if (a.n_ != b.n_ || a.terms_.size() != b.terms_.size()) return false;
        for (size_t i = 0; i < a.terms_.size(); ++i)
            if (a.terms_[i].exponent != b.terms_[i].exponent ||
                a.terms_[i].coefficient != b.terms_[i].coefficient)
                return false;
        return true;
    }

    Rat eval(const std::vector<Rat>& x) const {
        if (static_cast<int>(x.size()) != n_)
            throw ValidationError("evaluation point arity mismatch");
        Rat acc(0);
        for (const auto& t : terms_) {
            Rat m = t.coefficient;
            for (int i = 0; i < n_; ++i)
                for (long k = 0; k < t.exponent[i]; ++k) m *= x[i];
            acc += m;
        }
        return acc;
    }

    // Evaluate modulo p^M at integer residues; coefficients must be p-integral.
    Int eval_mod(const std::vector<Int>& x, const Int& pm, const Int& p) const {
        if (static_cast<int>(x.size()) != n_)
            throw ValidationError("evaluation point arity mismatch");
        Int acc = 0;
        for (const auto& t : terms_) {
            Int m = rat_mod(t.coefficient, pm, p);
            for (int i = 0; i < n_; ++i) {
                if (t.exponent[i] == 0) continue;
                Int base = mod_canonical(x[i], pm), powed = 1;
                long e = t.exponent[i];
                while (e) {
                    if (e & 1) powed = powed * base % pm;
                    base = base * base % pm;
                    e >>= 1;
                }
                m = m * powed % pm;
            }
            acc = (acc + m) % pm;
        }
        return acc;
    }

    void check_p_integral(const Int& p) const {
        for (const auto& t : terms_)
            if (vp(t.coefficient, p) < 0)
                throw ValidationError("coefficient " + to_string(t.coefficient) +
                                      " has negative " + p.str() + "-adic valuation");
    }

    PolySeries permute_vars(const std::vector<int>& perm) const {
        std::vector<Term> ts;
        for (const auto& t : terms_) {
            Exponent e(n_);
            for (int i = 0; i < n_; ++i) e[perm[static_cast<size_t>(i)]] = t.exponent[i];
            ts.push_back({std::move(e), t.coefficient});
        }
        return PolySeries(n_, std::move(ts));
    }

    // Dense one-variable view.
    std::vector<Rat> univariate_coeffs() const {
        if (n_ != 1)
            throw PreconditionViolated("operation requires a one-variable polynomial");
        std::vector<Rat> c(static_cast<size_t>(std::max<long>(degree(), -1)) + 1, Rat(0));
        for (const auto& t : terms_) c[static_cast<size_t>(t.exponent[0])] = t.coefficient;
        return c;
    }

private:
    static void check_arity(const PolySeries& a, const PolySeries& b) {
        if (a.n_ != b.n_) throw ValidationError("mixing polynomials in different variable counts");
    }

    int n_;
    std::vector<Term> terms_;
};

// Formal partial derivative with respect to variable index i (0-based).
inline PolySeries derivative(const PolySeries& f, int i) {
    if (i < 0 || i >= f.vars())
        throw ValidationError("derivative variable index out of range");
    std::vector<Term> ts;
    for (const auto& t : f.terms()) {
        if (t.exponent[i] == 0) continue;
        Exponent e = t.exponent;
        Rat c = t.coefficient * Rat(Int(e[i]));
        e[i] -= 1;
        ts.push_back({std::move(e), std::move(c)});
    }
    return PolySeries(f.vars(), std::move(ts));
}

namespace detail {

inline void enumerate_exponents_rec(int n, long budget, Exponent& cur,
                                    const std::function<void(const Exponent&)>& fn) {
    if (static_cast<int>(cur.size()) == n - 1) {
        for (long last = 0; last <= budget; ++last) {
            cur.push_back(last);
            fn(cur);
            cur.pop_back();
        }
        return;
    }
    for (long k = 0; k <= budget; ++k) {
        cur.push_back(k);
        enumerate_exponents_rec(n, budget - k, cur, fn);
        cur.pop_back();
    }
}

} // namespace detail

// Visit every exponent in N^n with total degree <= D, in lex order.
inline void for_each_exponent(int n, long D, const std::function<void(const Exponent&)>& fn) {
    if (D < 0) return;
    Exponent cur;
    cur.reserve(static_cast<size_t>(n));
    detail::enumerate_exponents_rec(n, D, cur, fn);
}

// Tail growth certificate: v_p(a_w) >= rho*|w| - c for every oracle exponent.
struct Certificate {
    Rat rho; // > 0
    Rat c;   // >= 0
};

// A restricted power series presented computably: explicit terms of total
// degree <= explicit_degree, a coefficient oracle for everything beyond,
// and a certificate bounding how fast tail valuations grow. A polynomial
// is the special case with no tail oracle.
class SeriesSpec {
public:
    SeriesSpec(PolySeries explicit_part, long explicit_degree,
               std::function<Rat(const Exponent&)> tail = nullptr,
               std::optional<Certificate> certificate = std::nullopt,
               long support_bound = 0, std::string family_tag = "")
        : explicit_(std::move(explicit_part)),
          explicit_degree_(explicit_degree),
          tail_(std::move(tail)),
          cert_(std::move(certificate)),
          support_bound_(support_bound),
          family_(std::move(family_tag)) {
        if (explicit_.degree() > explicit_degree_)
            throw ValidationError("explicit part exceeds declared explicit degree");
        if (cert_ && (cert_->rho <= 0 || cert_->c < 0))
            throw ValidationError("certificate requires rho > 0 and c >= 0");
        if (support_bound_ < 0) throw ValidationError("support bound must be >= 0");
    }

    static SeriesSpec polynomial(PolySeries f) {
        long d = std::max<long>(f.degree(), 0);
        return SeriesSpec(std::move(f), d);
    }

    int vars() const { return explicit_.vars(); }
    bool has_tail() const { return static_cast<bool>(tail_); }
    const PolySeries& explicit_part() const { return explicit_; }
    long explicit_degree() const { return explicit_degree_; }
    const std::optional<Certificate>& certificate() const { return cert_; }
    long support_bound() const { return support_bound_; }
    const std::string& family_tag() const { return family_; }

    Rat coefficient(const Exponent& e) const {
        if (total_degree(e) <= explicit_degree_) return explicit_.coefficient(e);
        if (!tail_) return Rat(0);
        return tail_(e);
    }

    void require_certificate(const char* who) const {
        if (has_tail() && !cert_)
            throw CertificateMissing(std::string(who) + " needs a (rho, c) certificate for the tail oracle");
    }

    // Largest total degree that can carry a coefficient of valuation < M.
    long coefficient_degree_bound(long M) const {
        if (!has_tail()) return explicit_degree_;
        require_certificate("reduce_mod");
        // rho*|w| - c >= M excludes the exponent; keep |w| <= (M + c)/rho.
        Rat bound = (Rat(M) + cert_->c) / cert_->rho;
        long b = static_cast<long>(ceil_rat(bound));
        return std::max(explicit_degree_, b);
    }

    // Spot-check the certificate on sampled tail exponents.
    void validate(const Int& p, long sample_degree = 12) const {
        explicit_.check_p_integral(p);
        if (!has_tail() || !cert_) return;
        long hi = std::min(explicit_degree_ + sample_degree, explicit_degree_ + 24);
        for_each_exponent(vars(), hi, [&](const Exponent& e) {
            long d = total_degree(e);
            if (d <= explicit_degree_) return;
            Rat a = tail_(e);
            if (a == 0) return;
            Rat needed = cert_->rho * Rat(d) - cert_->c;
            if (Rat(vp(a, p)) < needed)
                throw ValidationError("certificate violated at |w| = " + std::to_string(d) +
                                      ": v_p(a) = " + std::to_string(vp(a, p)));
        });
    }

private:
    PolySeries explicit_;
    long explicit_degree_;
    std::function<Rat(const Exponent&)> tail_;
    std::optional<Certificate> cert_;
    long support_bound_;
    std::string family_;
};

// f_D: all terms of total degree <= D, exact coefficients.
inline PolySeries truncate(const SeriesSpec& f, long D) {
    if (D < 0) throw ValidationError("truncation degree must be >= 0");
    std::vector<Term> ts;
    for (const auto& t : f.explicit_part().terms())
        if (total_degree(t.exponent) <= D) ts.push_back(t);
    if (f.has_tail() && D > f.explicit_degree()) {
        for_each_exponent(f.vars(), D, [&](const Exponent& e) {
            if (total_degree(e) <= f.explicit_degree()) return;
            Rat c = f.coefficient(e);
            if (c != 0) ts.push_back({e, c});
        });
    }
    return PolySeries(f.vars(), std::move(ts));
}

inline PolySeries truncate(const PolySeries& f, long D) {
    std::vector<Term> ts;
    for (const auto& t : f.terms())
        if (total_degree(t.exponent) <= D) ts.push_back(t);
    return PolySeries(f.vars(), std::move(ts));
}

// The finite polynomial of all terms with v_p(a_w) < M, coefficients
// reduced to canonical residues in [0, p^M). Completeness comes from the
// certificate: tail exponents past (M + c)/rho cannot reach valuation < M.
inline PolySeries reduce_mod(const SeriesSpec& f, long M, const Int& p) {
    if (M <= 0) throw ValidationError("reduce_mod precision must be positive");
    f.require_certificate("reduce_mod");
    long bound = f.coefficient_degree_bound(M);
    Int pm = ipow(p, static_cast<unsigned long>(M));
    std::vector<Term> ts;
    for_each_exponent(f.vars(), bound, [&](const Exponent& e) {
        Rat a = f.coefficient(e);
        if (a == 0) return;
        if (vp(a, p) >= M) return;
        ts.push_back({e, Rat(rat_mod(a, pm, p))});
    });
    return PolySeries(f.vars(), std::move(ts));
}

inline PolySeries reduce_mod(const PolySeries& f, long M, const Int& p) {
    return reduce_mod(SeriesSpec::polynomial(f), M, p);
}

// Exact coefficients of f(alpha + p^m x) for one-variable f; entry j is
// p^{jm} f^(j)(alpha) / j!. Computed over Q, never dividing in Z/p^M.
// The center may be any p-integral rational.
inline QPoly taylor_shift_exact(const PolySeries& f, const Rat& alpha, long m, const Int& p) {
    std::vector<Rat> c = f.univariate_coeffs();
    Int scale = ipow(p, static_cast<unsigned long>(m));
    // Horner composition with (alpha + scale*x).
    QPoly g;
    QPoly lin(std::vector<Rat>{alpha, Rat(scale)});
    for (auto it = c.rbegin(); it != c.rend(); ++it)
        g = g * lin + QPoly::constant(*it);
    return g;
}

inline QPoly taylor_shift_exact(const PolySeries& f, const Int& alpha, long m, const Int& p) {
    return taylor_shift_exact(f, Rat(alpha), m, p);
}

// Residues mod p^M of the shifted coefficients, as PadicApprox values.
inline std::vector<PadicApprox> taylor_shift(const PolySeries& f, const PadicApprox& alpha,
                                             long m, long M) {
    if (alpha.precision() < M)
        throw PreconditionViolated("taylor_shift: center precision below target precision");
    const Int& p = alpha.prime();
    QPoly g = taylor_shift_exact(f, alpha.value(), m, p);
    Int pm = ipow(p, static_cast<unsigned long>(M));
    std::vector<PadicApprox> out;
    long deg = std::max<long>(g.degree(), 0);
    out.reserve(static_cast<size_t>(deg) + 1);
    for (long j = 0; j <= deg; ++j)
        out.emplace_back(rat_mod(g.coeff(j), pm, p), M, p);
    return out;
}

} // namespace igusa
