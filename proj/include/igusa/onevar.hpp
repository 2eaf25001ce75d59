#pragma once

#include "igusa/errors.hpp"
#include "igusa/numeric.hpp"
#include "igusa/padic.hpp"
#include "igusa/prime.hpp"
#include "igusa/series.hpp"
#include "igusa/zeta_rational.hpp"

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace igusa {

enum class BallKind { ConstantNorm, DominantTerm, Undecided };

// Resolution of |f| on the ball alpha + p^m Z_p from the shifted Taylor
// coefficients c_j of f(alpha + p^m x):
//  - ConstantNorm(v0): |f| = p^{-v0} everywhere on the ball,
//  - DominantTerm(n0, v_b): |f(alpha + p^m x)| = p^{-(m n0 + v_b)} |x|^{n0},
//    either because alpha is an exact root of order n0 or because the ball
//    isolates a simple root (detected through the Hensel hypotheses),
//  - Undecided: no sound closed form at this radius; recurse.
struct BallStatus {
    BallKind kind = BallKind::Undecided;
    long v0 = 0;  // ConstantNorm: v_p(f) on the ball
    long n0 = 0;  // DominantTerm: order of the dominating term
    long v_b = 0; // DominantTerm: v_p(f^(n0)(alpha)/n0!) resp. v_p(f'(root))
};

// f one-variable with p-integral coefficients; alpha a canonical lift of
// the ball center mod p^m (any p-integral rational representative of the
// same ball works). All decisions are made on exact rationals.
inline BallStatus ball_status(const PolySeries& f, const Rat& alpha, long m, const Int& p) {
    QPoly g = taylor_shift_exact(f, alpha, m, p);
    long deg = g.degree();
    if (deg < 0) throw HypothesisViolated("|f| analysis of the zero polynomial");
    std::vector<long> v(static_cast<size_t>(deg) + 1);
    for (long j = 0; j <= deg; ++j) v[static_cast<size_t>(j)] = vp(g.coeff(j), p);

    // Constant norm: the constant coefficient strictly dominates.
    if (v[0] < val_infinity) {
        bool strict = true;
        for (long j = 1; j <= deg; ++j)
            if (v[static_cast<size_t>(j)] <= v[0]) { strict = false; break; }
        if (strict) return {BallKind::ConstantNorm, v[0], 0, 0};
    }

    // Exact root at alpha of order n0: all lower coefficients vanish and
    // c_{n0} strictly dominates the rest.
    long n0 = 0;
    while (n0 <= deg && v[static_cast<size_t>(n0)] == val_infinity) ++n0;
    if (n0 >= 1 && n0 <= deg) {
        bool strict = true;
        for (long j = n0 + 1; j <= deg; ++j)
            if (v[static_cast<size_t>(j)] <= v[static_cast<size_t>(n0)]) { strict = false; break; }
        if (strict) {
            long vb = v[static_cast<size_t>(n0)] - m * n0;
            return {BallKind::DominantTerm, 0, n0, vb};
        }
    }

    // Simple root inside the ball: with e = v_p(f'(alpha)) < m and
    // v_p(f(alpha)) >= e + m, the generalized Hensel hypotheses hold with
    // k = m - e, so the ball carries exactly one root xi, v_p(f'(xi)) = e,
    // and |f(x)| = p^{-e} |x - xi| on the ball.
    if (deg >= 1 && v[1] < val_infinity) {
        long e = v[1] - m;
        if (e >= 0 && e < m && v[0] >= e + m)
            return {BallKind::DominantTerm, 0, 1, e};
    }

    return {BallKind::Undecided, 0, 0, 0};
}

inline BallStatus ball_status(const PolySeries& f, const Ball& ball) {
    return ball_status(f, Rat(ball.center.value()), ball.radius_exponent, ball.center.prime());
}

namespace detail {

// Exact rational roots of a one-variable polynomial, by trial division
// over the divisors of the integerized trailing and leading coefficients.
// Divisor enumeration is capped; a partial list only narrows the set of
// balls that get the exact-root recentering below, never correctness.
inline std::vector<Int> small_divisors(Int n, long cap = 1'000'000) {
    std::vector<Int> divs;
    if (n < 0) n = -n;
    if (n == 0) return divs;
    for (Int d = 1; d * d <= n; ++d) {
        if (--cap < 0) break;
        if (n % d == 0) {
            divs.push_back(d);
            divs.push_back(n / d);
        }
    }
    return divs;
}

inline std::vector<Rat> rational_roots(const PolySeries& f) {
    std::vector<Rat> coeffs = f.univariate_coeffs();
    std::vector<Rat> roots;
    size_t low = 0;
    while (low < coeffs.size() && coeffs[low] == 0) ++low;
    if (low == coeffs.size()) return roots;
    if (low > 0) roots.push_back(Rat(0));
    Int scale = 1;
    for (size_t i = low; i < coeffs.size(); ++i) {
        Int d = denominator(coeffs[i]);
        scale = scale / boost::multiprecision::gcd(scale, d) * d;
    }
    Int a0 = numerator(coeffs[low] * Rat(scale));
    Int ad = numerator(coeffs.back() * Rat(scale));
    auto eval = [&](const Rat& r) {
        Rat acc(0);
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * r + *it;
        return acc;
    };
    for (const Int& u : small_divisors(a0))
        for (const Int& v : small_divisors(ad)) {
            for (int sign : {1, -1}) {
                Rat r(sign * u, v);
                if (eval(r) == 0 && std::find(roots.begin(), roots.end(), r) == roots.end())
                    roots.push_back(r);
            }
        }
    std::sort(roots.begin(), roots.end());
    return roots;
}

// Rational roots of gcd(f, f'): the rational points where f vanishes to
// higher order. Simple roots need no recentering (the Hensel case covers
// them wherever they sit in a ball).
inline std::vector<Rat> rational_multiple_roots(const PolySeries& f, const Int& p) {
    QPoly qf(f.univariate_coeffs());
    QPoly g = QPoly::gcd(qf, qf.derivative());
    if (g.degree() < 1) return {};
    std::vector<Rat> gc;
    for (long j = 0; j <= g.degree(); ++j) gc.push_back(g.coeff(j));
    std::vector<Rat> out;
    for (const Rat& r : rational_roots(PolySeries::from_coeffs(gc)))
        if (vp(r, p) >= 0) out.push_back(r); // only roots in Z_p matter
    return out;
}

} // namespace detail

// The ball's contribution to Z_f(t):
//  constant norm:  p^{-m} t^{v0}
//  dominant term:  p^{-m} (1 - 1/p) t^{m n0 + v_b} / (1 - p^{-1} t^{n0})
inline ZetaRational local_contribution(const BallStatus& status, long m, const Int& p) {
    Rat measure(1, ipow(p, static_cast<unsigned long>(m)));
    switch (status.kind) {
    case BallKind::ConstantNorm:
        return ZetaRational(QPoly::monomial(measure, status.v0), QPoly::constant(Rat(1)), p);
    case BallKind::DominantTerm: {
        QPoly num = QPoly::monomial(measure * Rat(p - 1, p), m * status.n0 + status.v_b);
        QPoly den = QPoly::constant(Rat(1)) - QPoly::monomial(Rat(1, p), status.n0);
        return ZetaRational(num, den, p);
    }
    case BallKind::Undecided:
        break;
    }
    throw PreconditionViolated("local_contribution on an undecided ball");
}

struct LocalContribution {
    Int center;
    long m;
    BallStatus status;
    ZetaRational value;
};

struct BallNode {
    Int center;
    long m;
    BallStatus status;
    std::vector<BallNode> children;
};

struct OneVarResult {
    ZetaRational zeta;
    std::vector<LocalContribution> leaves;
    BallNode tree;
};

namespace detail {

inline BallNode one_var_resolve(const PolySeries& f, const Int& alpha, long m,
                                const PrimeContext& ctx, long depth_limit,
                                const std::vector<Rat>& multiple_roots,
                                std::vector<LocalContribution>& leaves) {
    BallNode node{alpha, m, ball_status(f, Rat(alpha), m, ctx.p), {}};
    if (node.status.kind == BallKind::Undecided) {
        // A rational root of higher order sitting away from the canonical
        // lift never produces exact zero Taylor coefficients there; expand
        // at the root itself when the ball holds exactly one.
        const Rat* inside = nullptr;
        bool unique = true;
        for (const Rat& r : multiple_roots)
            if (vp(r - Rat(alpha), ctx.p) >= m) {
                if (inside) unique = false;
                inside = &r;
            }
        if (inside && unique) node.status = ball_status(f, *inside, m, ctx.p);
    }
    if (node.status.kind != BallKind::Undecided) {
        leaves.push_back({alpha, m, node.status, local_contribution(node.status, m, ctx.p)});
        return node;
    }
    if (m >= depth_limit)
        throw DepthLimitExceeded("ball recursion at center " + alpha.str() + " mod p^" +
                                 std::to_string(m) +
                                 "; f and f' likely share a zero, or raise the limit");
    Int step = ipow(ctx.p, static_cast<unsigned long>(m));
    for (Int r = 0; r < ctx.p; ++r)
        node.children.push_back(
            one_var_resolve(f, alpha + r * step, m + 1, ctx, depth_limit, multiple_roots, leaves));
    return node;
}

} // namespace detail

// Recursive ball decomposition of Z_p, resolving each ball by |f| status
// and splitting undecided balls into their p children.
inline OneVarResult one_var_zeta_detailed(const PolySeries& f, const PrimeContext& ctx,
                                          long depth_limit = 24) {
    if (f.vars() != 1) throw PreconditionViolated("one_var_zeta needs one variable");
    if (f.is_zero()) throw HypothesisViolated("one_var_zeta of the zero polynomial");
    f.check_p_integral(ctx.p);
    OneVarResult out{ZetaRational::zero(ctx.p), {}, {}};
    std::vector<Rat> multiple_roots = detail::rational_multiple_roots(f, ctx.p);
    out.tree = detail::one_var_resolve(f, 0, 0, ctx, depth_limit, multiple_roots, out.leaves);
    for (const auto& leaf : out.leaves) out.zeta = out.zeta + leaf.value;
    return out;
}

inline ZetaRational one_var_zeta(const PolySeries& f, const PrimeContext& ctx,
                                 long depth_limit = 24) {
    return one_var_zeta_detailed(f, ctx, depth_limit).zeta;
}

// Truncation threshold for series whose zeta data is carried by constant
// norm and simple-zero balls (the no-common-zero setting). Works on the
// reduction mod p^M of the series; a decision is accepted only when its
// valuations are visible strictly below M, so it transfers to the series.
inline long stabilization_threshold_simple(const SeriesSpec& f, const PrimeContext& ctx,
                                           long depth_limit = 24) {
    if (f.vars() != 1)
        throw PreconditionViolated("stabilization threshold needs one variable");
    if (!f.has_tail()) return std::max<long>(f.explicit_part().degree(), 0);
    f.require_certificate("stabilization_threshold_simple");

    const long M = 2 * depth_limit + 16;
    PolySeries proxy = reduce_mod(f, M, ctx.p);
    // The recursion must succeed on the reduced polynomial at all.
    (void)one_var_zeta(proxy, ctx, depth_limit);

    std::vector<long> requirements; // valuation floor theta per resolved ball
    std::function<void(const Int&, long)> resolve = [&](const Int& alpha, long m) {
        QPoly g = taylor_shift_exact(proxy, alpha, m, ctx.p);
        long deg = g.degree();
        std::vector<long> v(static_cast<size_t>(deg) + 1);
        for (long j = 0; j <= deg; ++j) {
            long w = vp(g.coeff(j), ctx.p);
            v[static_cast<size_t>(j)] = std::min<long>(w, M); // censor: only < M is trusted
        }
        if (v[0] < M) {
            bool strict = true;
            for (long j = 1; j <= deg; ++j)
                if (v[static_cast<size_t>(j)] <= v[0]) { strict = false; break; }
            if (strict) {
                requirements.push_back(v[0] + 1);
                return;
            }
        }
        if (deg >= 1 && v[1] < M) {
            long e = v[1] - m;
            if (e >= 0 && e < m && (v[0] >= e + m)) {
                requirements.push_back(e + m + 1);
                return;
            }
        }
        if (m >= depth_limit)
            throw DepthLimitExceeded("threshold recursion at center " + alpha.str() +
                                     " mod p^" + std::to_string(m));
        Int step = ipow(ctx.p, static_cast<unsigned long>(m));
        for (Int r = 0; r < ctx.p; ++r) resolve(alpha + r * step, m + 1);
    };
    resolve(0, 0);

    long N = 0;
    const Certificate& cert = *f.certificate();
    for (long theta : requirements) {
        for (const auto& t : f.explicit_part().terms())
            if (vp(t.coefficient, ctx.p) < theta)
                N = std::max(N, total_degree(t.exponent));
        // Tail demand: rho (D+1) - c >= theta.
        Rat q = (Rat(theta) + cert.c) / cert.rho;
        long d_tail = static_cast<long>(ceil_rat(q)) - 1;
        N = std::max(N, d_tail);
    }
    return N;
}

} // namespace igusa
