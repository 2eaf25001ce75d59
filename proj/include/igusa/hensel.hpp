#pragma once

#include "igusa/errors.hpp"
#include "igusa/numeric.hpp"
#include "igusa/padic.hpp"
#include "igusa/prime.hpp"
#include "igusa/series.hpp"

#include <vector>

namespace igusa {

namespace detail {

inline Int eval_univariate_mod(const std::vector<Rat>& coeffs, const Int& x,
                               const Int& pm, const Int& p) {
    Int acc = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
        acc = (acc * x + rat_mod(*it, pm, p)) % pm;
    return mod_canonical(acc, pm);
}

inline std::vector<Rat> derivative_coeffs(const std::vector<Rat>& coeffs) {
    std::vector<Rat> d;
    for (size_t i = 1; i < coeffs.size(); ++i) d.push_back(Rat(Int(i)) * coeffs[i]);
    return d;
}

} // namespace detail

// Classical Hensel lifting: from f(a) = 0 mod p with f'(a) a unit to the
// root class mod p^M, by Newton iteration with doubling precision.
inline PadicApprox hensel_lift(const PolySeries& f, const Int& a, long M, const PrimeContext& ctx) {
    const Int& p = ctx.p;
    f.check_p_integral(p);
    std::vector<Rat> c = f.univariate_coeffs();
    std::vector<Rat> dc = detail::derivative_coeffs(c);

    if (detail::eval_univariate_mod(c, a, p, p) != 0)
        throw PreconditionViolated("hensel_lift: f(a) != 0 mod p");
    if (detail::eval_univariate_mod(dc, a, p, p) == 0)
        throw PreconditionViolated("hensel_lift: f'(a) == 0 mod p");

    long prec = 1;
    Int x = mod_canonical(a, p);
    while (prec < M) {
        prec = std::min(2 * prec, M);
        Int pm = ipow(p, static_cast<unsigned long>(prec));
        Int fx = detail::eval_univariate_mod(c, x, pm, p);
        Int dfx = detail::eval_univariate_mod(dc, x, pm, p);
        x = mod_canonical(x - fx * mod_inverse(dfx, pm), pm);
    }
    return PadicApprox(x, M, p);
}

// Generalized lifting for v_p(f'(a)) = e > 0: with f(a) = 0 mod p^{2e+k}
// the substitution g(y) = p^{-(2e+k-1)} f(a + p^{e+k-1} y) lands back in
// the classical case, and the recovered root satisfies xi = a mod p^{e+k}.
inline PadicApprox hensel_lift_general(const PolySeries& f, const Int& a, long e, long k,
                                       long M, const PrimeContext& ctx) {
    if (e < 0 || k < 1)
        throw PreconditionViolated("hensel_lift_general: need e >= 0 and k >= 1");
    const Int& p = ctx.p;
    f.check_p_integral(p);

    std::vector<Rat> c = f.univariate_coeffs();
    Rat fa(0), dfa(0);
    {
        Rat xp(1);
        std::vector<Rat> dc = detail::derivative_coeffs(c);
        for (size_t i = 0; i < c.size(); ++i) {
            fa += c[i] * xp;
            xp *= Rat(a);
        }
        xp = Rat(1);
        for (size_t i = 0; i < dc.size(); ++i) {
            dfa += dc[i] * xp;
            xp *= Rat(a);
        }
    }
    if (vp(fa, p) < 2 * e + k)
        throw PreconditionViolated("hensel_lift_general: f(a) != 0 mod p^{2e+k}");
    if (vp(dfa, p) != e)
        throw PreconditionViolated("hensel_lift_general: v_p(f'(a)) != e");

    // g(y) = f(a + p^{e+k-1} y) / p^{2e+k-1}, exact over Q.
    QPoly shifted = taylor_shift_exact(f, a, e + k - 1, p);
    Rat unit = Rat(1, ipow(p, static_cast<unsigned long>(2 * e + k - 1)));
    std::vector<Rat> gc;
    for (long j = 0; j <= shifted.degree(); ++j) gc.push_back(unit * shifted.coeff(j));
    PolySeries g = PolySeries::from_coeffs(gc);
    g.check_p_integral(p); // integral under the stated hypotheses

    long Mg = std::max<long>(M, 1);
    PadicApprox eta = hensel_lift(g, 0, Mg, ctx);

    Int pm = ipow(p, static_cast<unsigned long>(M));
    Int xi = mod_canonical(a + ipow(p, static_cast<unsigned long>(e + k - 1)) * eta.value(), pm);
    return PadicApprox(xi, M, p);
}

} // namespace igusa
