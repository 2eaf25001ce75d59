#pragma once

#include "igusa/errors.hpp"
#include "igusa/numeric.hpp"
#include "igusa/prime.hpp"
#include "igusa/series.hpp"
#include "igusa/zeta_rational.hpp"

#include <cmath>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace igusa {

// N_m = #{ x mod p^m : f(x) = 0 mod p^m } for m = 0..M, with N_0 = 1.
struct CongruenceCount {
    Int p;
    int n = 1;
    std::vector<Int> counts;

    long max_level() const { return static_cast<long>(counts.size()) - 1; }

    Rat mu(long m) const {
        // measure of { x in Z_p^n : v_p(f(x)) >= m }
        return Rat(counts[static_cast<size_t>(m)],
                   ipow(p, static_cast<unsigned long>(m) * static_cast<unsigned long>(n)));
    }
};

// Counts by residue-tree lifting: only children of solutions mod p^m can
// solve mod p^{m+1}.
inline CongruenceCount count_solutions(const PolySeries& f, const PrimeContext& ctx, long M) {
    const Int& p = ctx.p;
    f.check_p_integral(p);
    int n = f.vars();
    if (ipow(p, static_cast<unsigned long>(n) * static_cast<unsigned long>(M)) > ctx.enum_limit)
        throw EnumLimitExceeded("p^(n M) exceeds enum_limit");

    CongruenceCount out{p, n, {Int(1)}};
    std::vector<std::vector<Int>> level = {std::vector<Int>(static_cast<size_t>(n), Int(0))};
    // level holds the solutions mod p^m; start with the single point mod 1.
    for (long m = 0; m < M; ++m) {
        Int pm1 = ipow(p, static_cast<unsigned long>(m + 1));
        Int step = ipow(p, static_cast<unsigned long>(m));
        std::vector<std::vector<Int>> next;
        std::vector<Int> delta(static_cast<size_t>(n), Int(0));
        for (const auto& x : level) {
            std::function<void(int)> scan = [&](int i) {
                if (i == n) {
                    std::vector<Int> y(static_cast<size_t>(n));
                    for (int j = 0; j < n; ++j)
                        y[static_cast<size_t>(j)] = x[static_cast<size_t>(j)] + step * delta[static_cast<size_t>(j)];
                    if (f.eval_mod(y, pm1, p) == 0) next.push_back(std::move(y));
                    return;
                }
                for (Int d = 0; d < p; ++d) {
                    delta[static_cast<size_t>(i)] = d;
                    scan(i + 1);
                }
            };
            scan(0);
        }
        level = std::move(next);
        out.counts.push_back(Int(level.size()));
    }
    return out;
}

// Full scan over all p^{nM} points; cross-check companion for the lifter.
inline CongruenceCount count_solutions_naive(const PolySeries& f, const PrimeContext& ctx, long M) {
    const Int& p = ctx.p;
    int n = f.vars();
    if (ipow(p, static_cast<unsigned long>(n) * static_cast<unsigned long>(M)) > ctx.enum_limit)
        throw EnumLimitExceeded("p^(n M) exceeds enum_limit");
    CongruenceCount out{p, n, {}};
    for (long m = 0; m <= M; ++m) {
        Int pm = ipow(p, static_cast<unsigned long>(m));
        Int count = 0;
        std::vector<Int> x(static_cast<size_t>(n), Int(0));
        std::function<void(int)> scan = [&](int i) {
            if (i == n) {
                if (f.eval_mod(x, pm, p) == 0) ++count;
                return;
            }
            for (Int v = 0; v < pm; ++v) {
                x[static_cast<size_t>(i)] = v;
                scan(i + 1);
            }
        };
        scan(0);
        out.counts.push_back(count);
    }
    return out;
}

// Degree-<M expansion of Z(t) from the counts: with mu_m = N_m p^{-nm},
// the coefficient of t^m is mu_m - mu_{m+1}.
inline std::vector<Rat> zeta_series_from_counts(const CongruenceCount& C) {
    std::vector<Rat> s;
    for (long m = 0; m + 1 <= C.max_level(); ++m) s.push_back(C.mu(m) - C.mu(m + 1));
    return s;
}

struct ZetaCheckReport {
    bool pass = true;
    long first_mismatch = -1;
    std::vector<Rat> expected;
    std::vector<Rat> got;
};

// Exact coefficient-by-coefficient comparison of Z(t) against the counts.
inline ZetaCheckReport verify_zeta(const ZetaRational& Z, const CongruenceCount& C) {
    ZetaCheckReport r;
    r.expected = zeta_series_from_counts(C);
    long degree = static_cast<long>(r.expected.size()) - 1;
    r.got = Z.series(degree);
    for (long m = 0; m <= degree; ++m)
        if (r.expected[static_cast<size_t>(m)] != r.got[static_cast<size_t>(m)]) {
            r.pass = false;
            r.first_mismatch = m;
            break;
        }
    return r;
}

// Bracket Z(s) for real s > 0: the partial sum is a lower bound and the
// discarded tail is at most mu_M p^{-Ms}.
inline std::pair<double, double> numeric_zeta(const PolySeries& f, const PrimeContext& ctx,
                                              double s_real, long M) {
    if (!(s_real > 0)) throw PreconditionViolated("numeric_zeta needs s > 0");
    CongruenceCount C = count_solutions(f, ctx, M);
    double p = static_cast<double>(ctx.p);
    double lower = 0;
    for (long m = 0; m < M; ++m) {
        double slice = static_cast<double>(C.mu(m) - C.mu(m + 1));
        lower += slice * std::pow(p, -s_real * static_cast<double>(m));
    }
    double upper = lower + static_cast<double>(C.mu(M)) * std::pow(p, -s_real * static_cast<double>(M));
    return {lower, upper};
}

} // namespace igusa
