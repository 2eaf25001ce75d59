#pragma once

#include "igusa/errors.hpp"
#include "igusa/newton.hpp"
#include "igusa/numeric.hpp"
#include "igusa/onevar.hpp"
#include "igusa/prime.hpp"
#include "igusa/series.hpp"
#include "igusa/zeta_engine.hpp"
#include "igusa/zeta_rational.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace igusa {

// The built-in family (x-1)^2 sum_i p^i x^i. Expanding the product:
// a_0 = 1, a_1 = p-2, a_i = p^{i-2} (p-1)^2 for i >= 2.
inline SeriesSpec counterexample_family(const Int& p) {
    if (p < 2) throw PreconditionViolated("family needs p >= 2");
    PolySeries explicit_part =
        PolySeries::from_coeffs({Rat(1), Rat(p - 2)});
    Int square = (p - 1) * (p - 1);
    auto tail = [p, square](const Exponent& e) -> Rat {
        long i = e[0];
        return Rat(square * ipow(p, static_cast<unsigned long>(i - 2)));
    };
    return SeriesSpec(explicit_part, 1, tail, Certificate{Rat(1), Rat(2)}, 0, "counterexample");
}

// x^2 plus a certified deep tail sum_{i>=3} p^i x^i; non-degenerate, so
// its truncations stabilize at the Newton-polyhedron threshold.
inline SeriesSpec monomial_tail_family(const Int& p) {
    if (p < 2) throw PreconditionViolated("family needs p >= 2");
    PolySeries explicit_part = PolySeries::monomial(1, {2}, Rat(1));
    auto tail = [p](const Exponent& e) -> Rat {
        return Rat(ipow(p, static_cast<unsigned long>(e[0])));
    };
    return SeriesSpec(explicit_part, 2, tail, Certificate{Rat(1), Rat(0)}, 2, "x2tail");
}

inline SeriesSpec builtin_family(const std::string& name, const Int& p) {
    if (name == "counterexample") return counterexample_family(p);
    if (name == "x2tail") return monomial_tail_family(p);
    throw ValidationError("unknown builtin family '" + name + "'");
}

// Exact closed forms for the family: Z_f and Z_{f_{2D}}.
//
//   Z_f      = (1 - 1/p) / (1 - p^{-1} t^2)
//   Z_f2D    = (1 - 1/p) sum_{l=0}^{D-1} p^{-l} t^{2l}  +  p^{-D} t^{2D-1}
//
// On the residual ball the truncated series has |f_2D| = p^{-(2D-1)}
// exactly (the degree-(2D-1) term dominates), so the last exponent is
// 2D-1; the brute-force congruence counts confirm this resolution.
inline std::pair<ZetaRational, ZetaRational> counterexample_closed_forms(const Int& p, long D) {
    if (D < 1) throw PreconditionViolated("closed forms need D >= 1");
    ZetaRational zf = monomial_zeta(2, p);
    QPoly partial;
    for (long l = 0; l < D; ++l)
        partial = partial + QPoly::monomial(Rat(1, ipow(p, static_cast<unsigned long>(l))), 2 * l);
    ZetaRational z2d =
        Rat(p - 1, p) * ZetaRational(partial, QPoly::constant(Rat(1)), p) +
        ZetaRational(QPoly::monomial(Rat(1, ipow(p, static_cast<unsigned long>(D))), 2 * D - 1),
                     QPoly::constant(Rat(1)), p);
    if (zf == z2d)
        throw Error(ErrorCategory::Internal, "counterexample closed forms coincide");
    return {zf, z2d};
}

enum class ScanEngine { Newton, OneVar };

struct ScanEntry {
    long D;
    std::optional<ZetaRational> zeta;
    std::string error; // empty on success
};

struct ScanVerdict {
    enum class Kind { StabilizedAt, NonStabilizing, Inconclusive };
    Kind kind = Kind::Inconclusive;
    long N = -1;           // StabilizedAt
    std::string proof_tag; // NonStabilizing: which closed-form proof applies
    std::string note;
};

struct TruncationScan {
    Int p;
    ScanEngine engine;
    std::vector<ScanEntry> results;
    ScanVerdict verdict;
};

// Smallest D with v_p(a_i) >= 1 for every |i| > D: past it the truncation
// does not change f mod p.
inline long mod_p_threshold(const SeriesSpec& f, const Int& p) {
    long N = 0;
    for (const auto& t : f.explicit_part().terms())
        if (vp(t.coefficient, p) < 1) N = std::max(N, total_degree(t.exponent));
    if (f.has_tail()) {
        f.require_certificate("mod_p_threshold");
        Rat q = (Rat(1) + f.certificate()->c) / f.certificate()->rho;
        N = std::max(N, static_cast<long>(ceil_rat(q)) - 1);
    }
    return N;
}

// Smallest D past which the Newton polyhedron of the truncation is frozen:
// all dominance-minimal exponents fit below it.
inline long polyhedron_threshold(const SeriesSpec& f) {
    long N = 0;
    for (const auto& w : minimal_support(f)) N = std::max(N, total_degree(w));
    return N;
}

namespace detail {

inline ZetaRational run_engine(const PolySeries& fD, ScanEngine engine, const PrimeContext& ctx,
                               long depth_limit) {
    if (engine == ScanEngine::Newton) return igusa_zeta_newton(fD, ctx);
    return one_var_zeta(fD, ctx, depth_limit);
}

} // namespace detail

// Compute Z_{f_D} across a degree range and classify the outcome.
// Stabilization is reported only when the analytic thresholds certify it
// (frozen polyhedron + frozen reduction mod p for the Newton engine, the
// simple-zero threshold for the one-variable engine) and a window of
// scanned values past the threshold agrees. Non-stabilization is reported
// only for families shipping a closed-form proof.
inline TruncationScan scan(const SeriesSpec& f, const PrimeContext& ctx, long d_min, long d_max,
                           ScanEngine engine, long depth_limit = 24, int window = 3) {
    if (d_min < 0 || d_max < d_min) throw ValidationError("bad truncation degree range");
    TruncationScan out{ctx.p, engine, {}, {}};
    for (long D = d_min; D <= d_max; ++D) {
        ScanEntry entry{D, std::nullopt, ""};
        try {
            entry.zeta = detail::run_engine(truncate(f, D), engine, ctx, depth_limit);
        } catch (const Error& e) {
            entry.error = e.what();
        }
        out.results.push_back(std::move(entry));
    }

    if (f.family_tag() == "counterexample") {
        // The family carries its own closed forms: each scanned even cut
        // must match Z_{f_{2D}}, and no cut can match Z_f.
        for (const auto& entry : out.results) {
            if (!entry.zeta || entry.D < 2 || entry.D % 2 != 0) continue;
            auto [zf, z2d] = counterexample_closed_forms(ctx.p, entry.D / 2);
            if (!(*entry.zeta == z2d) || *entry.zeta == zf)
                throw Error(ErrorCategory::Internal,
                            "scan disagrees with the counterexample closed form at D = " +
                                std::to_string(entry.D));
        }
        out.verdict.kind = ScanVerdict::Kind::NonStabilizing;
        out.verdict.proof_tag = "counterexample-closed-form";
        out.verdict.note = "every even cut 2D differs from Z_f at the t^{2D-1} and t^{2D} coefficients";
        return out;
    }

    long N = -1;
    std::string blocker;
    try {
        if (engine == ScanEngine::Newton) {
            long n_gamma = polyhedron_threshold(f);
            long n_modp = mod_p_threshold(f, ctx.p);
            N = std::max(n_gamma, n_modp);
            PolySeries rep = truncate(f, std::max<long>(N, 0));
            if (rep.is_zero() || rep.constant_term() != 0)
                throw HypothesisViolated("representative truncation violates f(0) = 0, f != 0");
            NewtonPolyhedron P = build_polyhedron(rep, ctx.max_vars);
            if (auto w = find_degenerate_face(rep, P, ctx))
                throw DegenerateInput("representative truncation is degenerate");
        } else {
            N = stabilization_threshold_simple(f, ctx, depth_limit);
        }
    } catch (const Error& e) {
        blocker = e.what();
    }

    if (N >= 0 && blocker.empty()) {
        int agreeing = 0;
        bool all_equal = true;
        const ZetaRational* stable = nullptr;
        for (const auto& entry : out.results) {
            if (entry.D < N) continue;
            if (!entry.zeta) { all_equal = false; break; }
            if (!stable) stable = &*entry.zeta;
            else if (!(*stable == *entry.zeta)) { all_equal = false; break; }
            ++agreeing;
        }
        if (all_equal && agreeing >= window) {
            out.verdict.kind = ScanVerdict::Kind::StabilizedAt;
            out.verdict.N = N;
            out.verdict.note = "analytic threshold certified; " + std::to_string(agreeing) +
                               " scanned cuts at D >= " + std::to_string(N) + " agree";
            return out;
        }
        out.verdict.note = "threshold N = " + std::to_string(N) +
                           " computed but the scanned window does not confirm it";
        return out;
    }
    out.verdict.note = blocker.empty() ? "no certification path applies" : blocker;
    return out;
}

} // namespace igusa
