#pragma once

#include "igusa/errors.hpp"
#include "igusa/newton.hpp"
#include "igusa/nondegen.hpp"
#include "igusa/numeric.hpp"
#include "igusa/prime.hpp"
#include "igusa/series.hpp"
#include "igusa/zeta_rational.hpp"

#include <string>
#include <vector>

namespace igusa {

// Unit-box integral over the n-torus for a face with N unit zeros:
//   L = p^{-n} ( (p-1)^n - p N (1-t) / (p-t) ),
// the p^s expressions rewritten through t = p^{-s}.
inline ZetaRational unit_box_factor(long N, int n, const Int& p) {
    Rat pn(1, ipow(p, static_cast<unsigned long>(n)));
    Rat units(ipow(p - 1, static_cast<unsigned long>(n)));
    // den = p - t, num = (p-1)^n (p - t) - p N (1 - t), all scaled by p^{-n}.
    QPoly den(std::vector<Rat>{Rat(p), Rat(-1)});
    QPoly num = units * den - Rat(p * N) * QPoly(std::vector<Rat>{Rat(1), Rat(-1)});
    return ZetaRational(pn * num, den, p);
}

struct ConeSum {
    int face_id;
    ZetaRational value;
};

// S_{Delta_tau} = sum over lattice points of the cone of p^{-sigma(k)} t^{m(k)},
// evaluated exactly piece by piece: each relatively open simplicial piece
// contributes sum_h p^{-sigma(h)} t^{m(h)} / prod_j (1 - p^{-sigma(g_j)} t^{m(g_j)}).
inline ConeSum cone_sum(const Cone& C, const NewtonPolyhedron& P, const Int& p) {
    ZetaRational total = ZetaRational::zero(p);
    for (const auto& piece : C.pieces) {
        if (piece.lattice_points.empty()) continue;
        QPoly num;
        for (const auto& h : piece.lattice_points) {
            Rat coeff(1, ipow(p, static_cast<unsigned long>(sigma(h))));
            num = num + QPoly::monomial(coeff, static_cast<long>(P.m_value(h)));
        }
        QPoly den = QPoly::constant(Rat(1));
        for (const auto& g : piece.rays) {
            Rat coeff(1, ipow(p, static_cast<unsigned long>(sigma(g))));
            den = den * (QPoly::constant(Rat(1)) - QPoly::monomial(coeff, static_cast<long>(P.m_value(g))));
        }
        total = total + ZetaRational(num, den, p);
    }
    return {C.face_id, total};
}

struct FaceContribution {
    int face_id;
    long n_tau;
    ZetaRational unit_box;
    ZetaRational cone; // zero for the whole polyhedron
};

struct ZetaBreakdown {
    ZetaRational zeta;
    NewtonPolyhedron polyhedron;
    std::vector<FaceContribution> contributions;
};

// Z_f as the face-indexed sum L_Gamma + sum_tau L_tau S_{Delta_tau};
// valid for f nonzero, f(0) = 0, non-degenerate over F_p with respect
// to every face of its Newton polyhedron.
inline ZetaBreakdown igusa_zeta_newton_detailed(const PolySeries& f, const PrimeContext& ctx) {
    if (f.is_zero()) throw HypothesisViolated("zeta of the zero polynomial");
    if (f.constant_term() != 0)
        throw HypothesisViolated("the Newton-polyhedron formula needs f(0) = 0");
    f.check_p_integral(ctx.p);
    if (f.vars() > ctx.max_vars)
        throw DimensionTooLarge("variable count above the configured ceiling");

    ZetaBreakdown out{ZetaRational::zero(ctx.p), build_polyhedron(f, ctx.max_vars), {}};
    const NewtonPolyhedron& P = out.polyhedron;

    if (auto witness = find_degenerate_face(f, P, ctx)) {
        std::string pt = "(";
        for (size_t i = 0; i < witness->point.size(); ++i)
            pt += witness->point[i].str() + (i + 1 < witness->point.size() ? "," : ")");
        throw DegenerateInput("face " + std::to_string(witness->face_id) +
                              " has singular unit zero " + pt);
    }

    ZetaRational total = ZetaRational::zero(ctx.p);
    for (const auto& tau : P.faces) {
        FaceCount fc = count_face_zeros(f, tau, ctx);
        ZetaRational L = unit_box_factor(fc.n_tau, f.vars(), ctx.p);
        if (!tau.proper) {
            total = total + L;
            out.contributions.push_back({tau.id, fc.n_tau, L, ZetaRational::zero(ctx.p)});
            continue;
        }
        Cone C = cone_of_face(P, tau);
        ConeSum S = cone_sum(C, P, ctx.p);
        total = total + L * S.value;
        out.contributions.push_back({tau.id, fc.n_tau, L, S.value});
    }
    out.zeta = total;
    return out;
}

inline ZetaRational igusa_zeta_newton(const PolySeries& f, const PrimeContext& ctx) {
    return igusa_zeta_newton_detailed(f, ctx).zeta;
}

// Closed form for a pure power: (1 - 1/p) / (1 - p^{-1} t^{n0}).
inline ZetaRational monomial_zeta(long n0, const Int& p) {
    if (n0 < 1) throw PreconditionViolated("monomial_zeta needs exponent >= 1");
    QPoly num = QPoly::constant(Rat(p - 1, p));
    QPoly den = QPoly::constant(Rat(1)) - QPoly::monomial(Rat(1, p), n0);
    return ZetaRational(num, den, p);
}

} // namespace igusa
