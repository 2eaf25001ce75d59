#pragma once

#include "igusa/errors.hpp"
#include "igusa/newton.hpp"
#include "igusa/numeric.hpp"
#include "igusa/prime.hpp"
#include "igusa/series.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace igusa {

struct FacePolynomial {
    int face_id;
    PolySeries poly; // exact coefficients, support = face ∩ supp(f)
};

struct FaceCount {
    int face_id;
    long n_tau; // zeros of the mod-p face polynomial on the unit torus
};

// Restriction of f to the exponents lying on the face.
inline FacePolynomial face_polynomial(const PolySeries& f, const Face& tau) {
    std::vector<Term> ts;
    for (const auto& t : f.terms())
        if (std::binary_search(tau.supp_points.begin(), tau.supp_points.end(), t.exponent))
            ts.push_back(t);
    return {tau.id, PolySeries(f.vars(), std::move(ts))};
}

namespace detail {

inline void for_each_unit_point(const Int& p, int n, long long enum_limit,
                                const std::function<void(const std::vector<Int>&)>& fn) {
    Int total = 1;
    for (int i = 0; i < n; ++i) total *= p;
    if (total > enum_limit)
        throw EnumLimitExceeded("p^n = " + total.str() + " unit-torus scan exceeds the ceiling");
    std::vector<Int> x(static_cast<size_t>(n), 1);
    std::function<void(int)> rec = [&](int i) {
        if (i == n) {
            fn(x);
            return;
        }
        for (Int v = 1; v < p; ++v) {
            x[static_cast<size_t>(i)] = v;
            rec(i + 1);
        }
    };
    rec(0);
}

} // namespace detail

struct DegeneracyWitness {
    int face_id;
    std::vector<Int> point;
};

// Scan (F_p^x)^n for a common zero of the face polynomial and all its
// partials, for every face of the polyhedron (the whole polyhedron
// included). Returns the first witness found, or nothing.
inline std::optional<DegeneracyWitness> find_degenerate_face(const PolySeries& f,
                                                             const NewtonPolyhedron& P,
                                                             const PrimeContext& ctx) {
    const Int& p = ctx.p;
    f.check_p_integral(p);
    for (const auto& tau : P.faces) {
        PolySeries ft = face_polynomial(f, tau).poly;
        std::vector<PolySeries> grads;
        for (int i = 0; i < f.vars(); ++i) grads.push_back(derivative(ft, i));
        std::optional<DegeneracyWitness> witness;
        detail::for_each_unit_point(p, f.vars(), ctx.enum_limit, [&](const std::vector<Int>& x) {
            if (witness) return;
            if (ft.eval_mod(x, p, p) != 0) return;
            for (const auto& g : grads)
                if (g.eval_mod(x, p, p) != 0) return;
            witness = DegeneracyWitness{tau.id, x};
        });
        if (witness) return witness;
    }
    return std::nullopt;
}

inline bool is_nondegenerate(const PolySeries& f, const NewtonPolyhedron& P,
                             const PrimeContext& ctx) {
    return !find_degenerate_face(f, P, ctx).has_value();
}

// N_tau: exact count of unit-torus zeros of the face polynomial mod p.
inline FaceCount count_face_zeros(const PolySeries& f, const Face& tau, const PrimeContext& ctx) {
    PolySeries ft = face_polynomial(f, tau).poly;
    long count = 0;
    detail::for_each_unit_point(ctx.p, f.vars(), ctx.enum_limit, [&](const std::vector<Int>& x) {
        if (ft.eval_mod(x, ctx.p, ctx.p) == 0) ++count;
    });
    return {tau.id, count};
}

} // namespace igusa
