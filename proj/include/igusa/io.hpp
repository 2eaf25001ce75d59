#pragma once

#include "igusa/errors.hpp"
#include "igusa/newton.hpp"
#include "igusa/numeric.hpp"
#include "igusa/onevar.hpp"
#include "igusa/oracle.hpp"
#include "igusa/series.hpp"
#include "igusa/truncation.hpp"
#include "igusa/zeta_rational.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace igusa {

using Json = nlohmann::ordered_json;

inline Rat parse_rational(const Json& j) {
    try {
        if (j.is_number_integer()) return Rat(Int(j.get<long long>()));
        if (j.is_string()) return Rat(j.get<std::string>());
    } catch (const std::exception&) {
        throw ParseError("bad rational literal: " + j.dump());
    }
    throw ParseError("expected a rational (integer or \"a/b\" string), got " + j.dump());
}

struct ParsedInput {
    SeriesSpec series;
    bool is_series; // false: plain polynomial given term by term
    const PolySeries& poly() const {
        if (is_series)
            throw ValidationError("this subcommand needs an explicit polynomial, not a series family");
        return series.explicit_part();
    }
};

// Accepts {"n":..,"terms":[{"exp":[..],"coeff":..},..]} for polynomials or
// {"family":"counterexample"|"x2tail","p":..} for built-in series.
// Duplicate exponents are merged; when p is known, coefficients must be
// p-integral.
inline ParsedInput parse_input(const Json& j, const std::optional<Int>& p = std::nullopt) {
    if (!j.is_object()) throw ParseError("input must be a JSON object");
    if (j.contains("family")) {
        if (!j.contains("p")) throw ParseError("series family needs its prime parameter \"p\"");
        const Json& jp = j.at("p");
        Int fp = jp.is_string() ? Int(jp.get<std::string>()) : Int(jp.get<long long>());
        if (p && *p != fp)
            throw ValidationError("family prime " + fp.str() + " differs from --p " + p->str());
        SeriesSpec s = builtin_family(j.at("family").get<std::string>(), fp);
        if (p) s.validate(*p);
        return {std::move(s), true};
    }
    if (!j.contains("n") || !j.contains("terms"))
        throw ParseError("polynomial input needs \"n\" and \"terms\"");
    int n = j.at("n").get<int>();
    if (n < 1) throw ParseError("\"n\" must be at least 1");
    std::vector<Term> terms;
    for (const auto& t : j.at("terms")) {
        if (!t.contains("exp") || !t.contains("coeff"))
            throw ParseError("each term needs \"exp\" and \"coeff\"");
        Exponent e;
        for (const auto& x : t.at("exp")) {
            long v = x.get<long>();
            if (v < 0) throw ParseError("negative exponent in " + t.dump());
            e.push_back(v);
        }
        if (static_cast<int>(e.size()) != n)
            throw ParseError("exponent arity mismatch in " + t.dump());
        terms.push_back({std::move(e), parse_rational(t.at("coeff"))});
    }
    PolySeries f(n, std::move(terms));
    if (p) f.check_p_integral(*p);
    // Explicit terms with declared certificate fields come in as a series
    // (zero tail beyond the listed terms).
    if (j.contains("rho") || j.contains("c") || j.contains("support_bound")) {
        if (!j.contains("rho") || !j.contains("c"))
            throw ParseError("a series needs both \"rho\" and \"c\"");
        Certificate cert{parse_rational(j.at("rho")), parse_rational(j.at("c"))};
        long bound = j.value("support_bound", 0L);
        long ed = std::max<long>(f.degree(), 0);
        SeriesSpec s(std::move(f), ed, nullptr, cert, bound);
        return {std::move(s), true};
    }
    return {SeriesSpec::polynomial(std::move(f)), false};
}

inline Json render_poly(const PolySeries& f) {
    Json out;
    out["n"] = f.vars();
    Json ts = Json::array();
    for (const auto& t : f.terms()) {
        Json jt;
        jt["exp"] = t.exponent;
        jt["coeff"] = to_string(t.coefficient);
        ts.push_back(std::move(jt));
    }
    out["terms"] = std::move(ts);
    return out;
}

inline std::string var_name(int i, int n) {
    static const char* names[] = {"x", "y", "z", "w"};
    if (n <= 4) return names[i];
    return "x" + std::to_string(i + 1);
}

inline std::string poly_display(const PolySeries& f) {
    if (f.is_zero()) return "0";
    std::string s;
    for (const auto& t : f.terms()) {
        std::string mono;
        for (int i = 0; i < f.vars(); ++i) {
            if (t.exponent[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += var_name(i, f.vars());
            if (t.exponent[i] > 1) mono += "^" + std::to_string(t.exponent[i]);
        }
        std::string c = to_string(t.coefficient);
        std::string piece;
        if (mono.empty()) piece = c;
        else if (c == "1") piece = mono;
        else if (c == "-1") piece = "-" + mono;
        else piece = (denominator(t.coefficient) == 1 ? c : "(" + c + ")") + "*" + mono;
        if (s.empty()) s = piece;
        else if (!piece.empty() && piece[0] == '-') s += " - " + piece.substr(1);
        else s += " + " + piece;
    }
    return s;
}

inline std::string qpoly_display(const QPoly& q, const std::string& var) {
    if (q.is_zero()) return "0";
    std::string s;
    for (long i = 0; i <= q.degree(); ++i) {
        Rat c = q.coeff(i);
        if (c == 0) continue;
        std::string mono = i == 0 ? "" : (i == 1 ? var : var + "^" + std::to_string(i));
        std::string cs = to_string(c < 0 ? Rat(-c) : c);
        std::string piece;
        if (mono.empty()) piece = cs;
        else if (cs == "1") piece = mono;
        else piece = (denominator(c) == 1 ? cs : "(" + cs + ")") + "*" + mono;
        if (s.empty()) s = (c < 0 ? "-" : "") + piece;
        else s += (c < 0 ? " - " : " + ") + piece;
    }
    return s;
}

// LaTeX rendering of a polynomial in t with t^k written as p^{-ks}.
inline std::string qpoly_latex_ps(const QPoly& q, const Int& p) {
    if (q.is_zero()) return "0";
    std::string s;
    for (long i = 0; i <= q.degree(); ++i) {
        Rat c = q.coeff(i);
        if (c == 0) continue;
        Rat a = c < 0 ? Rat(-c) : c;
        std::string cs = denominator(a) == 1 ? numerator(a).str()
                                             : "\\tfrac{" + numerator(a).str() + "}{" +
                                                   denominator(a).str() + "}";
        std::string mono;
        if (i == 1) mono = p.str() + "^{-s}";
        else if (i > 1) mono = p.str() + "^{-" + std::to_string(i) + "s}";
        std::string piece;
        if (mono.empty()) piece = cs;
        else if (cs == "1") piece = mono;
        else piece = cs + " \\, " + mono;
        if (s.empty()) s = (c < 0 ? "-" : "") + piece;
        else s += (c < 0 ? " - " : " + ") + piece;
    }
    return s;
}

inline std::pair<QPoly, QPoly> display_form(const ZetaRational& Z);

inline std::string zeta_latex(const ZetaRational& Z) {
    auto [num, den] = display_form(Z);
    if (den.degree() == 0) return qpoly_latex_ps(Rat(1) / den.coeff(0) * num, Z.prime());
    return "\\frac{" + qpoly_latex_ps(num, Z.prime()) + "}{" +
           qpoly_latex_ps(den, Z.prime()) + "}";
}

// Reports use the normalization with den(0) = 1: every Z(t) we print is a
// power series at t = 0, so the constant denominator coefficient is
// nonzero and this form reads naturally. The monic canonical form stays
// internal.
inline std::pair<QPoly, QPoly> display_form(const ZetaRational& Z) {
    Rat d0 = Z.denominator().coeff(0);
    if (d0 == 0 || Z.is_zero()) return {Z.numerator(), Z.denominator()};
    return {Rat(1) / d0 * Z.numerator(), Rat(1) / d0 * Z.denominator()};
}

inline Json render_zeta(const ZetaRational& Z, bool latex = false) {
    auto [pnum, pden] = display_form(Z);
    Json out;
    out["p"] = Z.prime().str();
    out["t"] = "p^{-s}";
    Json num = Json::array(), den = Json::array();
    for (long i = 0; i <= std::max<long>(pnum.degree(), 0); ++i)
        num.push_back(to_string(pnum.coeff(i)));
    for (long i = 0; i <= std::max<long>(pden.degree(), 0); ++i)
        den.push_back(to_string(pden.coeff(i)));
    out["numerator"] = std::move(num);
    out["denominator"] = std::move(den);
    out["display"] =
        "(" + qpoly_display(pnum, "t") + ") / (" + qpoly_display(pden, "t") + ")";
    if (latex) out["latex"] = zeta_latex(Z);
    return out;
}

inline Json render_face(const Face& f) {
    Json out;
    out["id"] = f.id;
    out["dimension"] = f.dimension;
    out["compact"] = f.compact;
    out["proper"] = f.proper;
    Json sp = Json::array();
    for (const auto& w : f.supp_points) sp.push_back(w);
    out["supp_points"] = std::move(sp);
    out["recession"] = f.recession;
    out["facets"] = f.facet_ids;
    return out;
}

inline Json render_ivec(const IVec& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(x.str());
    return a;
}

inline Json render_polyhedron(const NewtonPolyhedron& P, bool with_cones = true) {
    Json out;
    out["n"] = P.n;
    Json gens = Json::array();
    for (const auto& g : P.generators) gens.push_back(g);
    out["generators"] = std::move(gens);
    Json facets = Json::array();
    for (const auto& fc : P.facets) {
        Json jf;
        jf["normal"] = render_ivec(fc.normal);
        jf["offset"] = fc.offset.str();
        facets.push_back(std::move(jf));
    }
    out["facets"] = std::move(facets);
    Json faces = Json::array();
    for (const auto& f : P.faces) faces.push_back(render_face(f));
    out["faces"] = std::move(faces);
    if (with_cones) {
        Json cones = Json::array();
        for (const auto& f : P.faces) {
            if (!f.proper) continue;
            Cone c = cone_of_face(P, f);
            Json jc;
            jc["face"] = c.face_id;
            Json rays = Json::array();
            for (const auto& r : c.rays) rays.push_back(render_ivec(r));
            jc["rays"] = std::move(rays);
            Json pieces = Json::array();
            for (const auto& piece : c.pieces) {
                Json jp;
                Json prays = Json::array();
                for (const auto& r : piece.rays) prays.push_back(render_ivec(r));
                jp["rays"] = std::move(prays);
                Json pts = Json::array();
                for (const auto& h : piece.lattice_points) pts.push_back(render_ivec(h));
                jp["parallelepiped_points"] = std::move(pts);
                pieces.push_back(std::move(jp));
            }
            jc["pieces"] = std::move(pieces);
            cones.push_back(std::move(jc));
        }
        out["cones"] = std::move(cones);
    }
    return out;
}

inline const char* ball_kind_name(BallKind k) {
    switch (k) {
    case BallKind::ConstantNorm: return "constant-norm";
    case BallKind::DominantTerm: return "dominant-term";
    case BallKind::Undecided: return "undecided";
    }
    return "?";
}

inline Json render_ball_node(const BallNode& node) {
    Json out;
    out["center"] = node.center.str();
    out["m"] = node.m;
    out["status"] = ball_kind_name(node.status.kind);
    if (node.status.kind == BallKind::ConstantNorm) out["v"] = node.status.v0;
    if (node.status.kind == BallKind::DominantTerm) {
        out["n0"] = node.status.n0;
        out["v_b"] = node.status.v_b;
    }
    if (!node.children.empty()) {
        Json kids = Json::array();
        for (const auto& ch : node.children) kids.push_back(render_ball_node(ch));
        out["children"] = std::move(kids);
    }
    return out;
}

inline Json render_counts(const CongruenceCount& C) {
    Json out;
    out["p"] = C.p.str();
    out["n"] = C.n;
    Json ns = Json::array(), mus = Json::array(), series = Json::array();
    for (const auto& c : C.counts) ns.push_back(c.str());
    for (long m = 0; m <= C.max_level(); ++m) mus.push_back(to_string(C.mu(m)));
    for (const auto& s : zeta_series_from_counts(C)) series.push_back(to_string(s));
    out["N"] = std::move(ns);
    out["mu"] = std::move(mus);
    out["series"] = std::move(series);
    return out;
}

} // namespace igusa
