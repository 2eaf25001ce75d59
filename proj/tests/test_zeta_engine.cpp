#include "igusa/oracle.hpp"
#include "igusa/zeta_engine.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <functional>
#include <random>

using namespace igusa;

namespace {

QPoly qp(std::vector<Rat> c) { return QPoly(std::move(c)); }

PolySeries monomial1(long e) { return PolySeries::monomial(1, {e}, Rat(1)); }

} // namespace

TEST_CASE("unit box factor") {
    SECTION("no unit zeros leaves the torus measure") {
        ZetaRational L = unit_box_factor(0, 2, 3);
        CHECK(L == ZetaRational::constant(Rat(4, 9), 3));
    }
    SECTION("n = 1, p = 3, N = 1 simplifies to (3+t)/(3(3-t))") {
        ZetaRational L = unit_box_factor(1, 1, 3);
        CHECK(L == ZetaRational(qp({Rat(3), Rat(1)}), qp({Rat(9), Rat(-3)}), 3));
    }
    SECTION("n = 2, p = 3, N = 2 as for x + y") {
        ZetaRational L = unit_box_factor(2, 2, 3);
        // (1/9)(4 - 6(1-t)/(3-t)) = (6 + 2t) / (9(3-t))
        CHECK(L == ZetaRational(qp({Rat(6), Rat(2)}), qp({Rat(27), Rat(-9)}), 3));
    }
}

namespace {

// Series expansion of the unit-torus integral of |f|^s by direct counting:
// nu_m = p^{-nm} #{ x mod p^m, all coordinates units, f(x) = 0 mod p^m }.
std::vector<Rat> unit_torus_series(const PolySeries& f, const Int& p, long M) {
    int n = f.vars();
    std::vector<Rat> nu;
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
                if (m > 0 && v % p == 0) continue;
                x[static_cast<size_t>(i)] = v;
                scan(i + 1);
            }
        };
        scan(0);
        Int total = ipow(pm, static_cast<unsigned long>(n));
        nu.push_back(m == 0 ? Rat(ipow(p - 1, static_cast<unsigned long>(n)),
                                  ipow(p, static_cast<unsigned long>(n)))
                            : Rat(count, total));
    }
    std::vector<Rat> series;
    for (long m = 0; m < M; ++m) series.push_back(nu[static_cast<size_t>(m)] - nu[static_cast<size_t>(m + 1)]);
    return series;
}

} // namespace

TEST_CASE("unit box factor matches direct unit-torus counting") {
    struct Case {
        PolySeries f;
        Int p;
    };
    std::vector<Case> cases = {
        {PolySeries::from_coeffs({Rat(-1), Rat(1)}), 3},                     // x - 1, N = 1
        {PolySeries(2, {Term{{1, 0}, Rat(1)}, Term{{0, 1}, Rat(1)}}), 3},    // x + y, N = 2
        {PolySeries(2, {Term{{1, 1}, Rat(1)}, Term{{0, 0}, Rat(3)}}), 3},    // xy + 3
        {PolySeries::from_coeffs({Rat(2), Rat(1)}), 5},                      // x + 2
    };
    for (const auto& c : cases) {
        PrimeContext ctx(c.p);
        // Prop-style hypothesis: no singular unit zeros of f mod p.
        long N = 0;
        detail::for_each_unit_point(c.p, c.f.vars(), ctx.enum_limit, [&](const std::vector<Int>& x) {
            if (c.f.eval_mod(x, c.p, c.p) == 0) ++N;
        });
        ZetaRational L = unit_box_factor(N, c.f.vars(), c.p);
        auto expected = unit_torus_series(c.f, c.p, 4);
        auto got = L.series(3);
        for (long m = 0; m <= 3; ++m)
            CHECK(got[static_cast<size_t>(m)] == expected[static_cast<size_t>(m)]);
    }
}

TEST_CASE("cone sums") {
    SECTION("one-variable vertex gives the geometric series") {
        NewtonPolyhedron P = build_polyhedron(std::vector<Exponent>{{3}}, 1);
        Cone c = cone_of_face(P, P.faces.front());
        ZetaRational S = cone_sum(c, P, 5).value;
        // sum_{k>=1} p^{-k} t^{3k}
        CHECK(S == ZetaRational(qp({Rat(0), Rat(0), Rat(0), Rat(1, 5)}),
                                qp({Rat(1), Rat(0), Rat(0), Rat(-1, 5)}), 5));
    }
    SECTION("diagonal cone of the simplex edge") {
        PolySeries f(2, {Term{{1, 0}, Rat(1)}, Term{{0, 1}, Rat(1)}});
        NewtonPolyhedron P = build_polyhedron(f);
        const Face* edge = nullptr;
        for (const auto& tau : P.faces)
            if (tau.proper && tau.dimension == 1 && tau.compact) edge = &tau;
        REQUIRE(edge);
        ZetaRational S = cone_sum(cone_of_face(P, *edge), P, 3).value;
        CHECK(S == ZetaRational(qp({Rat(0), Rat(1, 9)}), qp({Rat(1), Rat(-1, 9)}), 3));
    }
}

TEST_CASE("monomial closed form") {
    CHECK(monomial_zeta(1, 2) == ZetaRational(qp({Rat(1, 2)}), qp({Rat(1), Rat(-1, 2)}), 2));
    CHECK(monomial_zeta(2, 3) ==
          ZetaRational(qp({Rat(2, 3)}), qp({Rat(1), Rat(0), Rat(-1, 3)}), 3));
    CHECK(monomial_zeta(3, 5) ==
          ZetaRational(qp({Rat(4, 5)}), qp({Rat(1), Rat(0), Rat(0), Rat(-1, 5)}), 5));
}

TEST_CASE("pipeline reproduces the monomial closed form") {
    for (Int p : {2, 3, 5})
        for (long n0 = 1; n0 <= 4; ++n0) {
            PrimeContext ctx(p);
            CHECK(igusa_zeta_newton(monomial1(n0), ctx) == monomial_zeta(n0, p));
        }
}

TEST_CASE("xy at p = 3 is (4/9)/(1 - t/3)^2") {
    PrimeContext ctx(3);
    PolySeries f(2, {Term{{1, 1}, Rat(1)}});
    ZetaRational Z = igusa_zeta_newton(f, ctx);
    CHECK(Z == ZetaRational(qp({Rat(4, 9)}), qp({Rat(1), Rat(-1, 3)}) * qp({Rat(1), Rat(-1, 3)}),
                            3));
    CHECK(verify_zeta(Z, count_solutions(f, ctx, 6)).pass);
}

TEST_CASE("zeta is invariant under variable permutation") {
    PrimeContext ctx(3);
    PolySeries f(2, {Term{{3, 0}, Rat(1)}, Term{{1, 1}, Rat(1)}, Term{{0, 2}, Rat(1)}});
    CHECK(igusa_zeta_newton(f, ctx) == igusa_zeta_newton(f.permute_vars({1, 0}), ctx));
}

TEST_CASE("hypothesis and degeneracy guards") {
    PrimeContext ctx(3);
    CHECK_THROWS_AS(igusa_zeta_newton(PolySeries::from_coeffs({Rat(1), Rat(1)}), ctx),
                    HypothesisViolated); // f(0) != 0
    CHECK_THROWS_AS(igusa_zeta_newton(PolySeries(1), ctx), HypothesisViolated); // f = 0
    PolySeries sq(2, {Term{{2, 0}, Rat(1)}, Term{{1, 1}, Rat(2)}, Term{{0, 2}, Rat(1)}});
    CHECK_THROWS_AS(igusa_zeta_newton(sq, ctx), DegenerateInput);
}

TEST_CASE("series coefficients of Z are measures in [0, 1]") {
    PrimeContext ctx2(2), ctx3(3);
    std::vector<std::pair<PolySeries, PrimeContext*>> corpus = {
        {monomial1(1), &ctx2},
        {monomial1(2), &ctx3},
        {PolySeries(2, {Term{{1, 1}, Rat(1)}}), &ctx3},
        {PolySeries(2, {Term{{2, 0}, Rat(1)}, Term{{0, 2}, Rat(1)}}), &ctx3},
    };
    for (const auto& [f, ctx] : corpus) {
        auto coeffs = igusa_zeta_newton(f, *ctx).series(8);
        for (const auto& c : coeffs) {
            CHECK(c >= 0);
            CHECK(c <= 1);
        }
    }
}

TEST_CASE("randomized two-variable polynomials match the oracle") {
    std::mt19937_64 rng(171717);
    int checked = 0;
    while (checked < 120) {
        Int p = std::vector<Int>{2, 3}[rng() % 2];
        PrimeContext ctx(p);
        int nterms = 2 + static_cast<int>(rng() % 3);
        std::vector<Term> terms;
        for (int t = 0; t < nterms; ++t) {
            Exponent e{static_cast<long>(rng() % 4), static_cast<long>(rng() % 4)};
            if (e[0] == 0 && e[1] == 0) e[0] = 1;
            Rat c(Int(rng() % 7) - 3);
            if (c == 0) c = 1;
            terms.push_back({e, c});
        }
        PolySeries f(2, terms);
        if (f.is_zero()) continue;
        ZetaRational Z = ZetaRational::zero(p);
        try {
            Z = igusa_zeta_newton(f, ctx);
        } catch (const DegenerateInput&) {
            continue;
        }
        REQUIRE(verify_zeta(Z, count_solutions(f, ctx, 4)).pass);
        ++checked;
    }
}

TEST_CASE("three and four variable pipelines agree with the oracle") {
    SECTION("x + y + z at p = 2") {
        PrimeContext ctx(2);
        PolySeries f(3, {Term{{1, 0, 0}, Rat(1)}, Term{{0, 1, 0}, Rat(1)},
                         Term{{0, 0, 1}, Rat(1)}});
        CHECK(verify_zeta(igusa_zeta_newton(f, ctx), count_solutions(f, ctx, 4)).pass);
    }
    SECTION("xy + z^2 at p = 3 exercises the non-simplicial vertex cone") {
        PrimeContext ctx(3);
        PolySeries f(3, {Term{{1, 1, 0}, Rat(1)}, Term{{0, 0, 2}, Rat(1)}});
        CHECK(verify_zeta(igusa_zeta_newton(f, ctx), count_solutions(f, ctx, 3)).pass);
    }
    SECTION("x + y + z + w at p = 2") {
        PrimeContext ctx(2);
        PolySeries f(4, {Term{{1, 0, 0, 0}, Rat(1)}, Term{{0, 1, 0, 0}, Rat(1)},
                         Term{{0, 0, 1, 0}, Rat(1)}, Term{{0, 0, 0, 1}, Rat(1)}});
        CHECK(verify_zeta(igusa_zeta_newton(f, ctx), count_solutions(f, ctx, 3)).pass);
    }
}

TEST_CASE("face contributions are reported per face in canonical order") {
    PrimeContext ctx(3);
    PolySeries f(2, {Term{{1, 1}, Rat(1)}});
    auto breakdown = igusa_zeta_newton_detailed(f, ctx);
    REQUIRE(breakdown.contributions.size() == breakdown.polyhedron.faces.size());
    ZetaRational total = ZetaRational::zero(3);
    for (const auto& c : breakdown.contributions)
        total = total + (c.cone.is_zero() ? c.unit_box : c.unit_box * c.cone);
    CHECK(total == breakdown.zeta);
}
