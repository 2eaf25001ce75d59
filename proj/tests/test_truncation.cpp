#include "igusa/oracle.hpp"
#include "igusa/truncation.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace igusa;

namespace {

QPoly qp(std::vector<Rat> c) { return QPoly(std::move(c)); }

PolySeries poly1(const std::vector<Rat>& coeffs) { return PolySeries::from_coeffs(coeffs); }

} // namespace

TEST_CASE("family coefficients expand the defining product") {
    SeriesSpec fam = counterexample_family(3);
    CHECK(fam.coefficient({0}) == 1);
    CHECK(fam.coefficient({1}) == 1);
    for (long i = 2; i <= 8; ++i)
        CHECK(fam.coefficient({i}) == Rat(4 * ipow(3, static_cast<unsigned long>(i - 2))));
    CHECK_NOTHROW(fam.validate(3));

    SeriesSpec fam5 = counterexample_family(5);
    CHECK(fam5.coefficient({1}) == 3);
    CHECK(fam5.coefficient({4}) == Rat(16 * 25));
}

TEST_CASE("even truncations factor as the two-term product-plus-correction sum") {
    // f_{2D} = (x-1)^2 sum_{i<=2D-2} p^i x^i + p^{2D-1} x^{2D-1} (1 + (p-2)x)
    for (Int p : {3, 5}) {
        SeriesSpec fam = counterexample_family(p);
        for (long D = 1; D <= 4; ++D) {
            PolySeries lhs = truncate(fam, 2 * D);
            std::vector<Rat> geom;
            for (long i = 0; i <= 2 * D - 2; ++i)
                geom.push_back(Rat(ipow(p, static_cast<unsigned long>(i))));
            PolySeries sq = poly1({Rat(1), Rat(-2), Rat(1)});
            Rat lead(ipow(p, static_cast<unsigned long>(2 * D - 1)));
            std::vector<Rat> corr(static_cast<size_t>(2 * D), Rat(0));
            corr.push_back(Rat(p - 2) * lead); // degree 2D
            corr[static_cast<size_t>(2 * D - 1)] = lead;
            PolySeries rhs = sq * poly1(geom) + poly1(corr);
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("closed forms: Z_f vs Z_{f_{2D}}") {
    SECTION("D = 1 at p = 3 is 2/3 + t/3 after the erratum correction") {
        auto [zf, z2] = counterexample_closed_forms(3, 1);
        CHECK(zf == monomial_zeta(2, 3));
        CHECK(z2 == ZetaRational(qp({Rat(2, 3), Rat(1, 3)}), qp({Rat(1)}), 3));
    }
    SECTION("D = 2 at p = 3 ends in t^3/9") {
        auto [zf, z2] = counterexample_closed_forms(3, 2);
        CHECK(z2 == ZetaRational(qp({Rat(2, 3), Rat(0), Rat(2, 9), Rat(1, 9)}), qp({Rat(1)}), 3));
    }
    SECTION("the two forms always differ at t^{2D-1} and t^{2D}") {
        for (Int p : {3, 5})
            for (long D = 1; D <= 5; ++D) {
                auto [zf, z2] = counterexample_closed_forms(p, D);
                auto sf = zf.series(2 * D);
                auto s2 = z2.series(2 * D);
                CHECK(sf[static_cast<size_t>(2 * D - 1)] == 0);
                CHECK(s2[static_cast<size_t>(2 * D - 1)] ==
                      Rat(1, ipow(p, static_cast<unsigned long>(D))));
                CHECK(sf[static_cast<size_t>(2 * D)] ==
                      Rat(p - 1, p) * Rat(1, ipow(p, static_cast<unsigned long>(D))));
                CHECK(s2[static_cast<size_t>(2 * D)] == 0);
            }
    }
}

TEST_CASE("the closed form is the oracle's answer, not the misprinted exponent") {
    // Counts for f_2 = 4x^2 + x + 1 at p = 3 pin the residual exponent to
    // t^{2D-1}: the t^1 coefficient is 1/3 and the t^3 coefficient is 0.
    PrimeContext ctx(3);
    PolySeries f2 = truncate(counterexample_family(3), 2);
    auto series = zeta_series_from_counts(count_solutions(f2, ctx, 8));
    CHECK(series[1] == Rat(1, 3));
    CHECK(series[3] == 0);
    auto [zf, z2] = counterexample_closed_forms(3, 1);
    auto closed = z2.series(7);
    for (size_t m = 0; m < series.size(); ++m) CHECK(series[m] == closed[m]);
}

TEST_CASE("one_var_zeta reproduces the closed forms across p and D") {
    for (Int p : {3, 5}) {
        PrimeContext ctx(p);
        SeriesSpec fam = counterexample_family(p);
        for (long D = 1; D <= 4; ++D) {
            auto [zf, z2] = counterexample_closed_forms(p, D);
            ZetaRational engine = one_var_zeta(truncate(fam, 2 * D), ctx);
            CHECK(engine == z2);
            CHECK_FALSE(engine == zf);
        }
    }
}

TEST_CASE("scan of the counterexample family is non-stabilizing by closed form") {
    PrimeContext ctx(3);
    auto result = scan(counterexample_family(3), ctx, 2, 8, ScanEngine::OneVar);
    CHECK(result.verdict.kind == ScanVerdict::Kind::NonStabilizing);
    CHECK(result.verdict.proof_tag == "counterexample-closed-form");
    // consecutive even cuts keep changing
    REQUIRE(result.results.size() == 7);
    for (const auto& entry : result.results) REQUIRE(entry.zeta.has_value());
    CHECK_FALSE(*result.results[0].zeta == *result.results[2].zeta);
    CHECK_FALSE(*result.results[2].zeta == *result.results[4].zeta);
}

TEST_CASE("scan of the certified monomial-tail family stabilizes at the analytic threshold") {
    PrimeContext ctx(3);
    SeriesSpec fam = monomial_tail_family(3);
    CHECK(polyhedron_threshold(fam) == 2);
    CHECK(mod_p_threshold(fam, 3) == 2);
    auto result = scan(fam, ctx, 1, 7, ScanEngine::Newton);
    REQUIRE(result.verdict.kind == ScanVerdict::Kind::StabilizedAt);
    CHECK(result.verdict.N == 2);
    for (const auto& entry : result.results) {
        if (entry.D < 2) continue;
        REQUIRE(entry.zeta.has_value());
        CHECK(*entry.zeta == monomial_zeta(2, 3));
    }
}

TEST_CASE("scan entries validate against congruence counts") {
    PrimeContext ctx(3);
    SeriesSpec fam = counterexample_family(3);
    auto result = scan(fam, ctx, 2, 6, ScanEngine::OneVar);
    for (const auto& entry : result.results) {
        REQUIRE(entry.zeta.has_value());
        CHECK(verify_zeta(*entry.zeta, count_solutions(truncate(fam, entry.D), ctx, 5)).pass);
    }
}

TEST_CASE("polynomial scans stabilize trivially") {
    PrimeContext ctx(3);
    SeriesSpec s = SeriesSpec::polynomial(poly1({Rat(0), Rat(-1), Rat(1)}));
    auto viaOnevar = scan(s, ctx, 0, 6, ScanEngine::OneVar);
    REQUIRE(viaOnevar.verdict.kind == ScanVerdict::Kind::StabilizedAt);
    CHECK(viaOnevar.verdict.N <= 2);
    auto viaNewton = scan(s, ctx, 0, 6, ScanEngine::Newton);
    REQUIRE(viaNewton.verdict.kind == ScanVerdict::Kind::StabilizedAt);
    CHECK(viaNewton.verdict.N <= 2);
}

TEST_CASE("per-degree engine failures are recorded, not fatal") {
    PrimeContext ctx(3);
    // truncations below degree 1 of the monomial-tail family are zero or
    // constant: the engines reject them but the scan keeps going.
    auto result = scan(monomial_tail_family(3), ctx, 0, 5, ScanEngine::Newton);
    CHECK(!result.results[0].error.empty());
    CHECK(result.results[2].zeta.has_value());
}
