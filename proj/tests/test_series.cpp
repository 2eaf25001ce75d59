#include "igusa/series.hpp"
#include "igusa/truncation.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace igusa;

namespace {

PolySeries poly1(const std::vector<Rat>& coeffs) { return PolySeries::from_coeffs(coeffs); }

} // namespace

TEST_CASE("truncation of the built-in family") {
    SeriesSpec fam = counterexample_family(3);
    // (x-1)^2 (1 + 3x + 9x^2 + ...) cut at degree 2.
    CHECK(truncate(fam, 2) == poly1({Rat(1), Rat(1), Rat(4)}));
    CHECK(truncate(fam, 0) == poly1({Rat(1)}));
}

TEST_CASE("truncation past the degree returns the polynomial itself") {
    PolySeries f = poly1({Rat(2), Rat(0), Rat(5)});
    SeriesSpec s = SeriesSpec::polynomial(f);
    CHECK(truncate(s, 2) == f);
    CHECK(truncate(s, 40) == f);
    CHECK(truncate(s, 1) == poly1({Rat(2)}));
}

TEST_CASE("reduce_mod keeps exactly the terms of valuation below M") {
    SECTION("family mod 3 is (x-1)^2 mod 3") {
        SeriesSpec fam = counterexample_family(3);
        CHECK(reduce_mod(fam, 1, 3) == poly1({Rat(1), Rat(1), Rat(1)}));
    }
    SECTION("p x reduces to zero at M = 1") {
        PolySeries f = poly1({Rat(0), Rat(3)});
        CHECK(reduce_mod(f, 1, 3).is_zero());
    }
    SECTION("x + p^3 x^2 at M = 3 keeps only x") {
        PolySeries f = poly1({Rat(0), Rat(1), Rat(27)});
        CHECK(reduce_mod(f, 3, 3) == poly1({Rat(0), Rat(1)}));
    }
    SECTION("a bare oracle without certificate is rejected") {
        auto tail = [](const Exponent&) { return Rat(0); };
        SeriesSpec bare(poly1({Rat(1)}), 0, tail);
        CHECK_THROWS_AS(reduce_mod(bare, 1, 3), CertificateMissing);
    }
}

TEST_CASE("reduce_mod commutes with truncation past the certificate threshold") {
    SeriesSpec fam = counterexample_family(3);
    for (long M = 1; M <= 4; ++M) {
        long D = fam.coefficient_degree_bound(M);
        CHECK(reduce_mod(truncate(fam, D), M, 3) == reduce_mod(fam, M, 3));
        CHECK(reduce_mod(truncate(fam, D + 3), M, 3) == reduce_mod(fam, M, 3));
    }
}

TEST_CASE("formal derivatives") {
    PolySeries f(2, {Term{{2, 0}, Rat(1)}, Term{{1, 1}, Rat(1)}});
    CHECK(derivative(f, 0) == PolySeries(2, {Term{{1, 0}, Rat(2)}, Term{{0, 1}, Rat(1)}}));
    CHECK(derivative(PolySeries(2, {Term{{0, 0}, Rat(7)}}), 0).is_zero());
    // (x-1)^2 expanded
    CHECK(derivative(poly1({Rat(1), Rat(-2), Rat(1)}), 0) == poly1({Rat(-2), Rat(2)}));
}

TEST_CASE("taylor shift examples") {
    SECTION("x^2 at 1 + p x") {
        PolySeries f = poly1({Rat(0), Rat(0), Rat(1)});
        auto c = taylor_shift(f, PadicApprox(1, 6, 3), 1, 6);
        REQUIRE(c.size() == 3);
        CHECK(c[0].value() == 1);
        CHECK(c[1].value() == 6);
        CHECK(c[2].value() == 9);
    }
    SECTION("x - alpha becomes (0, p^m)") {
        PolySeries f = poly1({Rat(-7), Rat(1)});
        auto c = taylor_shift(f, PadicApprox(7, 6, 5), 2, 6);
        REQUIRE(c.size() == 2);
        CHECK(c[0].value() == 0);
        CHECK(c[1].value() == 25);
    }
    SECTION("(x-1)^2 at 1 + p^2 x has the double-root pattern") {
        PolySeries f = poly1({Rat(1), Rat(-2), Rat(1)});
        auto c = taylor_shift(f, PadicApprox(1, 8, 3), 2, 8);
        REQUIRE(c.size() == 3);
        CHECK(c[0].value() == 0);
        CHECK(c[1].value() == 0);
        CHECK(c[2].value() == 81);
    }
}

TEST_CASE("taylor shift agrees with direct evaluation at random points") {
    std::mt19937_64 rng(1234);
    for (int trial = 0; trial < 50; ++trial) {
        Int p = std::vector<Int>{2, 3, 5}[rng() % 3];
        long M = 8;
        Int pM = ipow(p, static_cast<unsigned long>(M));
        std::vector<Rat> coeffs(1 + rng() % 6);
        for (auto& c : coeffs) c = Rat(Int(rng() % 200));
        PolySeries f = poly1(coeffs);
        if (f.is_zero()) continue;
        Int alpha = Int(rng() % 50);
        long m = static_cast<long>(rng() % 3);
        auto c = taylor_shift(f, PadicApprox(alpha, M, p), m, M);
        Int u = Int(rng() % 100);
        Int direct = f.eval_mod({alpha + ipow(p, static_cast<unsigned long>(m)) * u}, pM, p);
        Int viaShift = 0;
        for (auto it = c.rbegin(); it != c.rend(); ++it)
            viaShift = mod_canonical(viaShift * u + it->value(), pM);
        CHECK(direct == viaShift);
    }
}

TEST_CASE("series specs validate their certificates and coefficients") {
    SeriesSpec fam = counterexample_family(5);
    CHECK_NOTHROW(fam.validate(5));
    CHECK(fam.coefficient({7}) == Rat(16 * ipow(5, 5)));

    auto bad_tail = [](const Exponent&) { return Rat(1); }; // valuation never grows
    SeriesSpec bad(PolySeries::from_coeffs({Rat(1)}), 0, bad_tail, Certificate{Rat(1), Rat(0)}, 0);
    CHECK_THROWS_AS(bad.validate(3), ValidationError);

    CHECK_THROWS_AS(PolySeries::from_coeffs({Rat(1, 2)}).check_p_integral(2), ValidationError);
}

TEST_CASE("polynomial arithmetic helpers behave like a ring") {
    PolySeries x = poly1({Rat(0), Rat(1)});
    PolySeries one = poly1({Rat(1)});
    PolySeries sq = (x - one) * (x - one);
    CHECK(sq == poly1({Rat(1), Rat(-2), Rat(1)}));
    CHECK(sq.eval({Rat(4)}) == Rat(9));
    CHECK(PolySeries(1, {Term{{0}, Rat(1)}, Term{{0}, Rat(-1)}}).is_zero());
}
