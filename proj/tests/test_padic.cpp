#include "igusa/padic.hpp"
#include "igusa/prime.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace igusa;

TEST_CASE("valuation of tracked residues") {
    // 18 = 2 * 3^2
    PadicApprox a(18, 4, 3);
    CHECK(a.valuation() == Valuation{2, true});

    PadicApprox zero(0, 4, 3);
    CHECK(zero.valuation() == Valuation{4, false}); // "at least 4", not v = 4

    PadicApprox b(12, 5, 2); // 12 = 3 * 2^2
    CHECK(b.valuation() == Valuation{2, true});
}

TEST_CASE("valuation is additive under multiplication below the precision cap") {
    std::mt19937_64 rng(20240811);
    for (int trial = 0; trial < 200; ++trial) {
        Int p = std::vector<Int>{2, 3, 5, 7}[rng() % 4];
        long M = 18;
        Int pm = ipow(p, static_cast<unsigned long>(M));
        Int x = Int(rng() % 4000 + 1), y = Int(rng() % 4000 + 1);
        long vx = vp(x, p), vy = vp(y, p);
        if (vx + vy >= M) continue;
        PadicApprox prod(mod_canonical(x * y, pm), M, p);
        CHECK(prod.valuation() == Valuation{vx + vy, true});
    }
}

TEST_CASE("prime context rejects composites") {
    CHECK_THROWS_AS(PrimeContext(6), ValidationError);
    CHECK_THROWS_AS(PrimeContext(1), ValidationError);
    CHECK_NOTHROW(PrimeContext(13));
}

TEST_CASE("balls compare by center residue and radius") {
    PrimeContext ctx(3);
    Ball b1(PadicApprox(4, 3, 3), 2);
    Ball b2(PadicApprox(13, 3, 3), 2); // 13 = 4 + 9
    Ball b3(PadicApprox(5, 3, 3), 2);
    CHECK(b1.same_ball(b2));
    CHECK_FALSE(b1.same_ball(b3));
    CHECK(b1.measure() == Rat(1, 9));
    CHECK_THROWS_AS(Ball(PadicApprox(1, 1, 3), 2), ValidationError);
}
