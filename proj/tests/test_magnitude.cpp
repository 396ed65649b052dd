#include <doctest.h>

#include <random>

#include "ast_gen.hpp"
#include "irrat/magnitude.hpp"

using namespace irrat;

TEST_CASE("compare on exact values") {
    CHECK(compare(magnitude_from_int(Int(3)), magnitude_from_int(Int(7))) ==
          Certainty::ProvenBelow);
    CHECK(compare(magnitude_from_int(Int(7)), magnitude_from_int(Int(7))) ==
          Certainty::ProvenAtOrAbove);
    CHECK(compare(magnitude_from_int(Int(8)), magnitude_from_int(Int(7))) ==
          Certainty::ProvenAtOrAbove);
}

TEST_CASE("compare across huge scales") {
    auto m = [](const char* text, long n) {
        return magnitude_of(parse_sequence_expr(text), n);
    };
    // 2^(2^64) vs 10^(10^18): exponents 1.8e19 vs 3.3e18 in bits.
    CHECK(compare(m("2^(2^(2^n))", 6), m("10^(10^(2*n + 6))", 6)) ==
          Certainty::ProvenAtOrAbove);
    // 4^15 * 2 = 2^31 far below 2^65536.
    CHECK(compare(m("4^15 * 2", 1), m("tower(2,2*n,2*n)", 2)) == Certainty::ProvenBelow);
    // the same huge tower on both sides is not provably below itself
    CHECK(compare(m("tower(2,2*n,2*n)", 2), m("tower(2,2*n,2*n)", 2)) !=
          Certainty::ProvenBelow);
}

TEST_CASE("ratio_below_half boundary") {
    CHECK(ratio_below_half(magnitude_from_int(Int(1)), magnitude_from_int(Int(2))) ==
          Certainty::ProvenAtOrAbove); // 2*1 == 2, not strictly below
    CHECK(ratio_below_half(magnitude_from_int(Int(1)), magnitude_from_int(Int(3))) ==
          Certainty::ProvenBelow);
    CHECK(ratio_below_half(magnitude_from_int(Int(5)), magnitude_from_int(Int(7))) ==
          Certainty::ProvenAtOrAbove);
}

TEST_CASE("magnitude agrees with exact evaluation on random power expressions") {
    std::mt19937 rng(987654321);
    int unknown = 0, total = 0;
    for (int i = 0; i < 1000; ++i) {
        SequenceExpr ex(testgen::random_power_expr(rng));
        SequenceExpr ey(testgen::random_power_expr(rng));
        Int vx, vy;
        try {
            vx = ex.eval(1);
            vy = ey.eval(1);
        } catch (const EvalError&) {
            continue; // outside the exact budget; covered by acceptance
        }
        Magnitude mx = magnitude_of(ex, 1);
        Magnitude my = magnitude_of(ey, 1);
        Certainty c = compare(mx, my);
        ++total;
        if (c == Certainty::Unknown) {
            ++unknown;
        } else if (c == Certainty::ProvenBelow) {
            CHECK_MESSAGE(vx < vy, ex.format() << " vs " << ey.format());
        } else {
            CHECK_MESSAGE(vx >= vy, ex.format() << " vs " << ey.format());
        }
    }
    CHECK(total > 500);
    // the representation should decide nearly all in-budget comparisons
    CHECK(unknown * 10 < total);
}

TEST_CASE("magnitude survives values beyond the bit budget") {
    // 2^(2^25) has 2^25+1 bits, far over the default budget.
    Magnitude m = magnitude_of(parse_sequence_expr("2^(2^n)"), 25);
    CHECK_FALSE(m.exact.has_value());
    Magnitude below = magnitude_of(parse_sequence_expr("2^(2^n)"), 24);
    Magnitude above = magnitude_of(parse_sequence_expr("2^(2^n)"), 26);
    CHECK(compare(below, m) == Certainty::ProvenBelow);
    CHECK(compare(m, above) == Certainty::ProvenBelow);
}

TEST_CASE("prime magnitudes beyond the sieve use growth bounds") {
    // index 2^64 is far beyond the sieve ceiling
    Magnitude p = magnitude_of(parse_sequence_expr("nthprime(2^(2^(n!)))"), 3);
    CHECK(p.prime_heuristic);
    Magnitude lo = magnitude_of(parse_sequence_expr("2^60"), 1);
    Magnitude hi = magnitude_of(parse_sequence_expr("2^80"), 1);
    CHECK(compare(lo, p) == Certainty::ProvenBelow);
    CHECK(compare(p, hi) == Certainty::ProvenBelow);

    // exact below the ceiling: p_16 = 53, no heuristic flag
    Magnitude small = magnitude_of(parse_sequence_expr("nthprime(2^(2^(n!)))"), 2);
    CHECK_FALSE(small.prime_heuristic);
    CHECK(small.exact == Int(53));
}

TEST_CASE("describe renders huge exact values by scale") {
    Magnitude m = magnitude_of(parse_sequence_expr("tower(2,2*n,2*n)"), 2);
    CHECK(m.describe() == "2^65536 (65537 bits)");
    CHECK(magnitude_from_int(Int(42)).describe() == "42");
}

TEST_CASE("arithmetic soundness spot checks") {
    Magnitude a = magnitude_of(parse_sequence_expr("2^100"), 1);
    Magnitude b = magnitude_of(parse_sequence_expr("2^101"), 1);
    CHECK(compare(mag_add(a, a), b) != Certainty::ProvenBelow);   // 2^100+2^100 == 2^101
    CHECK(compare(mag_mul(a, a), b) == Certainty::ProvenAtOrAbove); // 2^200 >= 2^101
    Magnitude small = magnitude_from_int(Int(2));
    // 2^(2^100) dwarfs 2^65536
    CHECK(compare(mag_pow(small, a),
                  magnitude_of(parse_sequence_expr("tower(2,2*n,2*n)"), 2)) ==
          Certainty::ProvenAtOrAbove);
    // x - 1 stays within [x/2, x]
    Magnitude sub = mag_sub_one(a);
    CHECK(compare(sub, b) == Certainty::ProvenBelow);
    CHECK(compare(magnitude_of(parse_sequence_expr("2^99"), 1), sub) ==
          Certainty::ProvenBelow);
}
