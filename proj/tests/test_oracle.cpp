#include <doctest.h>

#include <algorithm>

#include "irrat/catalog.hpp"
#include "irrat/oracle.hpp"

using namespace irrat;

namespace {

SeriesSpec e_spec() {
    SeriesSpec s;
    s.numer = parse_sequence_expr("1");
    s.denom = parse_sequence_expr("n!");
    s.start_index = 0;
    return s;
}

} // namespace

TEST_CASE("brute sum agrees with the main summation on every catalog entry") {
    for (const auto& name : list_builtins()) {
        CatalogEntry e = builtin(name);
        long depth = std::min<long>(30, e.max_exact_index);
        long last = e.spec.start_index + depth - 1;
        CHECK_MESSAGE(oracle::brute_sum(e.spec, depth) == partial_sum(e.spec, last), name);
        if (e.spec2) {
            CHECK(oracle::brute_sum(*e.spec2, depth) == partial_sum(*e.spec2, last));
        }
    }
}

TEST_CASE("convergents of a point enclosure") {
    Enclosure half;
    half.lo = Rat(1, 2);
    half.hi = Rat(1, 2);
    auto cl = oracle::convergents(half, 5);
    REQUIRE(cl.items.size() == 1); // the leading 0/1 is skipped
    CHECK(cl.items[0].p == 1);
    CHECK(cl.items[0].q == 2);
    CHECK_FALSE(cl.truncated);
}

TEST_CASE("convergents of e match the classical expansion") {
    Enclosure enc = enclose(e_spec(), 50);
    auto cl = oracle::convergents(enc, 6);
    REQUIRE(cl.items.size() == 6);
    long expect_p[] = {2, 3, 8, 11, 19, 87};
    long expect_q[] = {1, 1, 3, 4, 7, 32};
    for (int k = 0; k < 6; ++k) {
        CHECK(cl.items[k].p == expect_p[k]);
        CHECK(cl.items[k].q == expect_q[k]);
    }
}

TEST_CASE("convergent gap law against the enclosure") {
    Enclosure enc = enclose(e_spec(), 50);
    auto cl = oracle::convergents(enc, 10);
    REQUIRE(cl.items.size() >= 3);
    for (std::size_t k = 0; k + 1 < cl.items.size(); ++k) {
        // |theta - p_k/q_k| < 1/(q_k q_{k+1}) holds across the interval
        Rat approx(cl.items[k].p, cl.items[k].q);
        approx.canonicalize();
        Rat bound(1, cl.items[k].q * cl.items[k + 1].q);
        CHECK(abs(enc.lo - approx) < bound);
        CHECK(abs(enc.hi - approx) < bound);
    }
}

TEST_CASE("witness verification trichotomy") {
    GrowthFn square{parse_sequence_expr("n^2"), "q^2"};
    GrowthFn cube{parse_sequence_expr("n^3"), "q^3"};

    Enclosure half;
    half.lo = Rat(1, 2);
    half.hi = Rat(1, 2);
    CHECK(oracle::verify_witness(half, Int(1), Int(2), square) == oracle::WitnessCheck::Holds);

    SeriesSpec ten;
    ten.numer = parse_sequence_expr("1");
    ten.denom = parse_sequence_expr("10^(n!)");
    Enclosure liou = enclose(ten, 40);
    CHECK(oracle::verify_witness(liou, Int(110001), Int(1000000), cube) ==
          oracle::WitnessCheck::Holds);

    // |e - 30/10| ~ 0.28 but 1/f(10) = 1/100, so the witness fails
    Enclosure e_enc = enclose(e_spec(), 30);
    CHECK(oracle::verify_witness(e_enc, Int(30), Int(10), square) ==
          oracle::WitnessCheck::Fails);

    // enclosure too wide to decide: |theta - 1/2| straddles 1/f(2) = 1/4
    Enclosure wide;
    wide.lo = Rat(7, 10);
    wide.hi = Rat(8, 10);
    CHECK(oracle::verify_witness(wide, Int(1), Int(2), square) ==
          oracle::WitnessCheck::Indeterminate);
}

TEST_CASE("independent digit extraction") {
    Enclosure enc = enclose(e_spec(), 55);
    CHECK(oracle::decimal_digits(enc.lo, enc.hi, 50) ==
          "2.71828182845904523536028747135266249775724709369995");
    CHECK_THROWS_AS(oracle::decimal_digits(Rat(1, 3), Rat(2, 3), 2), InsufficientWidth);
}
