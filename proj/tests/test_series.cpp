#include <doctest.h>

#include "irrat/series.hpp"

using namespace irrat;

namespace {

SeriesSpec spec_of(const char* numer, const char* denom,
                   SignMode mode = SignMode::AllPositive, long start = 1) {
    SeriesSpec s;
    s.numer = parse_sequence_expr(numer);
    s.denom = parse_sequence_expr(denom);
    s.sign_mode = mode;
    s.start_index = start;
    return s;
}

const SeriesSpec kE = spec_of("1", "n!", SignMode::AllPositive, 0);
const SeriesSpec kTen = spec_of("1", "10^(n!)");
const SeriesSpec kSinThird = spec_of("1", "(2*n - 1)! * 3^(2*n - 1)", SignMode::Alternating);

} // namespace

TEST_CASE("terms and partial sums") {
    CHECK(partial_sum(kE, 3) == Rat(8, 3));
    CHECK(term(kE, 5) == Rat(1, 120));
    CHECK(term(kSinThird, 1) == Rat(1, 3));
    CHECK(term(kSinThird, 2) == Rat(-1, 162));
    CHECK(partial_sum(kTen, 3) == Rat(110001, 1000000));
}

TEST_CASE("telescoping cross-check") {
    // sum over 1/(n(n+1)) = 1/n - 1/(n+1); prefix sums are 1 - 1/(N+1)
    SeriesSpec s = spec_of("1", "n*(n + 1)");
    for (long N = 1; N <= 25; ++N) {
        CHECK(partial_sum(s, N) == 1 - Rat(1, N + 1));
    }
}

TEST_CASE("ratio certificates") {
    RatioCertificate cert = certify_ratios(kE, 30);
    CHECK(cert.from_index == 1); // c1/c0 = 1, c_{n+1}/c_n = 1/(n+1) <= 1/2 from n=1
    CHECK(cert.checked_to == 30);
    CHECK(cert.strength == Strength::ProvenOnPrefix);

    // ratio exactly 1/2 qualifies
    RatioCertificate geo = certify_ratios(spec_of("1", "2^n"), 20);
    CHECK(geo.from_index == 1);

    // growing terms yield no certificate
    CHECK_THROWS_AS(certify_ratios(spec_of("n!", "n"), 15), NoConvergenceEvidence);
}

TEST_CASE("ratio certificate envelope upgrade") {
    RatioCertificate cert = certify_ratios(kE, 30, parse_sequence_expr("1/(n + 1)"));
    CHECK(cert.strength == Strength::EnvelopeCertified);
    // an envelope that fails pointwise does not upgrade
    RatioCertificate weak = certify_ratios(kE, 30, parse_sequence_expr("1/(n^3)"));
    CHECK(weak.strength == Strength::ProvenOnPrefix);
}

TEST_CASE("tail bounds") {
    RatioCertificate cert = certify_ratios(kE, 30);
    Int fact10;
    mpz_fac_ui(fact10.get_mpz_t(), 10);
    Rat expected(2, fact10);
    expected.canonicalize();
    CHECK(tail_bound(kE, 9, cert) == expected);

    RatioCertificate cert10 = certify_ratios(kTen, 6);
    Rat expected10(2, 1000000);
    expected10.canonicalize();
    CHECK(tail_bound(kTen, 2, cert10) == expected10);

    CHECK_THROWS_AS(tail_bound(kE, 40, cert), CertificateGap);
}

TEST_CASE("tail containment on exact continuations") {
    for (long N = 1; N <= 12; ++N) {
        RatioCertificate cert = certify_ratios(kE, 41);
        Rat s = partial_sum(kE, N);
        Rat bound = tail_bound(kE, N, cert);
        for (long M = N + 1; M <= 40; ++M) {
            Rat sm = partial_sum(kE, M);
            CHECK(sm > s);
            CHECK(sm <= s + bound);
        }
    }
}

TEST_CASE("enclosures shrink to the requested width") {
    Rat last_width(-1);
    for (int digits : {5, 10, 20, 40}) {
        Enclosure enc = enclose(kE, digits);
        Rat width = enc.hi - enc.lo;
        Int p;
        mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(digits));
        CHECK(width <= Rat(1, p));
        CHECK(enc.lo < enc.hi);
        if (last_width >= 0) CHECK(width < last_width);
        last_width = width;
    }
}

TEST_CASE("alternating enclosure brackets the limit") {
    Enclosure enc = enclose(kSinThird, 15);
    // sin(1/3) = 0.3271946967961522441733440852676206060643014068937597915900...
    CHECK(enc.lo < Rat(Int("3271946967961523"), Int("10000000000000000")));
    CHECK(enc.hi > Rat(Int("3271946967961522"), Int("10000000000000000")));
}

TEST_CASE("decimal rendering") {
    Enclosure point;
    point.lo = Rat(1, 2);
    point.hi = Rat(1, 2);
    CHECK(render_decimal(point, 5) == "0.50000");

    Enclosure e10 = enclose(kE, 12);
    CHECK(render_decimal(e10, 10) == "2.7182818284…");

    Enclosure wide;
    wide.lo = Rat(1, 3);
    wide.hi = Rat(2, 3);
    CHECK_THROWS_AS(render_decimal(wide, 1), InsufficientWidth);
}

TEST_CASE("general sign mode uses the symmetric bound") {
    SeriesSpec s = spec_of("1", "2^n", SignMode::General);
    Enclosure enc = enclose(s, 6);
    // actual limit 1 lies inside (hi is exactly 1 here: sum + 2|c_{N+1}|)
    CHECK(enc.lo < 1);
    CHECK(enc.hi >= 1);
}
