#include <doctest.h>

#include "irrat/criteria.hpp"

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

} // namespace

TEST_CASE("weighted ratio identity a_{n+1} b_n / b_{n+1}") {
    // for 1/n!: q_n = 1/(n+1)
    for (long n = 1; n <= 12; ++n) {
        CHECK(weighted_ratio(kE, n) == Rat(1, n + 1));
    }
    // for (n+1)/n!: q_n = (n+2)/(n+1)
    SeriesSpec remark = spec_of("n + 1", "n!", SignMode::AllPositive, 0);
    for (long n = 1; n <= 12; ++n) {
        CHECK(weighted_ratio(remark, n) == Rat(n + 2, n + 1));
    }
}

TEST_CASE("divisibility chain") {
    CHECK(check_divisibility_chain(kE, 20).holds);
    ConditionReport bad = check_divisibility_chain(spec_of("1", "2*n + 1"), 10);
    CHECK_FALSE(bad.holds);
    CHECK(bad.from_n == 1); // 3 does not divide 5
}

TEST_CASE("weighted ratio limit checker") {
    ConditionReport ok = check_weighted_ratio_limit(kE, 20);
    CHECK(ok.holds);
    CHECK(ok.strength == Strength::ProvenOnPrefix);

    // constant ratio 1/2 never decreases strictly
    ConditionReport flat = check_weighted_ratio_limit(spec_of("1", "2^n"), 20);
    CHECK_FALSE(flat.holds);

    // envelope upgrade with a validated decreasing dominating bound
    CriteriaOptions opts;
    ConditionReport env =
        check_weighted_ratio_limit(kE, 20, parse_sequence_expr("1/(n + 1)"), opts);
    CHECK(env.holds);
    CHECK(env.strength == Strength::EnvelopeCertified);
}

TEST_CASE("full irrationality classification") {
    Certificate e_cert = classify_irrational(kE, 20);
    CHECK(e_cert.verdict.kind == VerdictKind::Irrational);
    CHECK(e_cert.theorem == "T2");
    CHECK(e_cert.strength == Strength::ProvenOnPrefix);

    Certificate alt = classify_irrational(
        spec_of("1", "(2*n - 1)! * 3^(2*n - 1)", SignMode::Alternating), 12);
    CHECK(alt.verdict.kind == VerdictKind::Irrational);
    CHECK(alt.theorem == "T1");

    Certificate geo = classify_irrational(spec_of("1", "2^n"), 12);
    CHECK(geo.verdict.kind == VerdictKind::Inconclusive);

    Certificate remark = classify_irrational(spec_of("n + 1", "n!", SignMode::AllPositive, 0), 20);
    CHECK(remark.verdict.kind == VerdictKind::Inconclusive);

    // general sign mode cannot certify the nonvanishing condition
    Certificate gen = classify_irrational(spec_of("1", "n!", SignMode::General, 0), 12);
    CHECK(gen.verdict.kind == VerdictKind::Inconclusive);
}

TEST_CASE("pairwise sum criterion") {
    SeriesSpec a = spec_of("1", "2^(n!)");
    SeriesSpec b = spec_of("1", "3^(n!)");
    PairResult pr = check_sum_pair(a, b, 8);
    CHECK(pr.certificate.verdict.kind == VerdictKind::Irrational);
    CHECK(pr.certificate.theorem == "T3");

    // the combined series realizes the sum of the two
    for (long n = 1; n <= 5; ++n) {
        CHECK(term(pr.combined, n) == term(a, n) + term(b, n));
    }
    CHECK(term(pr.combined, 2) == Rat(13, 36));

    // the pair (e, e) fails: its cross ratio n! n!/(n+1)! = n!/(n+1) diverges
    PairResult self = check_sum_pair(kE, kE, 12);
    CHECK(self.certificate.verdict.kind == VerdictKind::Inconclusive);
}

TEST_CASE("lcm criterion reduces to the weighted ratio under divisibility") {
    // when b_n | b_{n+1}, lcm(b_1..b_n) = b_n, so r_n = q_n and T4 mirrors T2
    Certificate cert = check_lcm_criterion(spec_of("1", "n!"), 15);
    CHECK(cert.verdict.kind == VerdictKind::Irrational);
    CHECK(cert.theorem == "T4");
    CHECK(cert.strength == Strength::ProvenOnPrefix);

    Certificate geo = check_lcm_criterion(spec_of("1", "2^n"), 15);
    CHECK(geo.verdict.kind == VerdictKind::Inconclusive);
}

TEST_CASE("geometric-polynomial classification") {
    // degree 1: exact rational value 1/(a^b1 (a^b0 - 1))
    PolyExp lin{Int(2), {Int(3), Int(5)}};
    Certificate rational = classify_geometric_poly(lin);
    CHECK(rational.verdict.kind == VerdictKind::Rational);
    CHECK(rational.theorem == "T5");
    REQUIRE(rational.verdict.value.has_value());
    CHECK(*rational.verdict.value == Rat(1, 224)); // 1/(2^5 * 7)

    // degree 2: irrational (P(n) = n^2)
    PolyExp quad{Int(2), {Int(1), Int(0), Int(0)}};
    Certificate irr = classify_geometric_poly(quad);
    CHECK(irr.verdict.kind == VerdictKind::Irrational);

    CHECK_THROWS_AS(classify_geometric_poly(PolyExp{Int(1), {Int(1), Int(1)}}),
                    InvalidPolynomial);
    CHECK_THROWS_AS(classify_geometric_poly(PolyExp{Int(2), {Int(1)}}), InvalidPolynomial);
    CHECK_THROWS_AS(classify_geometric_poly(PolyExp{Int(2), {Int(0), Int(1)}}),
                    InvalidPolynomial);

    // the realized spec matches the closed form: sum 1/2^(3n+5)
    SeriesSpec s = geometric_poly_spec(lin);
    CHECK(term(s, 1) == Rat(1, 256));
    CHECK(term(s, 2) == Rat(1, 2048));
}

TEST_CASE("growth-approximation criterion with witnesses") {
    SeriesSpec ten = spec_of("1", "10^(n!)");
    GrowthFn cube{parse_sequence_expr("n^3"), "b^3"};
    GrowthResult res = check_growth_approx(ten, cube, 6);
    CHECK(res.certificate.verdict.kind == VerdictKind::Irrational);
    CHECK(res.certificate.theorem == "T6");
    REQUIRE_FALSE(res.witnesses.empty());
    for (const auto& w : res.witnesses) {
        // witness numerators are integers b_n * S_n by the divisibility chain
        Rat s = partial_sum(ten, w.index);
        CHECK(Rat(w.numerator, w.denominator) == s);
    }
}

TEST_CASE("Roth-condition transcendence checks") {
    SeriesSpec three_two = spec_of("3^n", "2^(3^n)");
    Certificate cert = check_roth_transcendence(three_two, Rat(2, 3), 12);
    CHECK(cert.verdict.kind == VerdictKind::Transcendental);
    CHECK(cert.theorem == "T7");
    CHECK(cert.strength == Strength::ProvenOnPrefix);

    // exact condition values: t_n = a_{n+1} b_n^{2+2/3} / b_{n+1}
    auto t3 = roth_ratio(three_two, Rat(2, 3), 3);
    REQUIRE(t3.has_value());
    CHECK(*t3 == Rat(81, 512));
    auto t2 = roth_ratio(three_two, Rat(2, 3), 2);
    REQUIRE(t2.has_value());
    CHECK(*t2 == Rat(27, 8)); // above 1/2: the tail starts later

    // geometric control fails the condition at every n
    Certificate geo = check_roth_transcendence(spec_of("1", "2^n"), Rat(1), 12);
    CHECK(geo.verdict.kind == VerdictKind::Inconclusive);
}

TEST_CASE("rotation-number condition (degree d)") {
    SeriesSpec tower = spec_of("1", "tower(2, 2*n, 2*n)");
    Certificate cert = check_cremer_condition(tower, 2, 4);
    CHECK(cert.verdict.kind == VerdictKind::CremerConditionHolds);
    CHECK(cert.theorem == "T8");

    // b_n = 2^n grows far too slowly
    Certificate slow = check_cremer_condition(spec_of("1", "2^n"), 2, 6);
    CHECK(slow.verdict.kind == VerdictKind::Inconclusive);

    CHECK_THROWS_AS(check_cremer_condition(tower, 1, 4), InvalidParam);
}
