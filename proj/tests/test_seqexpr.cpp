#include <doctest.h>

#include <random>

#include "ast_gen.hpp"
#include "irrat/seqexpr.hpp"

using namespace irrat;

TEST_CASE("evaluation of basic expressions") {
    CHECK(parse_sequence_expr("n!").eval(4) == 24);
    CHECK(parse_sequence_expr("n!").eval(0) == 1);
    CHECK(parse_sequence_expr("2^n").eval(10) == 1024);
    CHECK(parse_sequence_expr("n^4").eval(3) == 81);
    CHECK(parse_sequence_expr("(n!)^5").eval(3) == 7776);
    CHECK(parse_sequence_expr("(2*n - 1)! * 3^(2*n - 1)").eval(2) == 162);
    CHECK(parse_sequence_expr("n + 1").eval(0) == 1);
    CHECK(parse_sequence_expr("10^(n!)").eval(3) == 1000000);
}

TEST_CASE("nth prime and towers") {
    CHECK(nth_prime(1) == 2);
    CHECK(nth_prime(10) == 29);
    CHECK(parse_sequence_expr("nthprime(n)").eval(4) == 7);
    // index 2^(2^2) = 16 -> 53
    CHECK(parse_sequence_expr("nthprime(2^(2^(n!)))").eval(2) == 53);

    // tower(2, 2n, 2n) at n=1: f1 = 2, f2 = 2^2 = 4.
    CHECK(parse_sequence_expr("tower(2,2*n,2*n)").eval(1) == 4);
    Int huge = parse_sequence_expr("tower(2,2*n,2*n)").eval(2);
    CHECK(mpz_sizeinbase(huge.get_mpz_t(), 2) == 65537); // 2^65536
    Int two_pow;
    mpz_ui_pow_ui(two_pow.get_mpz_t(), 2, 65536);
    CHECK(huge == two_pow);
}

TEST_CASE("exact division and domain errors") {
    CHECK(parse_sequence_expr("(2*n)/2").eval(3) == 3);
    CHECK_THROWS_AS(parse_sequence_expr("n/2").eval(3), EvalError);
    // negative subexpression
    CHECK_THROWS_AS(parse_sequence_expr("n - 5").eval(2), EvalError);
    // zero is allowed mid-expression
    CHECK(parse_sequence_expr("(n - 2) + 1").eval(2) == 1);
}

TEST_CASE("bit budget guards") {
    CHECK_THROWS_AS(parse_sequence_expr("2^(2^n)").eval(25), EvalError);
    CHECK_THROWS_AS(parse_sequence_expr("tower(2,2*n,2*n)").eval(3), EvalError);
    try {
        parse_sequence_expr("2^(2^n)").eval(25);
    } catch (const EvalError& e) {
        CHECK(e.kind() == EvalError::Kind::BitBudgetExceeded);
    }
}

TEST_CASE("factorial is monotone on a prefix") {
    auto f = parse_sequence_expr("n!");
    Int prev = f.eval(1);
    for (long n = 2; n <= 30; ++n) {
        Int cur = f.eval(n);
        CHECK(cur > prev);
        prev = cur;
    }
}

TEST_CASE("evaluation is deterministic") {
    auto e = parse_sequence_expr("nthprime(n^2) * n! + 7");
    CHECK(e.eval(5) == e.eval(5));
}

TEST_CASE("malformed inputs produce positioned errors") {
    auto check_pos = [](const char* text, std::size_t pos) {
        try {
            parse_sequence_expr(text);
            FAIL_CHECK("expected ParseError for: " << text);
        } catch (const ParseError& e) {
            CHECK_MESSAGE(e.position() == pos, text << " -> " << e.what());
        }
    };
    check_pos("", 0);
    check_pos("   ", 3);
    check_pos("2 +", 3);
    check_pos("(2", 2);
    check_pos("2)", 1);
    check_pos("foo(n)", 0);
    check_pos("2^^3", 2);
    check_pos("tower(2,3)", 9);
    check_pos("n n", 2);
    check_pos("*2", 0);
}

TEST_CASE("parse-format round trip on random trees") {
    std::mt19937 rng(20260823);
    for (int i = 0; i < 1000; ++i) {
        ExprPtr tree = testgen::random_ast(rng, 6);
        SequenceExpr e(tree);
        std::string text = e.format();
        SequenceExpr back = parse_sequence_expr(text);
        CHECK_MESSAGE(back == e, "round trip failed: " << text);
    }
}

TEST_CASE("round trip of precedence corner cases") {
    for (const char* text : {"2^(3^n)", "(2^3)^n", "(n!)^5", "(n^2)!", "2*n + 1",
                             "(2*n - 1)!", "n - (n - 1)", "2*(n + 1)", "n!!"}) {
        SequenceExpr e = parse_sequence_expr(text);
        CHECK(parse_sequence_expr(e.format()) == e);
    }
    // right-associativity of ^
    CHECK(parse_sequence_expr("2^3^n") == parse_sequence_expr("2^(3^n)"));
}
