#include <doctest.h>

#include "irrat/catalog.hpp"

using namespace irrat;

TEST_CASE("listing is deterministic and instantiable") {
    auto names = list_builtins();
    CHECK(names.size() == 10);
    CHECK(names.front() == "e");
    CHECK(names == list_builtins());
    for (const auto& name : names) {
        CatalogEntry e = builtin(name);
        CHECK(e.name == name);
        CHECK(e.spec.numer.valid());
        CHECK(e.spec.denom.valid());
        CHECK(e.default_prefix >= 2);
    }
}

TEST_CASE("unknown names and bad parameters") {
    CHECK_THROWS_AS(builtin("nope"), UnknownName);
    CHECK_THROWS_AS(builtin("sin_recip", {{"r", "zero"}}), InvalidParam);
    CHECK_THROWS_AS(builtin("sin_recip", {{"r", "0"}}), InvalidParam);
    CHECK_THROWS_AS(builtin("cremer_tower", {{"d", "1"}}), InvalidParam);
}

TEST_CASE("parameters shape the series") {
    CatalogEntry r1 = builtin("sin_recip", {{"r", "1"}});
    CHECK(term(r1.spec, 1) == Rat(1));
    CHECK(term(r1.spec, 2) == Rat(-1, 6));
    CatalogEntry r5 = builtin("sin_recip", {{"r", "5"}});
    CHECK(term(r5.spec, 1) == Rat(1, 5));
}

TEST_CASE("classification dispatch matches the expected verdicts") {
    for (const auto& name : list_builtins()) {
        CatalogEntry e = builtin(name);
        Certificate cert = classify_entry(e, e.default_prefix);
        CHECK_MESSAGE(cert.verdict.kind == e.expected, name);
        if (!e.theorem.empty()) CHECK_MESSAGE(cert.theorem == e.theorem, name);
    }
}

TEST_CASE("evidence-grade entries are marked") {
    CatalogEntry pt = builtin("prime_tower");
    Certificate cert = classify_entry(pt, pt.default_prefix);
    CHECK(cert.strength == Strength::EvidenceOnly);
}
