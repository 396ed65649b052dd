#pragma once

#include <random>

#include "irrat/seqexpr.hpp"

// Random expression trees for round-trip and soundness testing.
namespace testgen {

using irrat::ExprPtr;
using irrat::Int;

inline ExprPtr random_ast(std::mt19937& rng, int depth) {
    using namespace irrat::ast;
    std::uniform_int_distribution<int> lit_dist(1, 9);
    if (depth <= 0) {
        return rng() % 2 ? lit(static_cast<long>(lit_dist(rng))) : var();
    }
    switch (rng() % 10) {
    case 0: return lit(static_cast<long>(lit_dist(rng)));
    case 1: return var();
    case 2: return add(random_ast(rng, depth - 1), random_ast(rng, depth - 1));
    case 3: return sub(random_ast(rng, depth - 1), random_ast(rng, depth - 1));
    case 4: return mul(random_ast(rng, depth - 1), random_ast(rng, depth - 1));
    case 5: return div(random_ast(rng, depth - 1), random_ast(rng, depth - 1));
    case 6: return pow(random_ast(rng, depth - 1), random_ast(rng, depth - 1));
    case 7: return factorial(random_ast(rng, depth - 1));
    case 8: return nthprime(random_ast(rng, depth - 1));
    default:
        return tower(random_ast(rng, depth - 1), random_ast(rng, depth - 1),
                     random_ast(rng, depth - 1));
    }
}

// Small power/tower expressions whose exact values stay within the bit
// budget, for magnitude-vs-exact comparison testing.
inline ExprPtr random_power_expr(std::mt19937& rng) {
    using namespace irrat::ast;
    std::uniform_int_distribution<long> base_d(2, 6);
    std::uniform_int_distribution<long> exp_d(1, 12);
    std::uniform_int_distribution<long> top_d(1, 3);
    switch (rng() % 4) {
    case 0: // b^(e^f)
        return pow(lit(base_d(rng)), pow(lit(base_d(rng)), lit(top_d(rng))));
    case 1: // b^e * c^f
        return mul(pow(lit(base_d(rng)), lit(exp_d(rng))),
                   pow(lit(base_d(rng)), lit(exp_d(rng))));
    case 2: // tower of height 2..3
        return tower(lit(base_d(rng)), lit(2 + static_cast<long>(rng() % 2)),
                     lit(top_d(rng)));
    default: // k!^e
        return pow(factorial(lit(3 + static_cast<long>(rng() % 6))), lit(top_d(rng)));
    }
}

} // namespace testgen
