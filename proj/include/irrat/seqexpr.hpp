#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>

#include "irrat/errors.hpp"

namespace irrat {

using Int = mpz_class;
using Rat = mpq_class;

// Maximum bit length an exactly evaluated integer may reach before
// evaluation throws BitBudgetExceeded. Default 2^21 bits.
std::size_t bit_budget();
void set_bit_budget(std::size_t bits);

// Largest prime index served exactly by the internal sieve.
unsigned long prime_index_ceiling();
void set_prime_index_ceiling(unsigned long max_index);

// p_k for 1-based k. Thread-safe; backed by a growing cached sieve.
// Throws EvalError{SieveLimitExceeded} past the ceiling.
Int nth_prime(unsigned long k);

enum class NodeKind {
    Literal,
    Var,       // the index variable n
    Add,
    Sub,
    Mul,
    Div,       // exact-only integer division
    Pow,
    Factorial,
    NthPrime,
    Tower,     // tower(base, height, top): f1 = top, f(k+1) = base^f(k), value f(height)
};

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
    NodeKind kind;
    Int literal;        // Literal only
    ExprPtr a, b, c;    // binary: a,b; Factorial/NthPrime: a; Tower: a=base, b=height, c=top
};

bool structurally_equal(const ExprPtr& x, const ExprPtr& y);

// Closed-form integer sequence in the index variable n. Every node must
// evaluate to a positive integer at every evaluated index.
class SequenceExpr {
public:
    SequenceExpr() = default;
    explicit SequenceExpr(ExprPtr root) : root_(std::move(root)) {}

    const ExprPtr& root() const { return root_; }
    bool valid() const { return root_ != nullptr; }

    // Exact value at index n (n may be any positive integer, including a
    // value substituted for n that is itself huge, as growth functions need).
    Int eval(const Int& n) const;
    Int eval(long n) const { return eval(Int(n)); }

    std::string format() const;

    bool operator==(const SequenceExpr& other) const {
        return structurally_equal(root_, other.root_);
    }

private:
    ExprPtr root_;
};

SequenceExpr parse_sequence_expr(std::string_view text);
Int eval_sequence(const SequenceExpr& expr, const Int& n);

// Evaluate allowing inexact division (positive rational values). Used for
// envelope/growth expressions; factorial, nthprime, tower and exponents
// still require integer operands.
Rat eval_rational(const SequenceExpr& expr, const Int& n);
std::string format_expr(const SequenceExpr& expr);

// AST builders (used by the catalog and the pairwise-sum combiner).
namespace ast {
ExprPtr lit(Int v);
ExprPtr lit(long v);
ExprPtr var();
ExprPtr add(ExprPtr l, ExprPtr r);
ExprPtr sub(ExprPtr l, ExprPtr r);
ExprPtr mul(ExprPtr l, ExprPtr r);
ExprPtr div(ExprPtr l, ExprPtr r);
ExprPtr pow(ExprPtr l, ExprPtr r);
ExprPtr factorial(ExprPtr e);
ExprPtr nthprime(ExprPtr e);
ExprPtr tower(ExprPtr base, ExprPtr height, ExprPtr top);
} // namespace ast

} // namespace irrat
