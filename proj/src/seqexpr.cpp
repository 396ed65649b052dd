#include "irrat/seqexpr.hpp"

#include <atomic>
#include <cctype>
#include <cmath>
#include <mutex>
#include <vector>

namespace irrat {

namespace {

std::atomic<std::size_t> g_bit_budget{std::size_t{1} << 21};
std::atomic<unsigned long> g_prime_ceiling{10'000'000UL};

void check_bits(const Int& v) {
    if (mpz_sizeinbase(v.get_mpz_t(), 2) > bit_budget()) {
        throw EvalError(EvalError::Kind::BitBudgetExceeded,
                        "exact value exceeds the configured bit budget");
    }
}

void check_positive(const Int& v) {
    if (v <= 0) {
        throw EvalError(EvalError::Kind::NonPositiveValue,
                        "subexpression evaluated to a non-positive integer");
    }
}

// Subexpressions may pass through 0 (e.g. the index variable at n = 0);
// only negatives are rejected outright.
void check_nonnegative(const Int& v) {
    if (v < 0) {
        throw EvalError(EvalError::Kind::NonPositiveValue,
                        "subexpression evaluated to a negative integer");
    }
}

} // namespace

std::size_t bit_budget() { return g_bit_budget.load(); }
void set_bit_budget(std::size_t bits) { g_bit_budget.store(bits); }

unsigned long prime_index_ceiling() { return g_prime_ceiling.load(); }
void set_prime_index_ceiling(unsigned long max_index) { g_prime_ceiling.store(max_index); }

// ---------------------------------------------------------------------------
// Prime sieve cache

namespace {

std::mutex g_sieve_mutex;
std::vector<unsigned long> g_primes; // 0-based: g_primes[k-1] = p_k

// Sieve of Eratosthenes up to `limit`, replacing the cache.
void sieve_to(unsigned long limit) {
    std::vector<bool> composite(limit + 1, false);
    g_primes.clear();
    for (unsigned long i = 2; i <= limit; ++i) {
        if (!composite[i]) {
            g_primes.push_back(i);
            for (unsigned long j = i * i; j <= limit; j += i) {
                composite[j] = true;
            }
        }
    }
}

} // namespace

Int nth_prime(unsigned long k) {
    if (k == 0) {
        throw EvalError(EvalError::Kind::NonPositiveValue, "prime index must be >= 1");
    }
    if (k > prime_index_ceiling()) {
        throw EvalError(EvalError::Kind::SieveLimitExceeded,
                        "prime index " + std::to_string(k) + " exceeds the sieve ceiling");
    }
    std::lock_guard<std::mutex> lock(g_sieve_mutex);
    if (g_primes.size() < k) {
        // p_k < k(ln k + ln ln k) for k >= 6.
        double bound = k < 6 ? 16.0 : double(k) * (std::log(double(k)) + std::log(std::log(double(k))));
        auto limit = static_cast<unsigned long>(bound) + 16;
        while (true) {
            sieve_to(limit);
            if (g_primes.size() >= k) break;
            limit = limit + limit / 4 + 16;
        }
    }
    return Int(g_primes[k - 1]);
}

// ---------------------------------------------------------------------------
// AST builders

namespace ast {

namespace {
ExprPtr node(NodeKind kind, ExprPtr a = nullptr, ExprPtr b = nullptr, ExprPtr c = nullptr) {
    auto n = std::make_shared<ExprNode>();
    n->kind = kind;
    n->a = std::move(a);
    n->b = std::move(b);
    n->c = std::move(c);
    return n;
}
} // namespace

ExprPtr lit(Int v) {
    auto n = std::make_shared<ExprNode>();
    n->kind = NodeKind::Literal;
    n->literal = std::move(v);
    return n;
}
ExprPtr lit(long v) { return lit(Int(v)); }
ExprPtr var() { return node(NodeKind::Var); }
ExprPtr add(ExprPtr l, ExprPtr r) { return node(NodeKind::Add, std::move(l), std::move(r)); }
ExprPtr sub(ExprPtr l, ExprPtr r) { return node(NodeKind::Sub, std::move(l), std::move(r)); }
ExprPtr mul(ExprPtr l, ExprPtr r) { return node(NodeKind::Mul, std::move(l), std::move(r)); }
ExprPtr div(ExprPtr l, ExprPtr r) { return node(NodeKind::Div, std::move(l), std::move(r)); }
ExprPtr pow(ExprPtr l, ExprPtr r) { return node(NodeKind::Pow, std::move(l), std::move(r)); }
ExprPtr factorial(ExprPtr e) { return node(NodeKind::Factorial, std::move(e)); }
ExprPtr nthprime(ExprPtr e) { return node(NodeKind::NthPrime, std::move(e)); }
ExprPtr tower(ExprPtr base, ExprPtr height, ExprPtr top) {
    return node(NodeKind::Tower, std::move(base), std::move(height), std::move(top));
}

} // namespace ast

bool structurally_equal(const ExprPtr& x, const ExprPtr& y) {
    if (x == y) return true;
    if (!x || !y) return false;
    if (x->kind != y->kind) return false;
    if (x->kind == NodeKind::Literal) return x->literal == y->literal;
    return structurally_equal(x->a, y->a) && structurally_equal(x->b, y->b) &&
           structurally_equal(x->c, y->c);
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

Int eval_node(const ExprPtr& e, const Int& n); // fwd

Int eval_pow(const Int& base, const Int& exp) {
    check_nonnegative(base);
    check_positive(exp);
    if (base == 0) return Int(0);
    if (base == 1) return Int(1);
    if (!exp.fits_ulong_p()) {
        throw EvalError(EvalError::Kind::BitBudgetExceeded,
                        "exponent too large for exact evaluation");
    }
    unsigned long e = exp.get_ui();
    // log2(base) lies in [base_bits-1, base_bits]; reject only when the
    // floor estimate already exceeds the budget, then verify the result.
    std::size_t base_bits = mpz_sizeinbase(base.get_mpz_t(), 2);
    if ((base_bits - 1) * e > bit_budget()) {
        throw EvalError(EvalError::Kind::BitBudgetExceeded,
                        "power result exceeds the configured bit budget");
    }
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    check_bits(r);
    return r;
}

Int eval_factorial(const Int& v) {
    check_nonnegative(v);
    if (!v.fits_ulong_p() || v.get_ui() > bit_budget()) {
        throw EvalError(EvalError::Kind::BitBudgetExceeded,
                        "factorial argument too large for exact evaluation");
    }
    unsigned long k = v.get_ui();
    double bits = (std::lgamma(double(k) + 1.0) / std::log(2.0)) + 1.0;
    if (bits > double(bit_budget())) {
        throw EvalError(EvalError::Kind::BitBudgetExceeded,
                        "factorial result exceeds the configured bit budget");
    }
    Int r;
    mpz_fac_ui(r.get_mpz_t(), k);
    return r;
}

Int eval_node(const ExprPtr& e, const Int& n) {
    switch (e->kind) {
    case NodeKind::Literal:
        check_nonnegative(e->literal);
        return e->literal;
    case NodeKind::Var:
        check_nonnegative(n);
        return n;
    case NodeKind::Add: {
        Int r = eval_node(e->a, n) + eval_node(e->b, n);
        check_bits(r);
        return r;
    }
    case NodeKind::Sub: {
        Int r = eval_node(e->a, n) - eval_node(e->b, n);
        check_nonnegative(r);
        return r;
    }
    case NodeKind::Mul: {
        Int l = eval_node(e->a, n);
        Int r = eval_node(e->b, n);
        if (mpz_sizeinbase(l.get_mpz_t(), 2) + mpz_sizeinbase(r.get_mpz_t(), 2) >
            bit_budget() + 1) {
            throw EvalError(EvalError::Kind::BitBudgetExceeded,
                            "product exceeds the configured bit budget");
        }
        return l * r;
    }
    case NodeKind::Div: {
        Int l = eval_node(e->a, n);
        Int r = eval_node(e->b, n);
        check_positive(r);
        if (!mpz_divisible_p(l.get_mpz_t(), r.get_mpz_t())) {
            throw EvalError(EvalError::Kind::InexactDivision,
                            "division node does not divide exactly");
        }
        Int q = l / r;
        check_positive(q);
        return q;
    }
    case NodeKind::Pow:
        return eval_pow(eval_node(e->a, n), eval_node(e->b, n));
    case NodeKind::Factorial:
        return eval_factorial(eval_node(e->a, n));
    case NodeKind::NthPrime: {
        Int k = eval_node(e->a, n);
        check_positive(k);
        if (!k.fits_ulong_p()) {
            throw EvalError(EvalError::Kind::SieveLimitExceeded,
                            "prime index exceeds the sieve ceiling");
        }
        return nth_prime(k.get_ui());
    }
    case NodeKind::Tower: {
        Int base = eval_node(e->a, n);
        Int height = eval_node(e->b, n);
        Int top = eval_node(e->c, n);
        check_positive(base);
        check_positive(top);
        if (height < 1) {
            throw EvalError(EvalError::Kind::NonPositiveValue, "tower height must be >= 1");
        }
        if (!height.fits_ulong_p()) {
            throw EvalError(EvalError::Kind::BitBudgetExceeded, "tower height too large");
        }
        Int f = top;
        for (unsigned long k = 1; k < height.get_ui(); ++k) {
            f = eval_pow(base, f);
        }
        return f;
    }
    }
    throw std::logic_error("unreachable expression kind");
}

} // namespace

Int SequenceExpr::eval(const Int& n) const {
    if (!root_) throw std::logic_error("evaluating an empty SequenceExpr");
    return eval_node(root_, n);
}

Int eval_sequence(const SequenceExpr& expr, const Int& n) { return expr.eval(n); }

namespace {

Rat eval_rational_node(const ExprPtr& e, const Int& n) {
    auto as_int = [&](const ExprPtr& sub) {
        Rat v = eval_rational_node(sub, n);
        if (v.get_den() != 1) {
            throw EvalError(EvalError::Kind::InexactDivision,
                            "integer-valued subexpression required");
        }
        return Int(v.get_num());
    };
    switch (e->kind) {
    case NodeKind::Literal:
        check_nonnegative(e->literal);
        return Rat(e->literal);
    case NodeKind::Var:
        check_nonnegative(n);
        return Rat(n);
    case NodeKind::Add:
        return eval_rational_node(e->a, n) + eval_rational_node(e->b, n);
    case NodeKind::Sub: {
        Rat r = eval_rational_node(e->a, n) - eval_rational_node(e->b, n);
        if (r <= 0) {
            throw EvalError(EvalError::Kind::NonPositiveValue,
                            "subexpression evaluated to a non-positive value");
        }
        return r;
    }
    case NodeKind::Mul:
        return eval_rational_node(e->a, n) * eval_rational_node(e->b, n);
    case NodeKind::Div: {
        Rat d = eval_rational_node(e->b, n);
        Rat r = eval_rational_node(e->a, n) / d;
        r.canonicalize();
        return r;
    }
    case NodeKind::Pow: {
        Rat base = eval_rational_node(e->a, n);
        Int exp = as_int(e->b);
        check_positive(exp);
        if (!exp.fits_ulong_p()) {
            throw EvalError(EvalError::Kind::BitBudgetExceeded, "exponent too large");
        }
        Rat r;
        mpz_pow_ui(mpq_numref(r.get_mpq_t()), base.get_num().get_mpz_t(), exp.get_ui());
        mpz_pow_ui(mpq_denref(r.get_mpq_t()), base.get_den().get_mpz_t(), exp.get_ui());
        check_bits(r.get_num());
        check_bits(r.get_den());
        return r;
    }
    case NodeKind::Factorial:
        return Rat(eval_factorial(as_int(e->a)));
    case NodeKind::NthPrime:
    case NodeKind::Tower: {
        // Integer-only constructs: reuse the exact evaluator on the subtree.
        return Rat(eval_node(e, n));
    }
    }
    throw std::logic_error("unreachable expression kind");
}

} // namespace

Rat eval_rational(const SequenceExpr& expr, const Int& n) {
    if (!expr.valid()) throw std::logic_error("evaluating an empty SequenceExpr");
    Rat r = eval_rational_node(expr.root(), n);
    r.canonicalize();
    return r;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

struct Parser {
    std::string_view text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    void expect(char c, const char* what) {
        if (!eat(c)) throw ParseError(pos, std::string("expected '") + c + "' " + what);
    }

    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }

    ExprPtr parse_expr() {
        ExprPtr lhs = parse_term();
        while (true) {
            skip_ws();
            if (eat('+')) {
                lhs = ast::add(std::move(lhs), parse_term());
            } else if (eat('-')) {
                lhs = ast::sub(std::move(lhs), parse_term());
            } else {
                return lhs;
            }
        }
    }

    ExprPtr parse_term() {
        ExprPtr lhs = parse_power();
        while (true) {
            skip_ws();
            if (eat('*')) {
                lhs = ast::mul(std::move(lhs), parse_power());
            } else if (eat('/')) {
                lhs = ast::div(std::move(lhs), parse_power());
            } else {
                return lhs;
            }
        }
    }

    // Right-associative; binds tighter than * but looser than postfix !.
    ExprPtr parse_power() {
        ExprPtr lhs = parse_postfix();
        if (eat('^')) {
            return ast::pow(std::move(lhs), parse_power());
        }
        return lhs;
    }

    ExprPtr parse_postfix() {
        ExprPtr e = parse_primary();
        while (eat('!')) {
            e = ast::factorial(std::move(e));
        }
        return e;
    }

    ExprPtr parse_primary() {
        skip_ws();
        if (pos >= text.size()) throw ParseError(pos, "unexpected end of input");
        char c = text[pos];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
            return ast::lit(Int(std::string(text.substr(start, pos - start)), 10));
        }
        if (c == '(') {
            ++pos;
            ExprPtr e = parse_expr();
            expect(')', "to close parenthesized expression");
            return e;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos;
            while (pos < text.size() &&
                   std::isalnum(static_cast<unsigned char>(text[pos]))) ++pos;
            std::string_view ident = text.substr(start, pos - start);
            if (ident == "n") return ast::var();
            if (ident == "nthprime") {
                expect('(', "after nthprime");
                ExprPtr e = parse_expr();
                expect(')', "to close nthprime()");
                return ast::nthprime(std::move(e));
            }
            if (ident == "tower") {
                expect('(', "after tower");
                ExprPtr base = parse_expr();
                expect(',', "between tower arguments");
                ExprPtr height = parse_expr();
                expect(',', "between tower arguments");
                ExprPtr top = parse_expr();
                expect(')', "to close tower()");
                return ast::tower(std::move(base), std::move(height), std::move(top));
            }
            throw ParseError(start, "unknown identifier '" + std::string(ident) + "'");
        }
        throw ParseError(pos, std::string("unexpected character '") + c + "'");
    }
};

} // namespace

SequenceExpr parse_sequence_expr(std::string_view text) {
    Parser p{text};
    p.skip_ws();
    if (p.pos >= text.size()) throw ParseError(p.pos, "empty input");
    ExprPtr root = p.parse_expr();
    p.skip_ws();
    if (p.pos < text.size()) {
        throw ParseError(p.pos, "trailing input after expression");
    }
    return SequenceExpr(std::move(root));
}

// ---------------------------------------------------------------------------
// Printing

namespace {

// Precedence levels: + - (1), * / (2), ^ (3), ! (4), atoms (5).
int precedence(const ExprPtr& e) {
    switch (e->kind) {
    case NodeKind::Add:
    case NodeKind::Sub: return 1;
    case NodeKind::Mul:
    case NodeKind::Div: return 2;
    case NodeKind::Pow: return 3;
    case NodeKind::Factorial: return 4;
    default: return 5;
    }
}

void print_node(std::string& out, const ExprPtr& e);

void print_child(std::string& out, const ExprPtr& child, int min_prec) {
    if (precedence(child) < min_prec) {
        out += '(';
        print_node(out, child);
        out += ')';
    } else {
        print_node(out, child);
    }
}

void print_node(std::string& out, const ExprPtr& e) {
    switch (e->kind) {
    case NodeKind::Literal:
        out += e->literal.get_str();
        return;
    case NodeKind::Var:
        out += 'n';
        return;
    case NodeKind::Add:
        print_child(out, e->a, 1);
        out += " + ";
        print_child(out, e->b, 2);
        return;
    case NodeKind::Sub:
        print_child(out, e->a, 1);
        out += " - ";
        print_child(out, e->b, 2);
        return;
    case NodeKind::Mul:
        print_child(out, e->a, 2);
        out += '*';
        print_child(out, e->b, 3);
        return;
    case NodeKind::Div:
        print_child(out, e->a, 2);
        out += '/';
        print_child(out, e->b, 3);
        return;
    case NodeKind::Pow:
        print_child(out, e->a, 5);
        out += '^';
        print_child(out, e->b, 5);
        return;
    case NodeKind::Factorial:
        print_child(out, e->a, 4);
        out += '!';
        return;
    case NodeKind::NthPrime:
        out += "nthprime(";
        print_node(out, e->a);
        out += ')';
        return;
    case NodeKind::Tower:
        out += "tower(";
        print_node(out, e->a);
        out += ", ";
        print_node(out, e->b);
        out += ", ";
        print_node(out, e->c);
        out += ')';
        return;
    }
}

} // namespace

std::string SequenceExpr::format() const {
    if (!root_) return {};
    std::string out;
    print_node(out, root_);
    return out;
}

std::string format_expr(const SequenceExpr& expr) { return expr.format(); }

} // namespace irrat
