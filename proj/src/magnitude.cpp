#include "irrat/magnitude.hpp"

#include <cmath>
#include <mutex>

namespace irrat {

namespace {

constexpr mpfr_prec_t kPrec = 128;

// Level-k value below which the representation drops one level
// (2^v then has an exponent well inside mpfr's range).
constexpr double kLowerThreshold = 9007199254740992.0; // 2^53

void ensure_exponent_range() {
    static std::once_flag flag;
    std::call_once(flag, [] {
        mpfr_set_emax(mpfr_get_emax_max());
        mpfr_set_emin(mpfr_get_emin_min());
    });
}

Rat g_hua_c1(1, 2);
Rat g_hua_c2(2, 1);
std::mutex g_hua_mutex;

} // namespace

void set_prime_bound_constants(const Rat& c1, const Rat& c2) {
    std::lock_guard<std::mutex> lock(g_hua_mutex);
    g_hua_c1 = c1;
    g_hua_c2 = c2;
}

std::pair<Rat, Rat> prime_bound_constants() {
    std::lock_guard<std::mutex> lock(g_hua_mutex);
    return {g_hua_c1, g_hua_c2};
}

// ---------------------------------------------------------------------------
// Mpfr wrapper

Mpfr::Mpfr() {
    ensure_exponent_range();
    mpfr_init2(v_, kPrec);
    mpfr_set_nan(v_);
}
Mpfr::Mpfr(const Mpfr& o) {
    mpfr_init2(v_, kPrec);
    mpfr_set(v_, o.v_, MPFR_RNDN);
}
Mpfr::Mpfr(Mpfr&& o) noexcept {
    mpfr_init2(v_, kPrec);
    mpfr_swap(v_, o.v_);
}
Mpfr& Mpfr::operator=(const Mpfr& o) {
    if (this != &o) mpfr_set(v_, o.v_, MPFR_RNDN);
    return *this;
}
Mpfr& Mpfr::operator=(Mpfr&& o) noexcept {
    if (this != &o) mpfr_swap(v_, o.v_);
    return *this;
}
Mpfr::~Mpfr() { mpfr_clear(v_); }

const char* to_string(Certainty c) {
    switch (c) {
    case Certainty::ProvenBelow: return "ProvenBelow";
    case Certainty::ProvenAtOrAbove: return "ProvenAtOrAbove";
    case Certainty::Unknown: return "Unknown";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Interval helpers

namespace {

FInterval iv_from_mpz(const Int& z) {
    FInterval r;
    mpfr_set_z(r.lo.get(), z.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(r.hi.get(), z.get_mpz_t(), MPFR_RNDU);
    return r;
}

FInterval iv_from_mpq(const Rat& q) {
    FInterval r;
    mpfr_set_q(r.lo.get(), q.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi.get(), q.get_mpq_t(), MPFR_RNDU);
    return r;
}

// Iterated-log step with the extended convention: a non-positive operand
// maps to -inf (the quantity is simply too small to have a real log at
// this level; the ordering stays consistent).
void log2_step(FInterval& iv) {
    if (mpfr_sgn(iv.lo.get()) > 0) {
        mpfr_log2(iv.lo.get(), iv.lo.get(), MPFR_RNDD);
    } else {
        mpfr_set_inf(iv.lo.get(), -1);
    }
    if (mpfr_sgn(iv.hi.get()) > 0) {
        mpfr_log2(iv.hi.get(), iv.hi.get(), MPFR_RNDU);
    } else {
        mpfr_set_inf(iv.hi.get(), -1);
    }
}

Magnitude normalize(Magnitude m) {
    while (m.level >= 1 && mpfr_number_p(m.iv.hi.get()) &&
           mpfr_cmp_d(m.iv.hi.get(), kLowerThreshold) < 0) {
        mpfr_exp2(m.iv.lo.get(), m.iv.lo.get(), MPFR_RNDD);
        mpfr_exp2(m.iv.hi.get(), m.iv.hi.get(), MPFR_RNDU);
        --m.level;
    }
    return m;
}

Magnitude finalize_exact(Int v) {
    if (v <= 0) {
        throw EvalError(EvalError::Kind::NonPositiveValue,
                        "magnitude of a non-positive quantity");
    }
    Magnitude m;
    m.level = 0;
    m.iv = iv_from_mpz(v);
    if (mpz_sizeinbase(v.get_mpz_t(), 2) <= bit_budget()) m.exact = std::move(v);
    return m;
}

// log2 as a Magnitude: one level down.
Magnitude log2_mag(Magnitude m) {
    m = normalize(std::move(m));
    if (m.level >= 1) {
        --m.level;
        m.exact.reset();
        return m;
    }
    log2_step(m.iv);
    m.exact.reset();
    return m;
}

Magnitude exp2_mag(Magnitude m) {
    if (m.level + 1 > kLevelCap) {
        throw MagnitudeUnsupported("iterated-log level cap exceeded");
    }
    ++m.level;
    m.exact.reset();
    return normalize(std::move(m));
}

// Raise to an exact target level for comparison/combination.
Magnitude raise_to(Magnitude m, int level) {
    while (m.level < level) {
        log2_step(m.iv);
        ++m.level;
    }
    m.exact.reset();
    return m;
}

} // namespace

Magnitude magnitude_from_int(const Int& v) { return finalize_exact(v); }

Magnitude magnitude_from_rat(const Rat& v) {
    if (v <= 0) {
        throw EvalError(EvalError::Kind::NonPositiveValue,
                        "magnitude of a non-positive quantity");
    }
    Magnitude m;
    m.level = 0;
    m.iv = iv_from_mpq(v);
    if (v.get_den() == 1) m.exact = v.get_num();
    return m;
}

Magnitude mag_add(const Magnitude& a, const Magnitude& b) {
    bool heur = a.prime_heuristic || b.prime_heuristic;
    if (a.exact && b.exact) {
        Magnitude r = finalize_exact(*a.exact + *b.exact);
        r.prime_heuristic = heur;
        return r;
    }
    Magnitude x = normalize(a), y = normalize(b);
    if (x.level == 0 && y.level == 0) {
        Magnitude r;
        r.level = 0;
        mpfr_add(r.iv.lo.get(), x.iv.lo.get(), y.iv.lo.get(), MPFR_RNDD);
        mpfr_add(r.iv.hi.get(), x.iv.hi.get(), y.iv.hi.get(), MPFR_RNDU);
        r.prime_heuristic = heur;
        return r;
    }
    // At level >= 1: max(a,b) <= a+b <= 2*max(a,b), and a factor of two
    // costs at most +1 at any log depth.
    int level = std::max(x.level, y.level);
    x = raise_to(std::move(x), level);
    y = raise_to(std::move(y), level);
    Magnitude r;
    r.level = level;
    mpfr_max(r.iv.lo.get(), x.iv.lo.get(), y.iv.lo.get(), MPFR_RNDD);
    mpfr_max(r.iv.hi.get(), x.iv.hi.get(), y.iv.hi.get(), MPFR_RNDU);
    mpfr_add_ui(r.iv.hi.get(), r.iv.hi.get(), 1, MPFR_RNDU);
    r.prime_heuristic = heur;
    return normalize(std::move(r));
}

Magnitude mag_mul(const Magnitude& a, const Magnitude& b) {
    bool heur = a.prime_heuristic || b.prime_heuristic;
    if (a.exact && b.exact) {
        std::size_t bits = mpz_sizeinbase(a.exact->get_mpz_t(), 2) +
                           mpz_sizeinbase(b.exact->get_mpz_t(), 2);
        if (bits <= bit_budget() + 64) {
            Magnitude r = finalize_exact(*a.exact * *b.exact);
            r.prime_heuristic = heur;
            return r;
        }
    }
    Magnitude r = exp2_mag(mag_add(log2_mag(a), log2_mag(b)));
    r.prime_heuristic = heur;
    return r;
}

Magnitude mag_pow(const Magnitude& base, const Magnitude& exp) {
    bool heur = base.prime_heuristic || exp.prime_heuristic;
    if (base.exact && exp.exact && exp.exact->fits_ulong_p()) {
        unsigned long e = exp.exact->get_ui();
        std::size_t base_bits = mpz_sizeinbase(base.exact->get_mpz_t(), 2);
        if (*base.exact == 1) return magnitude_from_int(Int(1));
        // floor estimate of the result bits; the exact path self-verifies
        if (base_bits >= 1 && (base_bits - 1) * e <= bit_budget() + 64) {
            Int r;
            mpz_pow_ui(r.get_mpz_t(), base.exact->get_mpz_t(), e);
            Magnitude m = finalize_exact(std::move(r));
            m.prime_heuristic = heur;
            return m;
        }
    }
    Magnitude r = exp2_mag(mag_mul(exp, log2_mag(base)));
    r.prime_heuristic = heur;
    return r;
}

Magnitude mag_pow_rat(const Magnitude& base, const Rat& exp) {
    if (exp.get_den() == 1) return mag_pow(base, magnitude_from_int(exp.get_num()));
    Magnitude r = exp2_mag(mag_mul(magnitude_from_rat(exp), log2_mag(base)));
    r.prime_heuristic = base.prime_heuristic;
    return r;
}

Magnitude mag_sub_one(const Magnitude& a) {
    if (a.exact) {
        if (*a.exact <= 1) {
            throw MagnitudeUnsupported("subtracting 1 from a quantity <= 1");
        }
        Magnitude r = finalize_exact(*a.exact - 1);
        r.prime_heuristic = a.prime_heuristic;
        return r;
    }
    Magnitude m = normalize(a);
    // x-1 >= x/2 for x >= 2, and halving costs at most -1 at any log depth.
    mpfr_sub_ui(m.iv.lo.get(), m.iv.lo.get(), 1, MPFR_RNDD);
    return normalize(std::move(m));
}

Magnitude mag_hull(const Magnitude& a, const Magnitude& b) {
    Magnitude x = normalize(a), y = normalize(b);
    int level = std::max(x.level, y.level);
    x = raise_to(std::move(x), level);
    y = raise_to(std::move(y), level);
    Magnitude r;
    r.level = level;
    mpfr_min(r.iv.lo.get(), x.iv.lo.get(), y.iv.lo.get(), MPFR_RNDD);
    mpfr_max(r.iv.hi.get(), x.iv.hi.get(), y.iv.hi.get(), MPFR_RNDU);
    r.prime_heuristic = a.prime_heuristic || b.prime_heuristic;
    return normalize(std::move(r));
}

// ---------------------------------------------------------------------------
// Expression evaluation in magnitude space

namespace {

Magnitude mag_sub(const Magnitude& a, const Magnitude& b) {
    if (a.exact && b.exact) {
        Int r = *a.exact - *b.exact;
        if (r <= 0) {
            throw EvalError(EvalError::Kind::NonPositiveValue,
                            "subexpression evaluated to a non-positive integer");
        }
        Magnitude m = finalize_exact(std::move(r));
        m.prime_heuristic = a.prime_heuristic || b.prime_heuristic;
        return m;
    }
    if (b.exact && *b.exact == 1) return mag_sub_one(a);
    Magnitude x = normalize(a), y = normalize(b);
    if (x.level == 0 && y.level == 0) {
        Magnitude r;
        r.level = 0;
        mpfr_sub(r.iv.lo.get(), x.iv.lo.get(), y.iv.hi.get(), MPFR_RNDD);
        mpfr_sub(r.iv.hi.get(), x.iv.hi.get(), y.iv.lo.get(), MPFR_RNDU);
        if (mpfr_sgn(r.iv.hi.get()) <= 0) {
            throw EvalError(EvalError::Kind::NonPositiveValue,
                            "subexpression evaluated to a non-positive value");
        }
        r.prime_heuristic = x.prime_heuristic || y.prime_heuristic;
        return r;
    }
    throw MagnitudeUnsupported("subtraction of huge magnitudes");
}

Magnitude mag_div(const Magnitude& a, const Magnitude& b) {
    if (a.exact && b.exact) {
        if (!mpz_divisible_p(a.exact->get_mpz_t(), b.exact->get_mpz_t())) {
            throw EvalError(EvalError::Kind::InexactDivision,
                            "division node does not divide exactly");
        }
        Magnitude m = finalize_exact(Int(*a.exact / *b.exact));
        m.prime_heuristic = a.prime_heuristic || b.prime_heuristic;
        return m;
    }
    Magnitude x = normalize(a), y = normalize(b);
    if (x.level == 0 && y.level == 0) {
        Magnitude r;
        r.level = 0;
        mpfr_div(r.iv.lo.get(), x.iv.lo.get(), y.iv.hi.get(), MPFR_RNDD);
        mpfr_div(r.iv.hi.get(), x.iv.hi.get(), y.iv.lo.get(), MPFR_RNDU);
        r.prime_heuristic = x.prime_heuristic || y.prime_heuristic;
        return r;
    }
    throw MagnitudeUnsupported("division of huge magnitudes");
}

Magnitude fact_mag(const Magnitude& a) {
    if (a.exact && a.exact->fits_ulong_p()) {
        unsigned long k = a.exact->get_ui();
        double bits = (std::lgamma(double(k) + 1.0) / std::log(2.0)) + 1.0;
        if (bits <= double(bit_budget()) + 64) {
            Int r;
            mpz_fac_ui(r.get_mpz_t(), k);
            Magnitude m = finalize_exact(std::move(r));
            m.prime_heuristic = a.prime_heuristic;
            return m;
        }
    }
    Magnitude x = normalize(a);
    if (x.level == 0 && mpfr_cmp_ui(x.iv.lo.get(), 1) >= 0) {
        // log2(k!) = lngamma(k+1)/ln(2), monotone on [1, inf).
        Magnitude r;
        r.level = 1;
        Mpfr t, ln2;
        mpfr_add_ui(t.get(), x.iv.lo.get(), 1, MPFR_RNDD);
        mpfr_lngamma(t.get(), t.get(), MPFR_RNDD);
        mpfr_const_log2(ln2.get(), MPFR_RNDU);
        mpfr_div(r.iv.lo.get(), t.get(), ln2.get(), MPFR_RNDD);
        mpfr_add_ui(t.get(), x.iv.hi.get(), 1, MPFR_RNDU);
        mpfr_lngamma(t.get(), t.get(), MPFR_RNDU);
        mpfr_const_log2(ln2.get(), MPFR_RNDD);
        mpfr_div(r.iv.hi.get(), t.get(), ln2.get(), MPFR_RNDU);
        r.prime_heuristic = x.prime_heuristic;
        return normalize(std::move(r));
    }
    // Crude but sound: (k/2)^(k/2) <= k! <= k^k for k >= 1.
    Rat half(1, 2);
    Magnitude halfk = mag_mul(x, magnitude_from_rat(half));
    Magnitude lo = mag_pow(halfk, halfk);
    Magnitude hi = mag_pow(x, x);
    return mag_hull(lo, hi);
}

Magnitude prime_mag(const Magnitude& a) {
    if (a.exact && a.exact->fits_ulong_p() && a.exact->get_ui() <= prime_index_ceiling()) {
        return magnitude_from_int(nth_prime(a.exact->get_ui()));
    }
    // Growth-bound mode: c1*k*ln(k) < p_k < c2*k*ln(k). The constants are
    // configuration, so the result is flagged as heuristic.
    auto [c1, c2] = prime_bound_constants();
    Magnitude lnk;
    {
        Magnitude l2 = log2_mag(a);
        Mpfr ln2d, ln2u;
        mpfr_const_log2(ln2d.get(), MPFR_RNDD);
        mpfr_const_log2(ln2u.get(), MPFR_RNDU);
        Magnitude ln2m;
        ln2m.level = 0;
        ln2m.iv.lo = ln2d;
        ln2m.iv.hi = ln2u;
        lnk = mag_mul(l2, ln2m);
    }
    Magnitude klnk = mag_mul(a, lnk);
    Magnitude lo = mag_mul(magnitude_from_rat(c1), klnk);
    Magnitude hi = mag_mul(magnitude_from_rat(c2), klnk);
    Magnitude r = mag_hull(lo, hi);
    r.prime_heuristic = true;
    return r;
}

Magnitude mag_of_node(const ExprPtr& e, const Int& n) {
    switch (e->kind) {
    case NodeKind::Literal: return finalize_exact(e->literal);
    case NodeKind::Var: return finalize_exact(n);
    case NodeKind::Add: return mag_add(mag_of_node(e->a, n), mag_of_node(e->b, n));
    case NodeKind::Sub: return mag_sub(mag_of_node(e->a, n), mag_of_node(e->b, n));
    case NodeKind::Mul: return mag_mul(mag_of_node(e->a, n), mag_of_node(e->b, n));
    case NodeKind::Div: return mag_div(mag_of_node(e->a, n), mag_of_node(e->b, n));
    case NodeKind::Pow: return mag_pow(mag_of_node(e->a, n), mag_of_node(e->b, n));
    case NodeKind::Factorial: return fact_mag(mag_of_node(e->a, n));
    case NodeKind::NthPrime: return prime_mag(mag_of_node(e->a, n));
    case NodeKind::Tower: {
        Magnitude base = mag_of_node(e->a, n);
        Magnitude height = mag_of_node(e->b, n);
        Magnitude top = mag_of_node(e->c, n);
        if (!height.exact || !height.exact->fits_ulong_p()) {
            throw MagnitudeUnsupported("tower height must be an exact modest integer");
        }
        Magnitude f = top;
        for (unsigned long k = 1; k < height.exact->get_ui(); ++k) {
            f = mag_pow(base, f);
        }
        return f;
    }
    }
    throw std::logic_error("unreachable expression kind");
}

} // namespace

Magnitude magnitude_of(const SequenceExpr& expr, const Int& n) {
    if (!expr.valid()) throw std::logic_error("magnitude of an empty SequenceExpr");
    return mag_of_node(expr.root(), n);
}

Magnitude magnitude_of(const SequenceExpr& expr, long n) { return magnitude_of(expr, Int(n)); }

// ---------------------------------------------------------------------------
// Comparison

Certainty compare(const Magnitude& lhs, const Magnitude& rhs) {
    if (lhs.exact && rhs.exact) {
        return *lhs.exact < *rhs.exact ? Certainty::ProvenBelow : Certainty::ProvenAtOrAbove;
    }
    Magnitude a = normalize(lhs), b = normalize(rhs);
    int level = std::max(a.level, b.level);
    a = raise_to(std::move(a), level);
    b = raise_to(std::move(b), level);
    if (mpfr_less_p(a.iv.hi.get(), b.iv.lo.get())) return Certainty::ProvenBelow;
    if (mpfr_greaterequal_p(a.iv.lo.get(), b.iv.hi.get())) return Certainty::ProvenAtOrAbove;
    return Certainty::Unknown;
}

Certainty ratio_below_half(const Magnitude& num, const Magnitude& den) {
    return compare(mag_mul(magnitude_from_int(Int(2)), num), den);
}

std::string Magnitude::describe() const {
    if (exact) {
        std::size_t bits = mpz_sizeinbase(exact->get_mpz_t(), 2);
        if (bits <= 64) return exact->get_str();
        // Large exact integers print as 2^e scale plus bit length.
        Mpfr t;
        mpfr_set_z(t.get(), exact->get_mpz_t(), MPFR_RNDN);
        mpfr_log2(t.get(), t.get(), MPFR_RNDN);
        char buf[64];
        mpfr_snprintf(buf, sizeof buf, "%.6Rg", t.get());
        return std::string("2^") + buf + " (" + std::to_string(bits) + " bits)";
    }
    char lo_s[64], hi_s[64];
    mpfr_snprintf(lo_s, sizeof lo_s, "%.6Rg", iv.lo.get());
    mpfr_snprintf(hi_s, sizeof hi_s, "%.6Rg", iv.hi.get());
    if (level == 0) return std::string("[") + lo_s + ", " + hi_s + "]";
    return "log2^(" + std::to_string(level) + ") in [" + lo_s + ", " + hi_s + "]";
}

} // namespace irrat
