#pragma once

#include <mpfr.h>

#include <optional>
#include <string>
#include <utility>

#include "irrat/seqexpr.hpp"

namespace irrat {

// RAII wrapper for a single mpfr number at the module's working precision.
class Mpfr {
public:
    Mpfr();
    Mpfr(const Mpfr& o);
    Mpfr(Mpfr&& o) noexcept;
    Mpfr& operator=(const Mpfr& o);
    Mpfr& operator=(Mpfr&& o) noexcept;
    ~Mpfr();

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }

private:
    mpfr_t v_;
    bool owns_ = true;
};

// Closed interval [lo, hi] with outward rounding.
struct FInterval {
    Mpfr lo, hi;
};

// A positive quantity x represented as log2 iterated `level` times:
// log2^(level)(x) lies in [iv.lo, iv.hi]. level 0 is the quantity itself,
// optionally with the exact integer when it fits the bit budget.
struct Magnitude {
    int level = 0;
    FInterval iv;
    std::optional<Int> exact;
    bool prime_heuristic = false; // built from nth-prime growth bounds

    std::string describe() const;
};

enum class Certainty { ProvenBelow, ProvenAtOrAbove, Unknown };

const char* to_string(Certainty c);

// Iterated-log depth beyond which operations give up (comparisons report
// Unknown via MagnitudeUnsupported in the callers).
inline constexpr int kLevelCap = 8;

// Constants for the nth-prime growth bounds c1*k*ln(k) < p_k < c2*k*ln(k).
void set_prime_bound_constants(const Rat& c1, const Rat& c2);
std::pair<Rat, Rat> prime_bound_constants();

Magnitude magnitude_from_int(const Int& v);
Magnitude magnitude_from_rat(const Rat& v);

Magnitude mag_add(const Magnitude& a, const Magnitude& b);
Magnitude mag_mul(const Magnitude& a, const Magnitude& b);
Magnitude mag_pow(const Magnitude& base, const Magnitude& exp);
Magnitude mag_pow_rat(const Magnitude& base, const Rat& exp);
Magnitude mag_sub_one(const Magnitude& a); // requires quantity >= 2
Magnitude mag_hull(const Magnitude& a, const Magnitude& b);

// Sound enclosure of expr at index n; exact when within the bit budget.
Magnitude magnitude_of(const SequenceExpr& expr, const Int& n);
Magnitude magnitude_of(const SequenceExpr& expr, long n);

// ProvenBelow means lhs < rhs is forced; ProvenAtOrAbove means lhs >= rhs.
Certainty compare(const Magnitude& lhs, const Magnitude& rhs);

// ProvenBelow iff 2*num < den is forced.
Certainty ratio_below_half(const Magnitude& num, const Magnitude& den);

} // namespace irrat
