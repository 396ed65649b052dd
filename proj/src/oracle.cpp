#include "irrat/oracle.hpp"

#include <algorithm>

namespace irrat::oracle {

Rat brute_sum(const SeriesSpec& spec, long terms) {
    Rat total(0);
    for (long k = 0; k < terms; ++k) {
        long n = spec.start_index + k;
        Rat t(spec.numer.eval(n), spec.denom.eval(n));
        t.canonicalize();
        if (spec.sign_at(n) < 0) t = -t;
        total += t;
    }
    return total;
}

const char* to_string(WitnessCheck w) {
    switch (w) {
    case WitnessCheck::Holds: return "holds";
    case WitnessCheck::Fails: return "fails";
    case WitnessCheck::Indeterminate: return "indeterminate";
    }
    return "?";
}

namespace {

// Continued-fraction partial quotients of a nonnegative rational.
std::vector<Int> cf_terms(Rat v, std::size_t max_terms) {
    std::vector<Int> out;
    v.canonicalize();
    Int num = v.get_num(), den = v.get_den();
    while (den != 0 && out.size() < max_terms) {
        Int q, r;
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        out.push_back(q);
        num = den;
        den = r;
    }
    return out;
}

} // namespace

ConvergentList convergents(const Enclosure& enc, std::size_t max_count) {
    ConvergentList result;
    if (enc.lo < 0) throw std::logic_error("convergents expect a nonnegative enclosure");

    // Quotients certain for the whole interval: the common prefix of both
    // endpoint expansions (all of one expansion when the interval is a point).
    std::size_t scan = max_count + 4;
    std::vector<Int> a = cf_terms(enc.lo, scan);
    std::vector<Int> common;
    if (enc.lo == enc.hi) {
        common = std::move(a);
        result.truncated = common.size() >= scan;
    } else {
        std::vector<Int> b = cf_terms(enc.hi, scan);
        std::size_t k = 0;
        while (k < a.size() && k < b.size() && a[k] == b[k]) ++k;
        common.assign(a.begin(), a.begin() + static_cast<long>(k));
        result.truncated = true;
    }

    Int p_prev(0), q_prev(1); // h_{-2}, k_{-2}
    Int p_cur(1), q_cur(0);   // h_{-1}, k_{-1}: first step yields a0/1
    for (std::size_t k = 0; k < common.size(); ++k) {
        Int p = common[k] * p_cur + p_prev;
        Int q = common[k] * q_cur + q_prev;
        p_prev = std::move(p_cur);
        q_prev = std::move(q_cur);
        p_cur = std::move(p);
        q_cur = std::move(q);
        if (k == 0 && p_cur == 0) continue; // values below 1: skip 0/1
        result.items.push_back({p_cur, q_cur, static_cast<long>(k)});
        if (result.items.size() == max_count) {
            result.truncated = result.truncated || k + 1 < common.size();
            break;
        }
    }
    return result;
}

WitnessCheck verify_witness(const Enclosure& enc, const Int& p, const Int& q,
                            const GrowthFn& f) {
    if (q <= 0) throw InvalidParam("witness denominator must be positive");
    Rat approx(p, q);
    approx.canonicalize();
    Rat fq = eval_rational(f.f, q);
    if (fq <= 0) throw InvalidParam("growth function must be positive at q");
    Rat bound = 1 / fq;

    Rat d_lo, d_hi;
    if (approx < enc.lo) {
        d_lo = enc.lo - approx;
        d_hi = enc.hi - approx;
    } else if (approx > enc.hi) {
        d_lo = approx - enc.hi;
        d_hi = approx - enc.lo;
    } else {
        d_lo = 0;
        d_hi = std::max(Rat(enc.hi - approx), Rat(approx - enc.lo));
    }
    if (d_hi < bound) return WitnessCheck::Holds;
    if (d_lo >= bound) return WitnessCheck::Fails;
    return WitnessCheck::Indeterminate;
}

std::string decimal_digits(const Rat& lo, const Rat& hi, int digits) {
    if (digits < 0) throw std::logic_error("digits must be >= 0");
    auto extract = [&](Rat v) {
        std::string out;
        bool neg = v < 0;
        if (neg) {
            out += '-';
            v = -v;
        }
        Int num = v.get_num(), den = v.get_den();
        Int ip, rem;
        mpz_fdiv_qr(ip.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        out += ip.get_str();
        if (digits > 0) out += '.';
        for (int k = 0; k < digits; ++k) {
            rem *= 10;
            Int digit;
            mpz_fdiv_qr(digit.get_mpz_t(), rem.get_mpz_t(), rem.get_mpz_t(), den.get_mpz_t());
            out += static_cast<char>('0' + digit.get_si());
        }
        return out;
    };
    std::string a = extract(lo);
    std::string b = extract(hi);
    if (a != b) throw InsufficientWidth("endpoints disagree within the requested digits");
    return a;
}

} // namespace irrat::oracle
