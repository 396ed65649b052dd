#include "irrat/series.hpp"

namespace irrat {

const char* to_string(SignMode m) {
    switch (m) {
    case SignMode::AllPositive: return "all-positive";
    case SignMode::Alternating: return "alternating";
    case SignMode::General: return "general";
    }
    return "?";
}

const char* to_string(Strength s) {
    switch (s) {
    case Strength::ProvenOnPrefix: return "Proven-on-prefix";
    case Strength::EnvelopeCertified: return "Envelope-certified";
    case Strength::EvidenceOnly: return "Evidence-only";
    }
    return "?";
}

int SeriesSpec::sign_at(long n) const {
    if (sign_mode != SignMode::Alternating) return 1;
    long offset = n - start_index;
    int first = first_negative ? -1 : 1;
    return (offset % 2 == 0) ? first : -first;
}

Rat term(const SeriesSpec& spec, long n) {
    if (n < spec.start_index) throw std::logic_error("term index before start_index");
    Int a = spec.numer.eval(n);
    Int b = spec.denom.eval(n);
    if (a <= 0 || b <= 0) {
        throw EvalError(EvalError::Kind::NonPositiveValue,
                        "series terms must be positive rationals");
    }
    Rat c(a, b);
    c.canonicalize();
    return spec.sign_at(n) * c;
}

Rat partial_sum(const SeriesSpec& spec, long N) {
    Rat sum(0);
    for (long n = spec.start_index; n <= N; ++n) {
        sum += term(spec, n);
    }
    return sum;
}

RatioCertificate certify_ratios(const SeriesSpec& spec, long scan_to,
                                const std::optional<SequenceExpr>& envelope) {
    if (scan_to < spec.start_index + 1) {
        throw NoConvergenceEvidence("ratio scan range is empty");
    }
    const Rat half(1, 2);
    long from = spec.start_index;
    Rat prev = abs(term(spec, spec.start_index));
    for (long n = spec.start_index; n < scan_to; ++n) {
        Rat cur = abs(term(spec, n + 1));
        if (cur > half * prev) from = n + 1;
        prev = cur;
    }
    if (from >= scan_to) {
        throw NoConvergenceEvidence(
            "term ratios never stay <= 1/2 within the scanned prefix");
    }
    RatioCertificate cert;
    cert.from_index = from;
    cert.checked_to = scan_to;
    cert.strength = Strength::ProvenOnPrefix;
    if (envelope) {
        // Envelope upgrade: g decreasing and dominating every checked ratio.
        bool ok = true;
        Rat gprev;
        for (long n = from; n < scan_to && ok; ++n) {
            Rat g = eval_rational(*envelope, Int(n));
            Rat ratio = abs(term(spec, n + 1)) / abs(term(spec, n));
            ratio.canonicalize();
            if (g < ratio) ok = false;
            if (n > from && g > gprev) ok = false;
            gprev = g;
        }
        if (ok) {
            cert.envelope = envelope;
            cert.strength = Strength::EnvelopeCertified;
        }
    }
    return cert;
}

Rat tail_bound(const SeriesSpec& spec, long N, const RatioCertificate& cert) {
    if (cert.from_index > N + 1 || cert.checked_to < N + 1) {
        throw CertificateGap("ratio certificate does not cover the tail start");
    }
    return 2 * abs(term(spec, N + 1));
}

Enclosure enclose(const SeriesSpec& spec, int target_digits) {
    if (target_digits < 1) throw std::logic_error("target_digits must be >= 1");
    Rat target(1);
    {
        Int p;
        mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(target_digits));
        target = Rat(1, p);
    }
    const Rat half(1, 2);
    constexpr long kScanCap = 200000;

    Rat sum(0), prev_sum(0);
    long ratio_from = spec.start_index; // earliest index with all later ratios <= 1/2
    Rat abs_cur = abs(term(spec, spec.start_index));
    sum = term(spec, spec.start_index);

    for (long N = spec.start_index; N < spec.start_index + kScanCap; ++N) {
        Rat next = term(spec, N + 1);
        Rat abs_next = abs(next);
        if (abs_next > half * abs_cur) ratio_from = N + 1;

        if (ratio_from <= N + 1) {
            Rat tail = 2 * abs_next;
            Rat lo, hi;
            switch (spec.sign_mode) {
            case SignMode::AllPositive:
                lo = sum;
                hi = sum + tail;
                break;
            case SignMode::Alternating: {
                if (next > 0) {
                    lo = sum;
                    hi = sum + tail;
                } else {
                    lo = sum - tail;
                    hi = sum;
                }
                // Leibniz bracket: consecutive partial sums enclose the
                // limit once |c_n| is decreasing past ratio_from.
                if (N > ratio_from) {
                    Rat with_next = sum + next;
                    Rat l2 = std::min(sum, with_next);
                    Rat h2 = std::max(sum, with_next);
                    lo = std::max(lo, l2);
                    hi = std::min(hi, h2);
                }
                break;
            }
            case SignMode::General:
                lo = sum - tail;
                hi = sum + tail;
                break;
            }
            if (hi - lo <= target) {
                Enclosure enc;
                enc.lo = lo;
                enc.hi = hi;
                enc.certified_from = N;
                enc.tail = tail;
                return enc;
            }
        }
        prev_sum = sum;
        sum += next;
        abs_cur = abs_next;
    }
    throw NoConvergenceEvidence("no enclosure of the requested width within the scan cap");
}

std::string render_decimal(const Enclosure& enc, int digits) {
    if (digits < 0) throw std::logic_error("digits must be >= 0");
    Int scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    auto scaled_floor = [&](const Rat& v) {
        Rat s = v * Rat(scale);
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), s.get_num().get_mpz_t(), s.get_den().get_mpz_t());
        return q;
    };
    Int flo = scaled_floor(enc.lo);
    Int fhi = scaled_floor(enc.hi);
    if (flo != fhi) {
        throw InsufficientWidth("enclosure endpoints disagree at the requested digit");
    }
    bool exact_point = (enc.lo == enc.hi) && (Rat(flo) == enc.lo * Rat(scale));

    std::string out;
    Int v = flo;
    if (v < 0) {
        out += '-';
        v = -v;
    }
    Int ip = v / scale;
    Int rem = v - ip * scale;
    out += ip.get_str();
    if (digits > 0) {
        std::string frac = rem.get_str();
        out += '.';
        out += std::string(static_cast<std::size_t>(digits) - frac.size(), '0');
        out += frac;
    }
    if (!exact_point) out += "…";
    return out;
}

} // namespace irrat
