#pragma once

#include <optional>
#include <string>

#include "irrat/seqexpr.hpp"

namespace irrat {

enum class SignMode { AllPositive, Alternating, General };

enum class Strength { ProvenOnPrefix, EnvelopeCertified, EvidenceOnly };

const char* to_string(SignMode m);
const char* to_string(Strength s);

// Series sum over c_n = sign(n) * numer(n)/denom(n), n from start_index.
struct SeriesSpec {
    SequenceExpr numer;
    SequenceExpr denom;
    SignMode sign_mode = SignMode::AllPositive;
    bool first_negative = false; // Alternating: sign of the first term
    long start_index = 1;

    int sign_at(long n) const;
};

// Exact signed term c_n, reduced.
Rat term(const SeriesSpec& spec, long n);

// Exact sum of c_n for n in [start_index, N].
Rat partial_sum(const SeriesSpec& spec, long N);

// Witness that |c_{n+1}/c_n| <= 1/2 was verified exactly on
// [from_index, checked_to]; optionally an envelope g(n) validated
// decreasing with g(n) >= |c_{n+1}/c_n| pointwise.
struct RatioCertificate {
    long from_index = 0;
    long checked_to = 0;
    std::optional<SequenceExpr> envelope;
    Strength strength = Strength::ProvenOnPrefix;
};

// Scan term ratios up to scan_to and locate the first index from which
// every checked ratio is <= 1/2. Throws NoConvergenceEvidence when no
// such tail exists within the scan.
RatioCertificate certify_ratios(const SeriesSpec& spec, long scan_to,
                                const std::optional<SequenceExpr>& envelope = std::nullopt);

// Geometric tail majorization: |sum_{n>N} c_n| <= 2|c_{N+1}| under cert.
Rat tail_bound(const SeriesSpec& spec, long N, const RatioCertificate& cert);

struct Enclosure {
    Rat lo, hi;
    long certified_from = 0; // prefix length N backing the bound
    Rat tail;                // tail bound used
};

// Exact rational interval of width <= 10^-target_digits containing the
// limit, at the smallest prefix achieving it.
Enclosure enclose(const SeriesSpec& spec, int target_digits);

// Certified decimal rendering: every printed digit is shared by both
// endpoints. A trailing "..." marks a non-degenerate enclosure.
std::string render_decimal(const Enclosure& enc, int digits);

} // namespace irrat
