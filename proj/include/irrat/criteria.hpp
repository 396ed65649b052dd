#pragma once

#include <optional>
#include <string>
#include <vector>

#include "irrat/magnitude.hpp"
#include "irrat/series.hpp"

namespace irrat {

enum class VerdictKind { Rational, Irrational, Transcendental, CremerConditionHolds, Inconclusive };

const char* to_string(VerdictKind v);

struct Verdict {
    VerdictKind kind = VerdictKind::Inconclusive;
    std::optional<Rat> value; // Rational only
};

struct ConditionReport {
    std::string name;
    long from_n = 0; // first index of the verified tail
    long to_n = 0;   // last index checked
    bool holds = false;
    Strength strength = Strength::ProvenOnPrefix;
    std::string note;
};

struct Certificate {
    std::string theorem; // "T1".."T8"
    std::vector<ConditionReport> conditions;
    Verdict verdict;
    Strength strength = Strength::ProvenOnPrefix;
    std::vector<std::string> notes;
};

// Thresholds for "tends to zero" evidence on a finite prefix: the last
// checked value must fall below `threshold` and the final `window`
// checked values must be strictly decreasing.
struct CriteriaOptions {
    Rat threshold = Rat(1, 2);
    int window = 5;
    std::optional<SequenceExpr> envelope;
};

// Growth function f applied to b_n (the expression's variable stands for b).
struct GrowthFn {
    SequenceExpr f;
    std::string description;
};

// c_n = 1/a^(P(n)) with P(n) = coeffs[0]*n^m + ... + coeffs[m].
struct PolyExp {
    Int base;                // a >= 2
    std::vector<Int> coeffs; // b0..bm; leading b0 >= 1, the rest >= 0
};

struct ApproximationWitness {
    Int numerator;   // b_n * S_n
    Int denominator; // b_n
    long index;
};

ConditionReport check_divisibility_chain(const SeriesSpec& spec, long N);

ConditionReport check_weighted_ratio_limit(const SeriesSpec& spec, long N,
                                           const std::optional<SequenceExpr>& envelope = std::nullopt,
                                           const CriteriaOptions& opts = {});

ConditionReport check_tail_nonvanishing(const SeriesSpec& spec, long N_max);

Certificate classify_irrational(const SeriesSpec& spec, long N,
                                const CriteriaOptions& opts = {});

struct PairResult {
    Certificate certificate;
    SeriesSpec combined; // numer a*b' + b*a', denom b*b'
};

PairResult check_sum_pair(const SeriesSpec& specA, const SeriesSpec& specB, long N,
                          const CriteriaOptions& opts = {});

Certificate check_lcm_criterion(const SeriesSpec& spec, long N,
                                const CriteriaOptions& opts = {});

Certificate classify_geometric_poly(const PolyExp& p);

// The series spec realizing the geometric-polynomial family.
SeriesSpec geometric_poly_spec(const PolyExp& p);

struct GrowthResult {
    Certificate certificate;
    std::vector<ApproximationWitness> witnesses;
};

GrowthResult check_growth_approx(const SeriesSpec& spec, const GrowthFn& f, long N,
                                 const CriteriaOptions& opts = {});

Certificate check_roth_transcendence(const SeriesSpec& spec, const Rat& epsilon, long N,
                                     const CriteriaOptions& opts = {});

Certificate check_cremer_condition(const SeriesSpec& spec, long d, long N,
                                   const CriteriaOptions& opts = {});

// Exact weighted ratio q_n = a_{n+1} * b_n / b_{n+1} (throws on budget).
Rat weighted_ratio(const SeriesSpec& spec, long n);

// Exact Roth-condition value t_n = a_{n+1} * b_n^{2+eps} / b_{n+1} when
// b_n^{2+eps} is an integer power within the bit budget; nullopt otherwise.
std::optional<Rat> roth_ratio(const SeriesSpec& spec, const Rat& epsilon, long n);

} // namespace irrat
