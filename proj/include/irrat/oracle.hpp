#pragma once

#include <string>
#include <vector>

#include "irrat/criteria.hpp"
#include "irrat/series.hpp"

namespace irrat::oracle {

// Straightforward re-summation of the first `terms` terms, written
// independently of series::partial_sum for cross-checking.
Rat brute_sum(const SeriesSpec& spec, long terms);

struct Convergent {
    Int p, q;
    long index = 0; // position in the continued fraction (0-based after a0)
};

struct ConvergentList {
    std::vector<Convergent> items;
    bool truncated = false; // interval too wide to pin further convergents
};

// Continued-fraction convergents certain for every value in the enclosure:
// partial quotients are taken while the expansions of both endpoints agree.
// A leading 0/1 convergent (values below 1) is skipped.
ConvergentList convergents(const Enclosure& enc, std::size_t max_count);

enum class WitnessCheck { Holds, Fails, Indeterminate };

const char* to_string(WitnessCheck w);

// Does |theta - p/q| < 1/f(q) hold for every theta in the enclosure?
// Indeterminate when the enclosure is too wide to decide either way.
WitnessCheck verify_witness(const Enclosure& enc, const Int& p, const Int& q,
                            const GrowthFn& f);

// Digit extraction by repeated multiply-by-ten long division; written
// independently of series::render_decimal. Returns the digits shared by
// both endpoints, or throws InsufficientWidth if they disagree.
std::string decimal_digits(const Rat& lo, const Rat& hi, int digits);

} // namespace irrat::oracle
