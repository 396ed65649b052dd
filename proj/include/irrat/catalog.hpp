#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "irrat/criteria.hpp"

namespace irrat {

// A named series with the criterion used to classify it and the prefix
// depths that stay within the default bit budget.
struct CatalogEntry {
    std::string name;
    std::string description;
    SeriesSpec spec;
    std::optional<SeriesSpec> spec2;  // pairwise-sum entries
    std::optional<Rat> epsilon;       // approximation-exponent entries
    std::optional<long> degree;       // polynomial-degree entries
    bool use_lcm = false;
    VerdictKind expected = VerdictKind::Inconclusive;
    std::string theorem;        // certificate theorem tag, "" for controls
    long max_exact_index = 0;   // last index evaluable exactly at default budget
    long default_prefix = 12;   // prefix N used when the caller gives none
    std::string notes;
};

// Instantiate a built-in series by name. Parametrized entries take their
// parameters from `params` (e.g. {"r","3"} or {"d","2"}); missing
// parameters fall back to documented defaults. Throws UnknownName or
// InvalidParam.
CatalogEntry builtin(const std::string& name,
                     const std::map<std::string, std::string>& params = {});

// Names in deterministic (listing) order.
std::vector<std::string> list_builtins();

// One-line summary per entry, aligned for terminal display.
std::string describe_builtins();

// Run the entry's designated criterion over the prefix [start, N].
Certificate classify_entry(const CatalogEntry& entry, long N,
                           const CriteriaOptions& opts = {});

} // namespace irrat
