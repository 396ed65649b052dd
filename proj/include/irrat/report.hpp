#pragma once

#include <optional>
#include <string>

#include "irrat/criteria.hpp"
#include "irrat/series.hpp"

namespace irrat {

// Enclosure block carried by a report (endpoints as exact fractions).
struct ReportEnclosure {
    Rat lo, hi;
    int digits = 0;
    std::string decimal;

    bool operator==(const ReportEnclosure&) const = default;
};

struct Report {
    std::string numer, denom;
    std::string sign;
    long start_index = 1;
    long prefix = 0;
    Certificate certificate;
    std::optional<ReportEnclosure> enclosure;

    bool operator==(const Report& o) const;
};

// JSON serialization. Field names are stable: see docs/report-schema.md.
// In particular certificate.theorem, certificate.strength, enclosure.lo
// and enclosure.hi (fractions rendered as "p/q" strings) are frozen.
std::string to_json(const Report& r);
Report report_from_json(const std::string& text);

// Human-readable rendering with a leading strength banner.
std::string render_text(const Report& r);

} // namespace irrat
