#include "irrat/report.hpp"

#include <json.hpp>

#include <sstream>

namespace irrat {

namespace {

using nlohmann::json;

std::string rat_str(const Rat& v) {
    Rat c = v;
    c.canonicalize();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

Rat rat_parse(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) throw InvalidParam("fraction must be 'p/q': " + s);
    Rat v(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
    v.canonicalize();
    return v;
}

Strength strength_parse(const std::string& s) {
    if (s == to_string(Strength::ProvenOnPrefix)) return Strength::ProvenOnPrefix;
    if (s == to_string(Strength::EnvelopeCertified)) return Strength::EnvelopeCertified;
    if (s == to_string(Strength::EvidenceOnly)) return Strength::EvidenceOnly;
    throw InvalidParam("unknown strength: " + s);
}

VerdictKind verdict_parse(const std::string& s) {
    for (VerdictKind k : {VerdictKind::Rational, VerdictKind::Irrational,
                          VerdictKind::Transcendental, VerdictKind::CremerConditionHolds,
                          VerdictKind::Inconclusive}) {
        if (s == to_string(k)) return k;
    }
    throw InvalidParam("unknown verdict: " + s);
}

} // namespace

bool Report::operator==(const Report& o) const {
    auto cond_eq = [](const ConditionReport& a, const ConditionReport& b) {
        return a.name == b.name && a.from_n == b.from_n && a.to_n == b.to_n &&
               a.holds == b.holds && a.strength == b.strength && a.note == b.note;
    };
    if (numer != o.numer || denom != o.denom || sign != o.sign ||
        start_index != o.start_index || prefix != o.prefix || enclosure != o.enclosure) {
        return false;
    }
    const Certificate& x = certificate;
    const Certificate& y = o.certificate;
    if (x.theorem != y.theorem || x.strength != y.strength ||
        x.verdict.kind != y.verdict.kind || x.verdict.value != y.verdict.value ||
        x.notes != y.notes || x.conditions.size() != y.conditions.size()) {
        return false;
    }
    for (std::size_t k = 0; k < x.conditions.size(); ++k) {
        if (!cond_eq(x.conditions[k], y.conditions[k])) return false;
    }
    return true;
}

std::string to_json(const Report& r) {
    json j;
    j["series"] = {{"numer", r.numer},
                   {"denom", r.denom},
                   {"sign", r.sign},
                   {"start", r.start_index}};
    j["prefix"] = r.prefix;

    json cert;
    cert["theorem"] = r.certificate.theorem;
    cert["strength"] = to_string(r.certificate.strength);
    cert["verdict"] = to_string(r.certificate.verdict.kind);
    if (r.certificate.verdict.value) cert["value"] = rat_str(*r.certificate.verdict.value);
    cert["conditions"] = json::array();
    for (const auto& c : r.certificate.conditions) {
        cert["conditions"].push_back({{"name", c.name},
                                      {"from", c.from_n},
                                      {"to", c.to_n},
                                      {"holds", c.holds},
                                      {"strength", to_string(c.strength)},
                                      {"note", c.note}});
    }
    cert["notes"] = r.certificate.notes;
    j["certificate"] = std::move(cert);

    if (r.enclosure) {
        j["enclosure"] = {{"lo", rat_str(r.enclosure->lo)},
                          {"hi", rat_str(r.enclosure->hi)},
                          {"digits", r.enclosure->digits},
                          {"decimal", r.enclosure->decimal}};
    }
    return j.dump(2);
}

Report report_from_json(const std::string& text) {
    json j = json::parse(text);
    Report r;
    const json& s = j.at("series");
    r.numer = s.at("numer").get<std::string>();
    r.denom = s.at("denom").get<std::string>();
    r.sign = s.at("sign").get<std::string>();
    r.start_index = s.at("start").get<long>();
    r.prefix = j.at("prefix").get<long>();

    const json& cert = j.at("certificate");
    r.certificate.theorem = cert.at("theorem").get<std::string>();
    r.certificate.strength = strength_parse(cert.at("strength").get<std::string>());
    r.certificate.verdict.kind = verdict_parse(cert.at("verdict").get<std::string>());
    if (cert.contains("value")) {
        r.certificate.verdict.value = rat_parse(cert.at("value").get<std::string>());
    }
    for (const auto& c : cert.at("conditions")) {
        ConditionReport cr;
        cr.name = c.at("name").get<std::string>();
        cr.from_n = c.at("from").get<long>();
        cr.to_n = c.at("to").get<long>();
        cr.holds = c.at("holds").get<bool>();
        cr.strength = strength_parse(c.at("strength").get<std::string>());
        cr.note = c.at("note").get<std::string>();
        r.certificate.conditions.push_back(std::move(cr));
    }
    r.certificate.notes = cert.at("notes").get<std::vector<std::string>>();

    if (j.contains("enclosure")) {
        const json& e = j.at("enclosure");
        ReportEnclosure enc;
        enc.lo = rat_parse(e.at("lo").get<std::string>());
        enc.hi = rat_parse(e.at("hi").get<std::string>());
        enc.digits = e.at("digits").get<int>();
        enc.decimal = e.at("decimal").get<std::string>();
        r.enclosure = std::move(enc);
    }
    return r;
}

std::string render_text(const Report& r) {
    std::ostringstream out;
    out << "[" << to_string(r.certificate.strength) << "] verdict: "
        << to_string(r.certificate.verdict.kind);
    if (!r.certificate.theorem.empty()) out << " (" << r.certificate.theorem << ")";
    if (r.certificate.verdict.value) {
        out << " = " << rat_str(*r.certificate.verdict.value);
    }
    out << "\n";
    out << "series: (" << r.numer << ") / (" << r.denom << "), sign " << r.sign
        << ", n from " << r.start_index << ", prefix " << r.prefix << "\n";
    for (const auto& c : r.certificate.conditions) {
        out << "  [" << (c.holds ? "ok" : "FAIL") << "] " << c.name << " (n=" << c.from_n
            << ".." << c.to_n << ", " << to_string(c.strength) << ")";
        if (!c.note.empty()) out << " — " << c.note;
        out << "\n";
    }
    for (const auto& n : r.certificate.notes) out << "  note: " << n << "\n";
    if (r.enclosure) {
        out << "enclosure: [" << rat_str(r.enclosure->lo) << ", " << rat_str(r.enclosure->hi)
            << "]\n";
        out << "decimal (" << r.enclosure->digits << " digits): " << r.enclosure->decimal
            << "\n";
    }
    return out.str();
}

} // namespace irrat
