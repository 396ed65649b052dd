#include "irrat/catalog.hpp"

#include <sstream>

namespace irrat {

namespace {

long param_long(const std::map<std::string, std::string>& params, const std::string& key,
                long fallback, long min_value) {
    auto it = params.find(key);
    long v = fallback;
    if (it != params.end()) {
        try {
            std::size_t pos = 0;
            v = std::stol(it->second, &pos);
            if (pos != it->second.size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw InvalidParam("parameter '" + key + "' must be an integer, got '" +
                               it->second + "'");
        }
    }
    if (v < min_value) {
        throw InvalidParam("parameter '" + key + "' must be >= " + std::to_string(min_value));
    }
    return v;
}

SeriesSpec make_spec(const char* numer, const char* denom, SignMode mode = SignMode::AllPositive,
                     long start = 1) {
    SeriesSpec s;
    s.numer = parse_sequence_expr(numer);
    s.denom = parse_sequence_expr(denom);
    s.sign_mode = mode;
    s.start_index = start;
    return s;
}

} // namespace

CatalogEntry builtin(const std::string& name,
                     const std::map<std::string, std::string>& params) {
    CatalogEntry e;
    e.name = name;

    if (name == "e") {
        e.description = "sum 1/n! from n=0 (Euler's number)";
        e.spec = make_spec("1", "n!", SignMode::AllPositive, 0);
        e.expected = VerdictKind::Irrational;
        e.theorem = "T2";
        e.max_exact_index = 60;
        e.default_prefix = 20;
    } else if (name == "n4_fact5") {
        e.description = "sum n^4/(n!)^5";
        e.spec = make_spec("n^4", "(n!)^5");
        e.expected = VerdictKind::Irrational;
        e.theorem = "T2";
        e.max_exact_index = 40;
        e.default_prefix = 15;
    } else if (name == "sin_recip") {
        long r = param_long(params, "r", 3, 1);
        e.description = "sin(1/r) = sum (-1)^(n-1) / ((2n-1)! r^(2n-1)), r=" + std::to_string(r);
        std::string denom = "(2*n - 1)! * " + std::to_string(r) + "^(2*n - 1)";
        e.spec = make_spec("1", denom.c_str(), SignMode::Alternating);
        e.expected = VerdictKind::Irrational;
        e.theorem = "T1";
        e.max_exact_index = 40;
        e.default_prefix = 12;
    } else if (name == "pair_2_3") {
        e.description = "sum 1/2^(n!) plus sum 1/3^(n!) (pairwise criterion)";
        e.spec = make_spec("1", "2^(n!)");
        e.spec2 = make_spec("1", "3^(n!)");
        e.expected = VerdictKind::Irrational;
        e.theorem = "T3";
        e.max_exact_index = 9;
        e.default_prefix = 8;
        e.notes = "denominators exceed the default bit budget past n=9";
    } else if (name == "prime_tower") {
        e.description = "sum 1/p_(2^(2^(n!))) over the primes (lcm criterion)";
        e.spec = make_spec("1", "nthprime(2^(2^(n!)))");
        e.use_lcm = true;
        e.expected = VerdictKind::Irrational;
        e.theorem = "T4";
        e.max_exact_index = 2;
        e.default_prefix = 4;
        e.notes = "exact primes only for n<=2; growth bounds beyond (evidence only)";
    } else if (name == "liouville10") {
        e.description = "sum 1/10^(n!) with approximation exponent 3";
        e.spec = make_spec("1", "10^(n!)");
        e.epsilon = Rat(1);
        e.expected = VerdictKind::Transcendental;
        e.theorem = "T7";
        e.max_exact_index = 9;
        e.default_prefix = 8;
    } else if (name == "three_two") {
        e.description = "sum 3^n/2^(3^n) with approximation exponent 2+2/3";
        e.spec = make_spec("3^n", "2^(3^n)");
        e.epsilon = Rat(2, 3);
        e.expected = VerdictKind::Transcendental;
        e.theorem = "T7";
        e.max_exact_index = 13;
        e.default_prefix = 12;
    } else if (name == "cremer_tower") {
        long d = param_long(params, "d", 2, 2);
        e.description = "sum 1/b_n with b_n a 2n-level power tower of " + std::to_string(d) +
                        " topped by n*" + std::to_string(d) + " (rotation-number condition)";
        std::string denom = "tower(" + std::to_string(d) + ", 2*n, " + std::to_string(d) + "*n)";
        e.spec = make_spec("1", denom.c_str());
        e.degree = d;
        e.expected = VerdictKind::CremerConditionHolds;
        e.theorem = "T8";
        e.max_exact_index = 2;
        e.default_prefix = 4;
        e.notes = "towers leave the bit budget at n=3; magnitude route carries the check";
    } else if (name == "geometric") {
        e.description = "sum 1/2^n (control: constant term ratio, criteria stay silent)";
        e.spec = make_spec("1", "2^n");
        e.expected = VerdictKind::Inconclusive;
        e.max_exact_index = 1000;
        e.default_prefix = 20;
        e.notes = "control entry: the weighted ratio never falls below the threshold";
    } else if (name == "remark_2e") {
        e.description = "sum (n+1)/n! from n=0 (control: weighted ratio tends to 1)";
        e.spec = make_spec("n + 1", "n!", SignMode::AllPositive, 0);
        e.expected = VerdictKind::Inconclusive;
        e.max_exact_index = 60;
        e.default_prefix = 20;
        e.notes = "control entry: sums to a rational multiple of e but the weighted "
                  "ratio stays above 1";
    } else {
        throw UnknownName("unknown built-in series '" + name + "'");
    }
    return e;
}

std::vector<std::string> list_builtins() {
    return {"e",           "n4_fact5", "sin_recip", "pair_2_3",  "prime_tower",
            "liouville10", "three_two", "cremer_tower", "geometric", "remark_2e"};
}

std::string describe_builtins() {
    std::ostringstream out;
    for (const auto& name : list_builtins()) {
        CatalogEntry e = builtin(name);
        out << name;
        for (std::size_t k = name.size(); k < 14; ++k) out << ' ';
        out << e.description << '\n';
    }
    return out.str();
}

Certificate classify_entry(const CatalogEntry& entry, long N, const CriteriaOptions& opts) {
    if (entry.spec2) {
        return check_sum_pair(entry.spec, *entry.spec2, N, opts).certificate;
    }
    if (entry.epsilon) {
        return check_roth_transcendence(entry.spec, *entry.epsilon, N, opts);
    }
    if (entry.degree) {
        return check_cremer_condition(entry.spec, *entry.degree, N, opts);
    }
    if (entry.use_lcm) {
        return check_lcm_criterion(entry.spec, N, opts);
    }
    return classify_irrational(entry.spec, N, opts);
}

} // namespace irrat
