#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "irrat/catalog.hpp"
#include "irrat/criteria.hpp"
#include "irrat/magnitude.hpp"
#include "irrat/oracle.hpp"
#include "irrat/report.hpp"
#include "irrat/series.hpp"

using namespace irrat;

namespace {

struct SpecFlags {
    std::string numer, denom, numer2, denom2;
    std::string sign = "all-positive";
    long start = 1;
    bool first_negative = false;
    std::string builtin_name;
    std::string spec_file;
    std::vector<std::string> params;
};

std::map<std::string, std::string> param_map(const std::vector<std::string>& params) {
    std::map<std::string, std::string> out;
    for (const auto& p : params) {
        auto eq = p.find('=');
        if (eq == std::string::npos) {
            throw InvalidParam("--param expects key=value, got '" + p + "'");
        }
        out[p.substr(0, eq)] = p.substr(eq + 1);
    }
    return out;
}

SignMode parse_sign(const std::string& s) {
    if (s == "all-positive" || s == "positive") return SignMode::AllPositive;
    if (s == "alternating") return SignMode::Alternating;
    if (s == "general") return SignMode::General;
    throw InvalidParam("unknown sign mode '" + s + "'");
}

void load_spec_file(const std::string& path, SpecFlags& f) {
    std::ifstream in(path);
    if (!in) throw InvalidParam("cannot open spec file '" + path + "'");
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw InvalidParam("spec file line has no '=': " + line);
        }
        std::string key = line.substr(0, eq);
        std::string value = line.substr(eq + 1);
        if (key == "numer") f.numer = value;
        else if (key == "denom") f.denom = value;
        else if (key == "numer2") f.numer2 = value;
        else if (key == "denom2") f.denom2 = value;
        else if (key == "sign") f.sign = value;
        else if (key == "start") f.start = std::stol(value);
        else if (key == "first_negative") f.first_negative = (value == "true" || value == "1");
        else if (key == "builtin") f.builtin_name = value;
        else if (key == "param") f.params.push_back(value);
        else throw InvalidParam("unknown spec file key '" + key + "'");
    }
}

struct ResolvedInput {
    SeriesSpec spec;
    std::optional<CatalogEntry> entry;
    std::optional<SeriesSpec> spec2;
};

ResolvedInput resolve(SpecFlags f) {
    if (!f.spec_file.empty()) load_spec_file(f.spec_file, f);
    ResolvedInput r;
    if (!f.builtin_name.empty()) {
        r.entry = builtin(f.builtin_name, param_map(f.params));
        r.spec = r.entry->spec;
        r.spec2 = r.entry->spec2;
        return r;
    }
    if (f.numer.empty() || f.denom.empty()) {
        throw InvalidParam("need --numer and --denom, or --builtin, or --spec-file");
    }
    r.spec.numer = parse_sequence_expr(f.numer);
    r.spec.denom = parse_sequence_expr(f.denom);
    r.spec.sign_mode = parse_sign(f.sign);
    r.spec.first_negative = f.first_negative;
    r.spec.start_index = f.start;
    if (!f.numer2.empty() || !f.denom2.empty()) {
        if (f.numer2.empty() || f.denom2.empty()) {
            throw InvalidParam("pairwise input needs both --numer2 and --denom2");
        }
        SeriesSpec s2;
        s2.numer = parse_sequence_expr(f.numer2);
        s2.denom = parse_sequence_expr(f.denom2);
        s2.sign_mode = r.spec.sign_mode;
        s2.start_index = r.spec.start_index;
        r.spec2 = std::move(s2);
    }
    return r;
}

// An enclosure of width 10^-digits can still straddle a decimal boundary at
// the last requested digit; retry with guard digits until rendering succeeds.
Enclosure enclose_for_digits(const SeriesSpec& spec, int digits) {
    for (int extra : {0, 2, 6, 12, 20, 40}) {
        Enclosure enc = enclose(spec, digits + extra);
        try {
            render_decimal(enc, digits);
            return enc;
        } catch (const InsufficientWidth&) {
            // widen the guard and retry
        }
    }
    return enclose(spec, digits + 80);
}

Report make_report(const ResolvedInput& in, long prefix, Certificate cert,
                   std::optional<int> digits,
                   const std::optional<SeriesSpec>& sum_spec = std::nullopt) {
    // Pairwise entries are enclosed through the combined series.
    const SeriesSpec& enc_spec = sum_spec ? *sum_spec : in.spec;
    Report rep;
    rep.numer = in.spec.numer.format();
    rep.denom = in.spec.denom.format();
    rep.sign = to_string(in.spec.sign_mode);
    rep.start_index = in.spec.start_index;
    rep.prefix = prefix;
    rep.certificate = std::move(cert);
    if (digits) {
        Enclosure enc = enclose_for_digits(enc_spec, *digits);
        ReportEnclosure re;
        re.lo = enc.lo;
        re.hi = enc.hi;
        re.digits = *digits;
        re.decimal = render_decimal(enc, *digits);
        rep.enclosure = std::move(re);
    }
    return rep;
}

int emit(const Report& rep, const std::string& format) {
    if (format == "json") {
        std::cout << to_json(rep) << "\n";
    } else {
        std::cout << render_text(rep);
    }
    switch (rep.certificate.verdict.kind) {
    case VerdictKind::Inconclusive: return 1;
    default: return 0;
    }
}

// Value rendering for eval tables: plain when small, scale notation when huge.
std::string show_value(const SequenceExpr& e, long n) {
    try {
        return magnitude_from_int(e.eval(n)).describe();
    } catch (const EvalError&) {
        try {
            return magnitude_of(e, n).describe();
        } catch (const MagnitudeUnsupported&) {
            return "(beyond magnitude reach)";
        }
    }
}

// Rationals with huge components print in scale notation, not digit dumps.
std::string show_rat(const Rat& v) {
    Rat c = v;
    c.canonicalize();
    Int num = c.get_num(), den = c.get_den();
    bool neg = num < 0;
    if (neg) num = -num;
    if (mpz_sizeinbase(num.get_mpz_t(), 2) <= 64 && mpz_sizeinbase(den.get_mpz_t(), 2) <= 64) {
        return c.get_str();
    }
    std::string out = neg ? "-" : "";
    out += magnitude_from_int(num).describe();
    if (den != 1) out += " / " + magnitude_from_int(den).describe();
    return out;
}

int run_eval(const ResolvedInput& in, long terms, std::optional<int> digits,
             const std::string& format) {
    std::ostringstream out;
    Rat sum(0);
    bool exact_ok = true;
    out << "n\ta_n\tb_n\tc_n\tq_n\tS_n\n";
    // The table covers indices start..terms inclusive.
    for (long n = in.spec.start_index; n <= terms; ++n) {
        out << n << "\t" << show_value(in.spec.numer, n) << "\t"
            << show_value(in.spec.denom, n) << "\t";
        try {
            Rat c = term(in.spec, n);
            sum += c;
            out << show_rat(c) << "\t";
        } catch (const EvalError&) {
            exact_ok = false;
            out << "-\t";
        }
        try {
            out << show_rat(weighted_ratio(in.spec, n)) << "\t";
        } catch (const EvalError&) {
            out << "-\t";
        }
        if (exact_ok) out << show_rat(sum);
        else out << "-";
        out << "\n";
    }
    std::cout << out.str();
    if (digits) {
        Enclosure enc = enclose_for_digits(in.spec, *digits);
        if (format == "json") {
            Report rep = make_report(in, terms, Certificate{}, digits);
            std::cout << to_json(rep) << "\n";
        } else {
            std::cout << "enclosure: [" << enc.lo.get_str() << ", " << enc.hi.get_str()
                      << "]\n"
                      << "decimal: " << render_decimal(enc, *digits) << "\n";
        }
    }
    return 0;
}

int run_demo_cremer(long degree, long iters, long precision, const std::string& out_path,
                    std::vector<std::string> seeds, bool theta_zero) {
    if (degree < 2) throw InvalidParam("--degree must be >= 2");
    if (iters < 0) throw InvalidParam("--iters must be >= 0");
    // Rough working-precision requirement: every step can lose a few bits
    // to the power and the rotation factor; demand headroom for M steps.
    long required = 64 + 8 * iters;
    if (precision < required) {
        std::cerr << "precision " << precision << " bits is insufficient for " << iters
                  << " iterations; need at least " << required << " bits\n";
        return 2;
    }

    // theta from the tower series for this degree, summed over the exactly
    // evaluable prefix; the first omitted term is far below 2^-precision.
    Rat theta(0);
    if (!theta_zero) {
        CatalogEntry entry = builtin("cremer_tower", {{"d", std::to_string(degree)}});
        for (long n = entry.spec.start_index;; ++n) {
            try {
                theta += term(entry.spec, n);
            } catch (const EvalError&) {
                break;
            }
        }
    }

    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!out_path.empty() && out_path != "-") {
        file.open(out_path);
        if (!file) throw InvalidParam("cannot open output file '" + out_path + "'");
        out = &file;
    }
    *out << "seed_re,seed_im,step,abs_z\n";

    if (seeds.empty()) {
        seeds = {"0.001,0", "0,0.001", "-0.001,0", "0,-0.001", "0.1,0"};
    }

    mpfr_prec_t prec = static_cast<mpfr_prec_t>(precision);
    mpfr_t rot_re, rot_im, zr, zi, tr, ti, t2, absz;
    for (auto* p : {&rot_re, &rot_im, &zr, &zi, &tr, &ti, &t2, &absz}) {
        mpfr_init2(*p, prec);
    }
    // e^{2 pi i theta}
    {
        mpfr_t two_pi_theta;
        mpfr_init2(two_pi_theta, prec);
        mpfr_const_pi(two_pi_theta, MPFR_RNDN);
        mpfr_mul_ui(two_pi_theta, two_pi_theta, 2, MPFR_RNDN);
        mpfr_t th;
        mpfr_init2(th, prec);
        mpfr_set_q(th, theta.get_mpq_t(), MPFR_RNDN);
        mpfr_mul(two_pi_theta, two_pi_theta, th, MPFR_RNDN);
        mpfr_sin_cos(rot_im, rot_re, two_pi_theta, MPFR_RNDN);
        mpfr_clear(two_pi_theta);
        mpfr_clear(th);
    }

    for (const auto& seed : seeds) {
        auto comma = seed.find(',');
        std::string re_s = comma == std::string::npos ? seed : seed.substr(0, comma);
        std::string im_s = comma == std::string::npos ? "0" : seed.substr(comma + 1);
        mpfr_set_str(zr, re_s.c_str(), 10, MPFR_RNDN);
        mpfr_set_str(zi, im_s.c_str(), 10, MPFR_RNDN);

        for (long step = 1; step <= iters; ++step) {
            // w = z^degree by repeated complex squaring-free multiply.
            mpfr_t wr, wi;
            mpfr_init2(wr, prec);
            mpfr_init2(wi, prec);
            mpfr_set(wr, zr, MPFR_RNDN);
            mpfr_set(wi, zi, MPFR_RNDN);
            for (long k = 1; k < degree; ++k) {
                mpfr_mul(tr, wr, zr, MPFR_RNDN);
                mpfr_mul(t2, wi, zi, MPFR_RNDN);
                mpfr_sub(tr, tr, t2, MPFR_RNDN);
                mpfr_mul(ti, wr, zi, MPFR_RNDN);
                mpfr_mul(t2, wi, zr, MPFR_RNDN);
                mpfr_add(ti, ti, t2, MPFR_RNDN);
                mpfr_set(wr, tr, MPFR_RNDN);
                mpfr_set(wi, ti, MPFR_RNDN);
            }
            // z' = w + rot * z
            mpfr_mul(tr, rot_re, zr, MPFR_RNDN);
            mpfr_mul(t2, rot_im, zi, MPFR_RNDN);
            mpfr_sub(tr, tr, t2, MPFR_RNDN);
            mpfr_mul(ti, rot_re, zi, MPFR_RNDN);
            mpfr_mul(t2, rot_im, zr, MPFR_RNDN);
            mpfr_add(ti, ti, t2, MPFR_RNDN);
            mpfr_add(zr, wr, tr, MPFR_RNDN);
            mpfr_add(zi, wi, ti, MPFR_RNDN);
            mpfr_clear(wr);
            mpfr_clear(wi);

            mpfr_hypot(absz, zr, zi, MPFR_RNDN);
            char buf[64];
            mpfr_snprintf(buf, sizeof buf, "%.10Rg", absz);
            *out << re_s << "," << im_s << "," << step << "," << buf << "\n";
        }
    }
    for (auto* p : {&rot_re, &rot_im, &zr, &zi, &tr, &ti, &t2, &absz}) {
        mpfr_clear(*p);
    }
    std::cerr << "note: orbit output is illustrative only; it carries no rigorous claim "
                 "about the dynamics\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    if (const char* env = std::getenv("IRRAT_BIT_BUDGET")) {
        try {
            set_bit_budget(std::stoul(env));
        } catch (const std::exception&) {
            std::cerr << "invalid IRRAT_BIT_BUDGET value\n";
            return 2;
        }
    }

    CLI::App app{"Exact-arithmetic series classifier and enclosure engine"};
    app.require_subcommand(1);

    SpecFlags flags;
    auto add_spec_flags = [&](CLI::App* cmd) {
        cmd->add_option("--numer", flags.numer, "numerator expression a_n");
        cmd->add_option("--denom", flags.denom, "denominator expression b_n");
        cmd->add_option("--numer2", flags.numer2, "second summand numerator (pairwise)");
        cmd->add_option("--denom2", flags.denom2, "second summand denominator (pairwise)");
        cmd->add_option("--sign", flags.sign, "all-positive|alternating|general");
        cmd->add_flag("--first-negative", flags.first_negative,
                      "alternating: first term negative");
        cmd->add_option("--start", flags.start, "first index n");
        cmd->add_option("--builtin", flags.builtin_name, "built-in series name");
        cmd->add_option("--spec-file", flags.spec_file, "flat key=value spec file");
        cmd->add_option("--param", flags.params, "builtin parameter key=value");
    };

    long prefix = 12;
    std::string epsilon_s, growth_s;
    long degree = 0;
    bool use_lcm = false;
    int digits = 0;
    std::string format = "text";

    CLI::App* classify = app.add_subcommand("classify", "run criteria and print a certificate");
    add_spec_flags(classify);
    classify->add_option("--prefix", prefix, "prefix length N to check");
    classify->add_option("--epsilon", epsilon_s, "approximation exponent excess (rational)");
    classify->add_option("--growth", growth_s, "growth function f(b) for witness checks");
    classify->add_option("--degree", degree, "polynomial degree d for the rotation check");
    classify->add_flag("--lcm", use_lcm, "use the lcm-based criterion");
    classify->add_option("--digits", digits, "also print a decimal enclosure");
    classify->add_option("--format", format, "text|json");

    long terms = 0;
    CLI::App* eval_cmd = app.add_subcommand("eval", "print term table and partial sums");
    add_spec_flags(eval_cmd);
    eval_cmd->add_option("--terms", terms, "number of terms to tabulate");
    eval_cmd->add_option("--digits", digits, "also print a decimal enclosure");
    eval_cmd->add_option("--format", format, "text|json");

    long demo_degree = 2, demo_iters = 100, demo_prec = 1024;
    std::string demo_out = "-";
    std::vector<std::string> demo_seeds;
    bool theta_zero = false;
    CLI::App* demo = app.add_subcommand("demo-cremer", "iterate z^d + e^{2 pi i theta} z");
    demo->add_option("--degree", demo_degree, "polynomial degree d >= 2");
    demo->add_option("--iters", demo_iters, "iteration count M");
    demo->add_option("--precision", demo_prec, "working precision in bits");
    demo->add_option("--out", demo_out, "output CSV path ('-' for stdout)");
    demo->add_option("--seed", demo_seeds, "seed 're,im' (repeatable)");
    demo->add_flag("--theta-zero", theta_zero, "debug: use theta = 0");

    CLI::App* list = app.add_subcommand("list", "list built-in series");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (list->parsed()) {
            std::cout << describe_builtins();
            return 0;
        }
        if (demo->parsed()) {
            return run_demo_cremer(demo_degree, demo_iters, demo_prec, demo_out, demo_seeds,
                                   theta_zero);
        }

        ResolvedInput in = resolve(flags);
        std::optional<int> digits_opt;
        if (digits > 0) digits_opt = digits;

        if (eval_cmd->parsed()) {
            if (eval_cmd->count("--terms") == 0 && !digits_opt) {
                throw InvalidParam("eval needs --terms N or --digits K");
            }
            if (eval_cmd->count("--terms") == 0) terms = in.spec.start_index - 1;
            return run_eval(in, terms, digits_opt, format);
        }

        // classify
        bool prefix_given = classify->count("--prefix") > 0;
        if (!prefix_given && in.entry) prefix = in.entry->default_prefix;

        CriteriaOptions opts;
        Certificate cert;
        std::optional<SeriesSpec> combined;
        if (!epsilon_s.empty()) {
            Rat eps;
            if (epsilon_s.find('/') != std::string::npos) {
                auto slash = epsilon_s.find('/');
                eps = Rat(Int(epsilon_s.substr(0, slash)), Int(epsilon_s.substr(slash + 1)));
            } else {
                eps = Rat(Int(epsilon_s));
            }
            eps.canonicalize();
            cert = check_roth_transcendence(in.spec, eps, prefix, opts);
        } else if (degree > 0) {
            cert = check_cremer_condition(in.spec, degree, prefix, opts);
        } else if (!growth_s.empty()) {
            GrowthFn f{parse_sequence_expr(growth_s), growth_s};
            cert = check_growth_approx(in.spec, f, prefix, opts).certificate;
        } else if (use_lcm) {
            cert = check_lcm_criterion(in.spec, prefix, opts);
        } else if (in.spec2) {
            PairResult pr = check_sum_pair(in.spec, *in.spec2, prefix, opts);
            cert = std::move(pr.certificate);
            combined = std::move(pr.combined);
        } else if (in.entry) {
            cert = classify_entry(*in.entry, prefix, opts);
        } else {
            cert = classify_irrational(in.spec, prefix, opts);
        }

        Report rep = make_report(in, prefix, std::move(cert), digits_opt, combined);
        return emit(rep, format);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const UnknownName& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const InvalidParam& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
