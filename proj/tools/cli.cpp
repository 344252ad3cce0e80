#include "cli.hpp"

#include <algorithm>
#include <cstdio>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "seucal/calibration.hpp"
#include "seucal/error.hpp"
#include "seucal/io.hpp"
#include "seucal/oracle.hpp"
#include "seucal/preference.hpp"
#include "seucal/suites.hpp"

namespace seucal::cli {

namespace {

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

const char* yes_no(bool b) { return b ? "true" : "false"; }

struct Shared {
    std::string scenario;
    std::string format = "text";
    std::uint64_t seed = suites::kDefaultSeed;
    std::string out;

    bool machine() const { return format == "machine"; }
};

// Ordered key/value report printed either as "key: value" lines or as one
// "key=value ..." record.
class Report {
public:
    Report& add(std::string key, std::string value) {
        fields_.emplace_back(std::move(key), std::move(value));
        return *this;
    }
    Report& add(std::string key, double value) { return add(std::move(key), num(value)); }

    std::string render(const std::string& decision, bool machine) const {
        std::ostringstream s;
        if (machine) {
            s << "decision=" << decision;
            for (const auto& [k, v] : fields_) s << ' ' << k << '=' << v;
            s << '\n';
        } else {
            s << decision << '\n';
            for (const auto& [k, v] : fields_) s << k << ": " << v << '\n';
        }
        return s.str();
    }

private:
    std::vector<std::pair<std::string, std::string>> fields_;
};

int exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::IoError:
        case ErrorCode::DegenerateUtility:
        case ErrorCode::RegionMismatch:
        case ErrorCode::SearchExhausted:
        case ErrorCode::NumericFailure:
            return kExitNumeric;
        default:
            return kExitUsage;
    }
}

std::string one_line(std::string text) {
    std::replace(text.begin(), text.end(), '\n', ' ');
    return text;
}

void emit(const std::string& text, const Shared& opts, std::ostream& out) {
    if (!opts.out.empty()) io::write_file(opts.out, text);
    out << text;
}

std::string certificate_fields(const WitnessCertificate& cert, Report& rep) {
    std::string kind;
    std::visit(
        [&](const auto& k) {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, RiskNeutralWitness>) {
                kind = "risk_neutral";
                rep.add("kind", kind);
            } else if constexpr (std::is_same_v<K, LargeKWitness>) {
                kind = "large_k";
                rep.add("kind", kind).add("k", k.k);
            } else {
                kind = "interval";
                rep.add("kind", kind).add("iota", k.iota);
            }
        },
        cert.kind);
    rep.add("belief", cert.belief.mu()).add("shift", cert.shift);
    return kind;
}

int write_certificate(const WitnessCertificate& cert, const Scenario& sc, const Shared& opts,
                      const std::string& default_path, std::ostream& out) {
    const std::string path = opts.out.empty() ? default_path : opts.out;
    io::write_file(path, io::certificate_to_json(cert, sc).dump(2) + "\n");
    Report rep;
    certificate_fields(cert, rep);
    const auto check = check_certificate(cert);
    rep.add("min_safe_margin", check.min_safe_margin)
        .add("min_flip_margin", check.min_flip_margin)
        .add("certificate", path);
    out << rep.render("WITNESS_EXISTS", opts.machine());
    return kExitDecision;
}

int cmd_check(const Shared& opts, std::ostream& out) {
    const Scenario sc = io::load_scenario(opts.scenario);
    const bool worse = becomes_worse(sc.r, sc.r_hat);
    Report rep;
    rep.add("loss_not_smaller", yes_no(sc.r_hat.beta >= sc.r.beta))
        .add("actuarial_worsening", yes_no(actuarial_worsening(sc.r, sc.r_hat)));
    emit(rep.render(worse ? "MUST_REMAIN_OPTIMAL" : "WITNESS_EXISTS", opts.machine()), opts, out);
    return kExitDecision;
}

int cmd_witness(const Shared& opts, std::ostream& out) {
    const Scenario sc = io::load_scenario(opts.scenario);
    const auto result = find_witness(sc);
    if (std::holds_alternative<MustRemainOptimal>(result)) {
        out << Report{}.render("MUST_REMAIN_OPTIMAL", opts.machine());
        return kExitDecision;
    }
    return write_certificate(std::get<WitnessCertificate>(result), sc, opts, "witness.json", out);
}

struct IntervalOptions {
    std::optional<double> w_lo;
    std::optional<double> w_hi;
    std::optional<double> step;
    std::optional<double> iota;
};

int cmd_interval_witness(const Shared& opts, const IntervalOptions& iv, std::ostream& out) {
    const Scenario sc = io::load_scenario(opts.scenario);
    const double lo = iv.w_lo.value_or(sc.wealth.min());
    const double hi = iv.w_hi.value_or(sc.wealth.max());
    double step = 0.01;
    if (const auto* i = sc.wealth.as_interval()) step = i->step;
    step = iv.step.value_or(step);
    if (becomes_worse(sc.r, sc.r_hat)) {
        out << Report{}.render("MUST_REMAIN_OPTIMAL", opts.machine());
        return kExitDecision;
    }
    const auto cert = iv.iota ? interval_witness_at(*iv.iota, sc.r, sc.r_hat, lo, hi, step,
                                                    sc.tolerance)
                              : interval_witness(sc.r, sc.r_hat, lo, hi, step, sc.tolerance);
    return write_certificate(cert, sc, opts, "interval_witness.json", out);
}

void check_rates(const std::vector<double>& ks, const Gamble& r_hat) {
    for (double k : ks) {
        if (!theorem_witness_is_concave(k, r_hat)) {
            throw Error(ErrorCode::InvalidK, "k=" + num(k) + " does not give a concave witness");
        }
    }
}

int emit_table(const std::string& table, std::size_t rows, const Shared& opts,
               std::ostream& out) {
    if (opts.out.empty()) {
        out << table;
        return kExitDecision;
    }
    io::write_file(opts.out, table);
    Report rep;
    rep.add("rows", std::to_string(rows)).add("out", opts.out);
    out << rep.render("CURVES_WRITTEN", opts.machine());
    return kExitDecision;
}

int cmd_indifference(const Shared& opts, const std::vector<double>& ks, std::ostream& out) {
    const Scenario sc = io::load_scenario(opts.scenario);
    check_rates(ks, sc.r_hat);
    const auto wealths = sc.wealth.sample();
    std::ostringstream t;
    t << "wealth,region,belief,k\n";
    std::size_t rows = 0;
    for (double k : ks) {
        const auto curve = witness_curve(wealths, k, sc.r, sc.r_hat);
        for (const auto& p : curve.points) {
            t << num(p.wealth) << ',' << to_string(classify_region(p.wealth, sc.r, sc.r_hat))
              << ',' << num(p.belief) << ',' << num(k) << '\n';
            ++rows;
        }
    }
    return emit_table(t.str(), rows, opts, out);
}

int cmd_regions(const Shared& opts, const std::vector<double>& ks, std::ostream& out) {
    const Scenario sc = io::load_scenario(opts.scenario);
    check_rates(ks, sc.r_hat);
    std::ostringstream t;
    t << "wealth,region,k,belief,limit_belief\n";
    std::size_t rows = 0;
    for (double w : sc.wealth.sample()) {
        const RegionLabel label = classify_region(w, sc.r, sc.r_hat);
        const double limit = limit_belief(label, w, sc.r, sc.r_hat);
        for (double k : ks) {
            t << num(w) << ',' << to_string(label) << ',' << num(k) << ','
              << num(closed_form_belief(label, w, k, sc.r, sc.r_hat)) << ',' << num(limit) << '\n';
            ++rows;
        }
    }
    return emit_table(t.str(), rows, opts, out);
}

int cmd_oracle(const Shared& opts, std::ostream& out) {
    const Scenario sc = io::load_scenario(opts.scenario);
    const auto res = must_remain_optimal_oracle(sc);
    Report rep;
    rep.add("lp_solves", std::to_string(res.lp_solves));
    if (res.must_remain_optimal) {
        if (res.evidence) {
            rep.add("best_mu", res.evidence->mu)
                .add("best_flip_wealth", res.evidence->flip_wealth)
                .add("best_margin", res.evidence->solution.margin);
        }
        out << rep.render("MUST_REMAIN_OPTIMAL", opts.machine());
        return kExitDecision;
    }
    const auto& ev = *res.evidence;
    rep.add("mu", ev.mu).add("flip_wealth", ev.flip_wealth).add("margin", ev.solution.margin);
    const std::string doc = io::evidence_to_json(ev, sc).dump(2) + "\n";
    if (!opts.out.empty()) {
        io::write_file(opts.out, doc);
        rep.add("evidence", opts.out);
        out << rep.render("WITNESS_EXISTS", opts.machine());
    } else {
        out << rep.render("WITNESS_EXISTS", opts.machine()) << doc;
    }
    return kExitDecision;
}

int cmd_verify(const Shared& opts, std::ostream& out) {
    std::ostringstream s;
    bool all = true;
    for (const auto& c : suites::acceptance_criteria(opts.seed)) {
        const auto rep = suites::run_criterion(c);
        all = all && rep.passed;
        const char* status = rep.passed ? "PASS" : "FAIL";
        std::istringstream lines(rep.text);
        if (opts.machine()) {
            s << "criterion=" << c.id << " suite=" << rep.name << " status=" << status << '\n';
            for (std::string l; std::getline(lines, l);) s << "criterion=" << c.id << ' ' << l << '\n';
        } else {
            s << status << " criterion " << c.id << " (" << c.name << ")\n";
            for (std::string l; std::getline(lines, l);) s << "    " << l << '\n';
        }
    }
    emit(s.str(), opts, out);
    return all ? kExitDecision : kExitViolation;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Calibration of safe-versus-gamble choices under subjective expected utility.",
                 "seucal"};
    app.require_subcommand(1, 1);
    app.footer("Example: seucal check scenario.json");

    Shared opts;
    auto shared = [&](CLI::App* sub, bool needs_scenario) {
        if (needs_scenario) {
            sub->add_option("scenario", opts.scenario, "Scenario file (JSON)")->required();
        }
        sub->add_option("--format", opts.format, "Output format")
            ->check(CLI::IsMember({"text", "machine"}))
            ->capture_default_str();
        sub->add_option("--seed", opts.seed, "Seed for the randomized suites")
            ->capture_default_str();
        sub->add_option("--out", opts.out, "Output path");
    };

    auto* check = app.add_subcommand(
        "check", "Decide whether the safe option must remain optimal (prints MUST_REMAIN_OPTIMAL "
                 "or WITNESS_EXISTS)");
    shared(check, true);
    check->footer("Example: seucal check scenario.json --format machine");

    auto* witness = app.add_subcommand(
        "witness", "Search for a utility and belief under which s beats r on W but r_hat beats s; "
                   "writes the certificate (default witness.json)");
    shared(witness, true);
    witness->footer("Example: seucal witness scenario.json --out cert.json");

    IntervalOptions iv;
    auto* interval = app.add_subcommand(
        "interval-witness",
        "Certificate on a wealth interval using a utility linear above one kink (default "
        "interval_witness.json)");
    shared(interval, true);
    interval->add_option("--w-lo", iv.w_lo, "Interval lower end (default: min of W)");
    interval->add_option("--w-hi", iv.w_hi, "Interval upper end (default: max of W)");
    interval->add_option("--step", iv.step, "Grid step (default: W step or 0.01)");
    interval->add_option("--iota", iv.iota, "Fixed upper slope instead of searching");
    interval->footer("Example: seucal interval-witness scenario.json --w-lo 0 --w-hi 0.5 --iota 0.1");

    std::vector<double> ks{1.0, 4.0, 16.0};
    auto* indiff = app.add_subcommand(
        "indifference", "Indifference beliefs of the large-k witness over W, one block per k "
                        "(columns wealth,region,belief,k)");
    shared(indiff, true);
    indiff->add_option("--k", ks, "Comma-separated witness rates")->delimiter(',')->capture_default_str();
    indiff->footer("Example: seucal indifference scenario.json --k 1,4,16 --out curves.csv");

    auto* regions = app.add_subcommand(
        "regions", "Closed-form curves by region (columns wealth,region,k,belief,limit_belief)");
    shared(regions, true);
    regions->add_option("--k", ks, "Comma-separated witness rates")->delimiter(',')->capture_default_str();
    regions->footer("Example: seucal regions scenario.json --k 1,4,16 --out regions.csv");

    auto* oracle = app.add_subcommand(
        "oracle", "Decide by LP search over piecewise-linear utilities; prints evidence on a "
                  "violation");
    shared(oracle, true);
    oracle->footer("Example: seucal oracle small.json --format machine");

    auto* verify = app.add_subcommand("verify", "Run the acceptance property suites");
    shared(verify, false);
    verify->footer("Example: seucal verify --seed 7");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return kExitDecision;
    } catch (const CLI::CallForAllHelp& e) {
        app.exit(e, out, err);
        return kExitDecision;
    } catch (const CLI::ParseError& e) {
        err << "error=usage reason=" << one_line(e.what()) << '\n';
        return kExitUsage;
    }

    try {
        if (*check) return cmd_check(opts, out);
        if (*witness) return cmd_witness(opts, out);
        if (*interval) return cmd_interval_witness(opts, iv, out);
        if (*indiff) return cmd_indifference(opts, ks, out);
        if (*regions) return cmd_regions(opts, ks, out);
        if (*oracle) return cmd_oracle(opts, out);
        return cmd_verify(opts, out);
    } catch (const Error& e) {
        err << "error=" << to_string(e.code()) << " reason=" << one_line(e.what()) << '\n';
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        err << "error=internal reason=" << one_line(e.what()) << '\n';
        return kExitNumeric;
    }
}

}  // namespace seucal::cli
