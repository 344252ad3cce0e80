#include "seucal/suites.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <sstream>

#include "seucal/calibration.hpp"
#include "seucal/oracle.hpp"
#include "seucal/preference.hpp"

namespace seucal::suites {

namespace {

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

class Lines {
public:
    template <class T>
    Lines& kv(const std::string& key, const T& value) {
        out_ << (first_ ? "" : " ") << key << '=';
        if constexpr (std::is_floating_point_v<T>) {
            out_ << num(value);
        } else {
            out_ << value;
        }
        first_ = false;
        return *this;
    }
    Lines& end() {
        out_ << '\n';
        first_ = true;
        return *this;
    }
    std::string str() const { return out_.str(); }

private:
    std::ostringstream out_;
    bool first_ = true;
};

double rel_err(double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

double tenths(std::int64_t t) { return static_cast<double>(t) / 10.0; }

}  // namespace

PiecewiseUtility random_concave_utility(Rng& rng, double centre) {
    const double pick = rng.unit();
    if (pick < 0.15) return PiecewiseUtility::identity();
    if (pick < 0.5) {
        const Gamble kinks{rng.uniform(0.1, 5.0), rng.uniform(0.1, 5.0)};
        double k = std::exp2(static_cast<double>(rng.integer(0, 6)));
        if (!theorem_witness_is_concave(k, kinks)) k = 1.0;
        return theorem_witness(k, kinks).translated(centre + rng.uniform(-5.0, 5.0));
    }
    const auto pieces = static_cast<std::size_t>(rng.integer(2, 7));
    std::vector<double> bps;
    while (bps.size() + 1 < pieces) {
        const double b = centre + rng.uniform(-15.0, 15.0);
        if (std::none_of(bps.begin(), bps.end(), [&](double x) { return std::abs(x - b) < 1e-6; })) {
            bps.push_back(b);
        }
    }
    std::sort(bps.begin(), bps.end());
    double slope = std::exp(rng.uniform(-2.0, 2.0));
    double anchor_value = rng.uniform(-5.0, 5.0);
    double anchor = bps.empty() ? 0.0 : bps.front();
    std::vector<Segment> segs;
    for (std::size_t i = 0; i < pieces; ++i) {
        if (i > 0) {
            anchor_value += slope * (bps[i - 1] - anchor);
            anchor = bps[i - 1];
            if (!rng.chance(0.2)) slope *= rng.uniform(0.05, 1.0);
        }
        segs.push_back(LinearSegment{slope, anchor_value - slope * anchor});
    }
    return PiecewiseUtility(std::move(bps), std::move(segs));
}

SuiteReport closed_form_agreement() {
    struct Set {
        const char* name;
        Gamble r;
        Gamble r_hat;
    };
    const Set sets[] = {
        {"primary", {2.0, 2.0}, {1.0, 1.0}},
        {"coverage_wide", {3.0, 3.0}, {1.0, 1.0}},       // Case2, Case4 with positive width
        {"coverage_short_gain", {0.5, 3.0}, {1.0, 1.0}}, // Case6
        {"coverage_case5", {1.0, 1.5}, {1.0, 1.0}},      // Case5 on [0.5, 1]
        {"coverage_interior", {0.5, 0.5}, {1.0, 1.0}},   // all outcomes linear
    };
    const auto grid = WealthSet::interval(-6.0, 6.0, 0.01).sample();
    constexpr double kTol = 1e-9;

    SuiteReport rep{"closed_form_agreement", true, {}};
    Lines lines;
    std::map<RegionLabel, std::size_t> union_counts;
    for (const auto& set : sets) {
        std::map<RegionLabel, std::size_t> counts;
        double worst = 0.0;
        std::size_t checks = 0;
        std::size_t failures = 0;
        const auto ladder = witness_k_ladder(256.0, set.r_hat);
        for (double k : ladder) {
            const auto su = StateUtility::independent(theorem_witness(k, set.r_hat));
            for (double w : grid) {
                const double generic = indifference_belief(su, w, set.r);
                for (auto label : applicable_regions(w, set.r, set.r_hat)) {
                    const double cf = closed_form_belief(label, w, k, set.r, set.r_hat);
                    const double e = rel_err(cf, generic);
                    worst = std::max(worst, e);
                    ++checks;
                    ++counts[label];
                    if (!(e <= kTol)) ++failures;
                }
            }
        }
        lines.kv("set", set.name)
            .kv("k_values", ladder.size())
            .kv("checks", checks)
            .kv("failures", failures)
            .kv("max_rel_err", worst)
            .end();
        std::string labels;
        for (auto label : kAllRegions) {
            labels += (labels.empty() ? "" : ",") + std::string(to_string(label)) + ":" +
                      std::to_string(counts[label]);
            union_counts[label] += counts[label];
        }
        lines.kv("set", set.name).kv("labels", labels).end();
        if (failures > 0) rep.passed = false;
    }
    std::string missing;
    for (auto label : kAllRegions) {
        if (union_counts[label] == 0) missing += std::string(missing.empty() ? "" : ",") +
                                                 std::string(to_string(label));
    }
    lines.kv("coverage", missing.empty() ? std::string("all") : "missing:" + missing).end();
    if (!missing.empty()) rep.passed = false;
    rep.text = lines.str();
    return rep;
}

SuiteReport limit_reproduction() {
    const Gamble r{2.0, 2.0};
    const Gamble r_hat{1.0, 1.0};
    const auto grid = WealthSet::interval(-6.0, 6.0, 0.01).sample();
    constexpr double k_top = 256.0;

    SuiteReport rep{"limit_reproduction", true, {}};
    Lines lines;

    double min_non5 = std::numeric_limits<double>::infinity();
    double worst_case5 = 0.0;
    std::size_t case5_points = 0;
    std::size_t non5_points = 0;
    for (double w : grid) {
        for (auto label : applicable_regions(w, r, r_hat)) {
            const double b = closed_form_belief(label, w, k_top, r, r_hat);
            if (label == RegionLabel::Case5) {
                ++case5_points;
                worst_case5 = std::max(worst_case5, std::abs(b - limit_belief(label, w, r, r_hat)));
            } else {
                ++non5_points;
                min_non5 = std::min(min_non5, b);
            }
        }
    }
    const bool limits_ok = min_non5 >= 0.999 && worst_case5 <= 1e-3;
    lines.kv("k", k_top)
        .kv("non_case5_points", non5_points)
        .kv("min_belief", min_non5)
        .kv("case5_points", case5_points)
        .kv("case5_max_dev", worst_case5)
        .kv("ok", limits_ok)
        .end();

    const auto ladder = witness_k_ladder(k_top, r_hat);
    bool monotone = true;
    std::string ladder_text;
    for (std::size_t i = 0; i < ladder.size(); ++i) {
        const double v = extreme_belief(ladder[i], r);
        ladder_text += (i ? "," : "") + num(v);
        if (i > 0 && v < extreme_belief(ladder[i - 1], r)) monotone = false;
    }
    lines.kv("extreme_belief_ladder", ladder_text).kv("nondecreasing", monotone).end();

    std::size_t case1_checked = 0;
    std::size_t case1_fail = 0;
    for (double k : ladder) {
        if (k < 8.0) continue;
        const double bound = 1.0 - std::exp(-r.beta * k);
        for (double w : grid) {
            if (!region_applies(RegionLabel::Case1, w, r, r_hat)) continue;
            ++case1_checked;
            if (closed_form_belief(RegionLabel::Case1, w, k, r, r_hat) < bound) ++case1_fail;
        }
    }
    lines.kv("case1_bound_checked", case1_checked).kv("case1_bound_failures", case1_fail).end();

    rep.passed = limits_ok && monotone && case1_fail == 0 && case1_checked > 0;
    rep.text = lines.str();
    return rep;
}

SuiteReport sufficiency_property(std::uint64_t seed, int instances) {
    Rng rng(seed);
    SuiteReport rep{"sufficiency_property", true, {}};
    Lines lines;
    std::size_t dominance = 0;
    std::size_t violations = 0;
    double worst = -std::numeric_limits<double>::infinity();
    for (int n = 0; n < instances; ++n) {
        Gamble r;
        Gamble r_hat;
        do {
            r = {rng.uniform(0.1, 10.0), rng.uniform(0.1, 10.0)};
            const double beta_hat = rng.chance(0.2) ? r.beta : r.beta * (1.0 + 2.0 * rng.unit());
            const double bound = r.alpha * beta_hat / r.beta;
            r_hat = {rng.chance(0.2) ? bound : bound * rng.uniform(0.05, 1.0), beta_hat};
        } while (!becomes_worse(r, r_hat));
        const double w = rng.uniform(-5.0, 5.0);
        const StateUtility su{random_concave_utility(rng, w), random_concave_utility(rng, w)};
        const auto chain = sufficiency_chain_check(su, r, r_hat, w);
        if (chain.dominance) ++dominance;
        const double inc = chain.worst_increase();
        worst = std::max(worst, inc);
        if (inc > 1e-10) ++violations;
    }
    lines.kv("seed", seed)
        .kv("instances", instances)
        .kv("dominance_branch", dominance)
        .kv("violations", violations)
        .kv("worst_increase", worst)
        .end();
    rep.passed = violations == 0;
    rep.text = lines.str();
    return rep;
}

SuiteReport necessity_property(std::uint64_t seed, int instances) {
    Rng rng(seed);
    SuiteReport rep{"necessity_property", true, {}};
    Lines lines;
    std::size_t risk_neutral = 0;
    std::size_t large_k = 0;
    std::size_t failures = 0;
    double max_k = 0.0;
    double min_safe = std::numeric_limits<double>::infinity();
    double min_flip = std::numeric_limits<double>::infinity();
    std::string first_failures;
    for (int n = 0; n < instances; ++n) {
        Scenario sc;
        do {
            sc.r = {rng.uniform(0.1, 10.0), rng.uniform(0.1, 10.0)};
            sc.r_hat = {rng.uniform(0.1, 10.0), rng.uniform(0.1, 10.0)};
        } while (becomes_worse(sc.r, sc.r_hat));
        sc.wealth = WealthSet::interval(-20.0, 20.0, 0.05);
        bool ok = false;
        try {
            const auto result = find_witness(sc);
            if (const auto* cert = std::get_if<WitnessCertificate>(&result)) {
                const auto check = check_certificate(*cert);
                ok = check.ok() && cert->flips.size() == 1 &&
                     cert->verified.size() == sc.wealth.sample().size();
                min_safe = std::min(min_safe, check.min_safe_margin);
                min_flip = std::min(min_flip, check.min_flip_margin);
                if (const auto* lk = std::get_if<LargeKWitness>(&cert->kind)) {
                    ++large_k;
                    max_k = std::max(max_k, lk->k);
                } else {
                    ++risk_neutral;
                }
            }
        } catch (const Error& e) {
            if (failures < 5) first_failures += " #" + std::to_string(n) + ":" + e.what();
        }
        if (!ok) ++failures;
    }
    lines.kv("seed", seed)
        .kv("instances", instances)
        .kv("risk_neutral", risk_neutral)
        .kv("large_k", large_k)
        .kv("max_k", max_k)
        .kv("failures", failures)
        .kv("min_safe_margin", min_safe)
        .kv("min_flip_margin", min_flip)
        .end();
    if (!first_failures.empty()) lines.kv("first_failures", first_failures).end();
    rep.passed = failures == 0;
    rep.text = lines.str();
    return rep;
}

SuiteReport oracle_equivalence(std::uint64_t seed, int instances) {
    Rng rng(seed);
    SuiteReport rep{"oracle_equivalence", true, {}};
    Lines lines;
    std::size_t predicate_true = 0;
    std::size_t disagreements = 0;
    std::size_t witnesses = 0;
    std::size_t lp_feasible = 0;
    std::size_t in_box = 0;
    std::size_t lp_solves = 0;
    std::size_t rejected = 0;
    std::string first_disagreements;
    std::string first_infeasible;
    for (int n = 0; n < instances; ++n) {
        Scenario sc;
        const auto at = rng.integer(2, 50);
        const auto bt = rng.integer(2, 50);
        sc.r = {tenths(at), tenths(bt)};
        if (rng.chance(0.35)) {
            const auto bht = rng.integer(bt, 50);
            const auto cap = std::max<std::int64_t>(2, (at * bht) / bt);
            sc.r_hat = {tenths(rng.integer(2, cap)), tenths(bht)};
        } else {
            sc.r_hat = {tenths(rng.integer(2, 50)), tenths(rng.integer(2, 50))};
        }
        std::vector<double> pool{-2.0, -1.5, -1.0, -0.5, 0.0, 0.5, 1.0, 1.5, 2.0};
        const auto count = rng.integer(1, 3);
        WealthSet::List ws;
        for (std::int64_t i = 0; i < count; ++i) {
            const auto idx = static_cast<std::size_t>(rng.integer(0, static_cast<std::int64_t>(pool.size()) - 1));
            ws.push_back(pool[idx]);
            pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(idx));
        }
        sc.wealth = WealthSet::list(ws);

        const bool predicate = becomes_worse(sc.r, sc.r_hat);
        const auto oracle = must_remain_optimal_oracle(sc);
        lp_solves += oracle.lp_solves;
        rejected += oracle.rejected_points;
        if (predicate) ++predicate_true;
        if (predicate != oracle.must_remain_optimal) {
            ++disagreements;
            if (disagreements <= 5) {
                first_disagreements += " #" + std::to_string(n) + ":r=(" + num(sc.r.alpha) + "," +
                                       num(sc.r.beta) + "),r_hat=(" + num(sc.r_hat.alpha) + "," +
                                       num(sc.r_hat.beta) + ")";
            }
        }
        if (!predicate) {
            ++witnesses;
            const auto result = find_witness(sc);
            const auto& cert = std::get<WitnessCertificate>(result);
            const auto point = check_lp_point(sc, cert.belief, cert.shift, cert.utility.u0);
            if (point.structurally_feasible() && point.margin > 10.0 * sc.tolerance) {
                ++lp_feasible;
            } else if (witnesses - lp_feasible <= 5) {
                first_infeasible += " #" + std::to_string(n) + ":inc=" +
                                    std::to_string(point.increasing) + ",concave=" +
                                    std::to_string(point.concave) + ",weak=" +
                                    std::to_string(point.weak_preference) + ",margin=" +
                                    num(point.margin);
            }
            if (point.within_slope_box) ++in_box;
        }
    }
    lines.kv("seed", seed)
        .kv("instances", instances)
        .kv("predicate_true", predicate_true)
        .kv("disagreements", disagreements)
        .kv("lp_solves", lp_solves)
        .kv("rejected_solver_points", rejected)
        .end();
    lines.kv("witnesses", witnesses)
        .kv("certificates_lp_feasible", lp_feasible)
        .kv("certificates_within_slope_box", in_box)
        .end();
    if (!first_disagreements.empty()) lines.kv("first_disagreements", first_disagreements).end();
    if (!first_infeasible.empty()) lines.kv("first_lp_infeasible", first_infeasible).end();
    rep.passed = disagreements == 0 && lp_feasible == witnesses;
    rep.text = lines.str();
    return rep;
}

SuiteReport proposition_reproduction() {
    const Gamble r{2.0, 2.0};
    const Gamble r_hat{1.0, 1.0};
    SuiteReport rep{"proposition_reproduction", true, {}};
    Lines lines;

    const double at_zero = interval_r_belief(0.1, 0.0, 0.0, r, r_hat);
    const double err = std::abs(at_zero - 1.1 / 1.3);
    lines.kv("iota", 0.1).kv("belief_at_0", at_zero).kv("abs_err", err).end();

    bool cert_ok = false;
    double mu = 0.0;
    std::size_t points = 0;
    try {
        const auto cert = interval_witness_at(0.1, r, r_hat, 0.0, 0.5, 0.01);
        const auto check = check_certificate(cert);
        cert_ok = check.ok() && cert.flips.size() == cert.verified.size();
        for (const auto& v : cert.verified) {
            cert_ok = cert_ok && prefers_safe(cert.utility, cert.belief, v.wealth, r, false);
        }
        mu = cert.belief.mu();
        points = cert.verified.size();
    } catch (const Error&) {
        cert_ok = false;
    }
    lines.kv("certificate_ok", cert_ok).kv("belief", mu).kv("grid_points", points).end();

    const double iotas[] = {1.0, 0.5, 0.1, 0.01};
    bool decreasing = true;
    for (double w : WealthSet::interval(0.0, 0.5, 0.01).sample()) {
        for (std::size_t i = 1; i < std::size(iotas); ++i) {
            if (!(interval_r_belief(iotas[i], w, 0.0, r, r_hat) >
                  interval_r_belief(iotas[i - 1], w, 0.0, r, r_hat))) {
                decreasing = false;
            }
        }
    }
    std::string at0;
    for (double i : iotas) at0 += (at0.empty() ? "" : ",") + num(interval_r_belief(i, 0.0, 0.0, r, r_hat));
    lines.kv("beliefs_at_0_for_iota_1_0.5_0.1_0.01", at0).kv("strictly_decreasing_in_iota", decreasing).end();

    bool search_ok = false;
    try {
        search_ok = check_certificate(interval_witness(r, r_hat, 0.0, 0.5, 0.01)).ok();
    } catch (const Error&) {
        search_ok = false;
    }
    lines.kv("search_certificate_ok", search_ok).end();

    rep.passed = err <= 1e-12 && cert_ok && decreasing && search_ok;
    rep.text = lines.str();
    return rep;
}

namespace {

// Integer (tenths) payoffs; checks the pairwise conditions directly.
bool nested_loop_condition(const std::vector<std::int64_t>& pay,
                           const std::vector<std::int64_t>& pay_hat) {
    for (std::size_t s = 0; s < pay.size(); ++s) {
        if (pay[s] >= 0) continue;
        const std::int64_t beta = -pay[s];
        const std::int64_t beta_hat = -pay_hat[s];
        if (beta_hat < beta) return false;
        for (std::size_t g = 0; g < pay.size(); ++g) {
            if (pay[g] <= 0) continue;
            if (pay[g] * beta_hat < pay_hat[g] * beta) return false;
        }
    }
    return true;
}

GeneralGamble to_general(const std::vector<std::int64_t>& pay) {
    std::map<double, double> m;
    for (std::size_t i = 0; i < pay.size(); ++i) m[static_cast<double>(i)] = tenths(pay[i]);
    return GeneralGamble(std::move(m));
}

}  // namespace

SuiteReport remark_specialization(std::uint64_t seed, int binary, int multi) {
    Rng rng(seed);
    SuiteReport rep{"remark_specialization", true, {}};
    Lines lines;

    std::size_t binary_mismatch = 0;
    std::size_t binary_true = 0;
    for (int n = 0; n < binary; ++n) {
        const auto at = rng.integer(1, 50);
        const auto bt = rng.integer(1, 50);
        std::int64_t aht = rng.integer(1, 50);
        std::int64_t bht = rng.integer(1, 50);
        if (rng.chance(0.5)) {
            bht = rng.integer(bt, 60);
            aht = std::max<std::int64_t>(1, (at * bht) / bt - rng.integer(0, 1));
        }
        const Gamble r{tenths(at), tenths(bt)};
        const Gamble r_hat{tenths(aht), tenths(bht)};
        const bool remark =
            remark_condition(GeneralGamble::from_binary(r), GeneralGamble::from_binary(r_hat));
        if (remark) ++binary_true;
        if (remark != becomes_worse(r, r_hat)) ++binary_mismatch;
    }
    lines.kv("binary_pairs", binary).kv("binary_true", binary_true).kv("binary_mismatches", binary_mismatch).end();

    std::size_t multi_mismatch = 0;
    std::size_t multi_true = 0;
    for (int n = 0; n < multi; ++n) {
        const auto states = static_cast<std::size_t>(rng.integer(3, 6));
        std::vector<std::int64_t> pay(states);
        std::vector<std::int64_t> pay_hat(states);
        const bool build_worse = rng.chance(0.5);
        for (std::size_t s = 0; s < states; ++s) {
            const double kind = rng.unit();
            const std::int64_t mag = rng.integer(1, 50);
            if (kind < 0.1) {
                pay[s] = pay_hat[s] = 0;
            } else if (kind < 0.55) {
                pay[s] = mag;
                pay_hat[s] = build_worse ? rng.integer(1, mag + (rng.chance(0.1) ? 2 : 0))
                                         : rng.integer(1, 50);
            } else {
                pay[s] = -mag;
                pay_hat[s] = build_worse ? -rng.integer(mag, 60) : -rng.integer(1, 50);
            }
        }
        const bool expected = nested_loop_condition(pay, pay_hat);
        const bool got = remark_condition(to_general(pay), to_general(pay_hat));
        if (got) ++multi_true;
        if (expected != got) ++multi_mismatch;
    }
    lines.kv("multi_pairs", multi).kv("multi_true", multi_true).kv("multi_mismatches", multi_mismatch).end();

    rep.passed = binary_mismatch == 0 && multi_mismatch == 0;
    rep.text = lines.str();
    return rep;
}

SuiteReport determinism(std::uint64_t seed) {
    auto run_all = [&] {
        return sufficiency_property(seed, 2000).text + necessity_property(seed, 100).text +
               oracle_equivalence(seed, 40).text;
    };
    const std::string first = run_all();
    const std::string second = run_all();
    SuiteReport rep{"determinism", first == second, {}};
    Lines lines;
    lines.kv("seed", seed).kv("bytes", first.size()).kv("identical", first == second).end();
    rep.text = lines.str();
    return rep;
}

std::vector<Criterion> acceptance_criteria(std::uint64_t seed) {
    return {
        {1, "closed-form agreement", [] { return closed_form_agreement(); }},
        {2, "limit reproduction", [] { return limit_reproduction(); }},
        {3, "sufficiency property", [seed] { return sufficiency_property(seed); }},
        {4, "necessity property", [seed] { return necessity_property(seed); }},
        {5, "oracle equivalence", [seed] { return oracle_equivalence(seed); }},
        {6, "interval witness reproduction", [] { return proposition_reproduction(); }},
        {7, "finite-state specialization", [seed] { return remark_specialization(seed); }},
        {8, "determinism", [seed] { return determinism(seed); }},
    };
}

SuiteReport run_criterion(const Criterion& c) {
    try {
        return c.run();
    } catch (const Error& e) {
        return {c.name, false,
                "error=" + std::string(to_string(e.code())) + " reason=" + e.what() + "\n"};
    }
}

}  // namespace seucal::suites
