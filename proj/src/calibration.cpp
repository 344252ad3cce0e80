#include "seucal/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace seucal {

namespace {

bool at_least(double lhs, double rhs) {
    return lhs >= rhs - kStakeSlack * std::max(std::abs(lhs), std::abs(rhs));
}

double safe_indifference(const Gamble& g) { return g.beta / (g.alpha + g.beta); }

// Grid step used when re-validating witness utilities.
constexpr double kValidationStep = 1e-2;

// The sampled wealth closest to 0 (the lower one on ties).
double normalization_shift(const std::vector<double>& wealths) {
    double best = wealths.front();
    for (double w : wealths) {
        if (std::abs(w) < std::abs(best)) best = w;
    }
    return best;
}

}  // namespace

bool actuarial_worsening(const Gamble& r, const Gamble& r_hat) {
    return at_least(r.alpha * r_hat.beta, r_hat.alpha * r.beta);
}

bool becomes_worse(const Gamble& r, const Gamble& r_hat) {
    return at_least(r_hat.beta, r.beta) && actuarial_worsening(r, r_hat);
}

bool remark_condition(const GeneralGamble& r, const GeneralGamble& r_hat) {
    const auto& p = r.payoffs();
    const auto& q = r_hat.payoffs();
    bool same = p.size() == q.size();
    for (auto it = p.begin(), jt = q.begin(); same && it != p.end(); ++it, ++jt) {
        const auto sign = [](double x) { return (x > 0.0) - (x < 0.0); };
        same = it->first == jt->first && sign(it->second) == sign(jt->second);
    }
    if (!same) {
        throw Error(ErrorCode::PartitionMismatch,
                    "gambles must share states and gain/loss/zero partition");
    }
    const auto gains = r.gain_states();
    const auto losses = r.loss_states();
    for (double s : losses) {
        const double beta = -r.payoff(s);
        const double beta_hat = -r_hat.payoff(s);
        if (!at_least(beta_hat, beta)) return false;
        for (double g : gains) {
            if (!at_least(r.payoff(g) * beta_hat, r_hat.payoff(g) * beta)) return false;
        }
    }
    return true;
}

WitnessCertificate make_certificate(const StateUtility& su, Belief mu, WitnessKind kind,
                                    const Gamble& r, const Gamble& r_hat,
                                    const std::vector<double>& wealths,
                                    const std::vector<double>& flips, double shift,
                                    double tolerance) {
    WitnessCertificate cert;
    cert.utility = su;
    cert.belief = mu;
    cert.kind = kind;
    cert.r = r;
    cert.r_hat = r_hat;
    cert.shift = shift;
    cert.tolerance = tolerance;
    cert.verified.reserve(wealths.size());
    for (double w : wealths) cert.verified.push_back({w, belief_margin(su, mu, w, r)});
    for (double f : flips) {
        cert.flips.push_back({f, -safe_margin(su, mu, f, r_hat).value(),
                              -belief_margin(su, mu, f, r_hat)});
    }
    return cert;
}

CertificateCheck check_certificate(const WitnessCertificate& cert) {
    CertificateCheck out;
    const double tol = cert.tolerance;
    out.min_safe_margin = std::numeric_limits<double>::infinity();
    out.min_flip_margin = std::numeric_limits<double>::infinity();
    for (const auto& v : cert.verified) {
        if (!prefers_safe(cert.utility, cert.belief, v.wealth, cert.r, false, tol)) {
            out.weak_everywhere = false;
        }
        const double m = belief_margin(cert.utility, cert.belief, v.wealth, cert.r);
        if (!(m > 0.0)) out.positive_belief_margin = false;
        out.min_safe_margin = std::min(out.min_safe_margin, m);
    }
    if (cert.flips.empty()) out.strict_flip = false;
    for (const auto& f : cert.flips) {
        const Scaled gain = -safe_margin(cert.utility, cert.belief, f.wealth, cert.r_hat);
        if (compare(gain, Scaled(10.0 * tol)) <= 0) out.strict_flip = false;
        out.min_flip_margin = std::min(out.min_flip_margin, gain.value());
    }
    out.utility_valid = validate(cert.utility.u0, kValidationStep, tol).passed() &&
                        validate(cert.utility.u1, kValidationStep, tol).passed();
    return out;
}

std::vector<double> witness_k_ladder(double k_max, const Gamble& r_hat) {
    std::vector<double> ladder;
    for (double k = 1.0; k <= k_max; k *= 2.0) {
        if (theorem_witness_is_concave(k, r_hat)) ladder.push_back(k);
    }
    return ladder;
}

WitnessResult find_witness(const Scenario& scenario) {
    const Scenario sc = validate_scenario(scenario);
    const Gamble& r = sc.r;
    const Gamble& r_hat = sc.r_hat;
    if (becomes_worse(r, r_hat)) return MustRemainOptimal{};

    const auto wealths = sc.wealth.sample();
    const double shift = normalization_shift(wealths);
    const double mu_hat = safe_indifference(r_hat);
    const double gap = 10.0 * sc.tolerance;

    if (!actuarial_worsening(r, r_hat)) {
        // A risk-neutral DM with a belief strictly between the two
        // indifference beliefs takes r_hat and rejects r at every wealth.
        const double mu = 0.5 * (mu_hat + safe_indifference(r));
        auto cert = make_certificate(StateUtility::independent(PiecewiseUtility::identity()),
                                     Belief(mu), RiskNeutralWitness{}, r, r_hat, wealths,
                                     {shift}, shift, sc.tolerance);
        if (check_certificate(cert).ok()) return cert;
        std::ostringstream msg;
        msg << "risk-neutral belief gap " << safe_indifference(r) - mu_hat
            << " is below the strictness margin";
        throw Error(ErrorCode::SearchExhausted, msg.str());
    }

    std::vector<double> normalized;
    normalized.reserve(wealths.size());
    for (double w : wealths) normalized.push_back(w - shift);

    double best = -std::numeric_limits<double>::infinity();
    double best_k = 0.0;
    for (double k : witness_k_ladder(sc.k_max, r_hat)) {
        double lowest = std::numeric_limits<double>::infinity();
        for (double w : normalized) {
            lowest = std::min(lowest,
                              closed_form_belief(classify_region(w, r, r_hat), w, k, r, r_hat));
        }
        if (lowest - mu_hat > best) {
            best = lowest - mu_hat;
            best_k = k;
        }
        if (!(lowest > mu_hat + gap)) continue;
        const auto u = theorem_witness(k, r_hat).translated(shift);
        auto cert = make_certificate(StateUtility::independent(u),
                                     Belief(0.5 * (mu_hat + lowest)), LargeKWitness{k}, r,
                                     r_hat, wealths, {shift}, shift, sc.tolerance);
        if (check_certificate(cert).ok()) return cert;
    }
    std::ostringstream msg;
    msg << "no k <= " << sc.k_max << " separates the indifference beliefs; best margin "
        << best << " at k=" << best_k;
    throw Error(ErrorCode::SearchExhausted, msg.str());
}

double interval_r_belief(double iota, double w, double w_lo, const Gamble& r,
                         const Gamble& r_hat) {
    const double kink = w_lo - r_hat.beta;
    const double v = iota * w + (1.0 - iota) * kink - (w - r.beta);
    return v / (v + iota * r.alpha);
}

namespace {

void require_interval_preconditions(const Gamble& r, const Gamble& r_hat, double w_lo,
                                    double w_hi) {
    validate_gamble(r);
    validate_gamble(r_hat);
    if (becomes_worse(r, r_hat)) {
        throw Error(ErrorCode::PreconditionViolated,
                    "r_hat is worse than r; no interval witness exists");
    }
    if (!(w_lo <= w_hi)) {
        throw Error(ErrorCode::InvalidWealthSet, "interval witness needs w_lo <= w_hi");
    }
}

void require_narrow(const Gamble& r, const Gamble& r_hat, double w_lo, double w_hi) {
    if (!(w_hi - w_lo < r.beta - r_hat.beta)) {
        std::ostringstream msg;
        msg << "interval width " << w_hi - w_lo << " must be below beta - beta_hat = "
            << r.beta - r_hat.beta;
        throw Error(ErrorCode::IntervalTooWide, msg.str());
    }
}

std::optional<WitnessCertificate> try_iota(double iota, const Gamble& r, const Gamble& r_hat,
                                           double w_lo, const std::vector<double>& grid,
                                           double tolerance) {
    const double mu_hat = safe_indifference(r_hat);
    double lowest = std::numeric_limits<double>::infinity();
    for (double w : grid) lowest = std::min(lowest, interval_r_belief(iota, w, w_lo, r, r_hat));
    if (!(lowest > mu_hat + 10.0 * tolerance)) return std::nullopt;
    auto cert = make_certificate(StateUtility::independent(proposition_witness(iota, w_lo, r_hat)),
                                 Belief(0.5 * (mu_hat + lowest)),
                                 IntervalWitness{iota, grid.front(), grid.back()}, r, r_hat, grid,
                                 grid, 0.0, tolerance);
    if (!check_certificate(cert).ok()) return std::nullopt;
    return cert;
}

}  // namespace

WitnessCertificate interval_witness(const Gamble& r, const Gamble& r_hat, double w_lo,
                                    double w_hi, double step, double tolerance) {
    require_interval_preconditions(r, r_hat, w_lo, w_hi);
    const auto grid = WealthSet::interval(w_lo, w_hi, step).sample();

    if (!actuarial_worsening(r, r_hat)) {
        const double mu = 0.5 * (safe_indifference(r_hat) + safe_indifference(r));
        auto cert = make_certificate(StateUtility::independent(PiecewiseUtility::identity()),
                                     Belief(mu), RiskNeutralWitness{}, r, r_hat, grid, grid, 0.0,
                                     tolerance);
        if (check_certificate(cert).ok()) return cert;
        throw Error(ErrorCode::SearchExhausted,
                    "risk-neutral belief gap is below the strictness margin");
    }

    require_narrow(r, r_hat, w_lo, w_hi);
    double iota = 1.0;
    for (int halvings = 0; halvings <= 60; ++halvings, iota *= 0.5) {
        if (auto cert = try_iota(iota, r, r_hat, w_lo, grid, tolerance)) return *cert;
    }
    throw Error(ErrorCode::SearchExhausted, "no iota >= 2^-60 certifies the interval");
}

WitnessCertificate interval_witness_at(double iota, const Gamble& r, const Gamble& r_hat,
                                       double w_lo, double w_hi, double step, double tolerance) {
    require_interval_preconditions(r, r_hat, w_lo, w_hi);
    require_narrow(r, r_hat, w_lo, w_hi);
    const auto grid = WealthSet::interval(w_lo, w_hi, step).sample();
    if (auto cert = try_iota(iota, r, r_hat, w_lo, grid, tolerance)) return *cert;
    std::ostringstream msg;
    msg << "iota=" << iota << " does not separate the indifference beliefs on the interval";
    throw Error(ErrorCode::SearchExhausted, msg.str());
}

double SufficiencyChain::worst_increase() const {
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < values.size(); ++i) {
        worst = std::max(worst, values[i + 1] - values[i]);
    }
    return worst;
}

SufficiencyChain sufficiency_chain_check(const StateUtility& su, const Gamble& r,
                                         const Gamble& r_hat, double w) {
    validate_gamble(r);
    validate_gamble(r_hat);
    if (!becomes_worse(r, r_hat)) {
        throw Error(ErrorCode::PreconditionViolated,
                    "sufficiency chain needs beta_hat >= beta and actuarial worsening");
    }
    SufficiencyChain chain;
    if (at_least(r.alpha, r_hat.alpha)) {
        chain.dominance = true;
        chain.values = {indifference_belief(su, w, r_hat), indifference_belief(su, w, r)};
        return chain;
    }
    const Scaled loss_hat = increment(su.u0, w - r_hat.beta, w);
    const Scaled loss = increment(su.u0, w - r.beta, w);
    const Scaled gain_hat = increment(su.u1, w, w + r_hat.alpha);
    const Scaled gain = increment(su.u1, w, w + r.alpha);
    auto share = [](const Scaled& num, const Scaled& other) { return ratio(num, num + other); };
    chain.values = {
        share(loss_hat, gain_hat),
        share(loss, (r.beta / r_hat.beta) * gain_hat),
        share(loss, (r.alpha / r_hat.alpha) * gain_hat),
        share(loss, gain),
    };
    return chain;
}

}  // namespace seucal
