#include "seucal/gamble.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace seucal {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::NonPositiveStake: return "non_positive_stake";
        case ErrorCode::InvalidBelief: return "invalid_belief";
        case ErrorCode::InvalidWealthSet: return "invalid_wealth_set";
        case ErrorCode::InvalidScenario: return "invalid_scenario";
        case ErrorCode::ParseError: return "parse_error";
        case ErrorCode::IoError: return "io_error";
        case ErrorCode::InvalidK: return "invalid_k";
        case ErrorCode::InvalidIota: return "invalid_iota";
        case ErrorCode::InvalidUtility: return "invalid_utility";
        case ErrorCode::DegenerateUtility: return "degenerate_utility";
        case ErrorCode::RegionMismatch: return "region_mismatch";
        case ErrorCode::SearchExhausted: return "search_exhausted";
        case ErrorCode::IntervalTooWide: return "interval_too_wide";
        case ErrorCode::PreconditionViolated: return "precondition_violated";
        case ErrorCode::PartitionMismatch: return "partition_mismatch";
        case ErrorCode::NumericFailure: return "numeric_failure";
    }
    return "unknown";
}

Gamble validate_gamble(const Gamble& g) {
    // Negated comparisons so NaN fails too.
    if (!(g.alpha > 0.0) || !(g.beta > 0.0) || !std::isfinite(g.alpha) ||
        !std::isfinite(g.beta)) {
        std::ostringstream msg;
        msg << "gamble stakes must be positive and finite (alpha=" << g.alpha
            << ", beta=" << g.beta << ")";
        throw Error(ErrorCode::NonPositiveStake, msg.str());
    }
    return g;
}

Belief::Belief(double mu) : mu_(mu) {
    if (!(mu >= 0.0 && mu <= 1.0)) {
        throw Error(ErrorCode::InvalidBelief,
                    "belief must lie in [0,1], got " + std::to_string(mu));
    }
}

GeneralGamble::GeneralGamble(std::map<double, double> payoffs)
    : payoffs_(std::move(payoffs)) {
    if (payoffs_.empty()) {
        throw Error(ErrorCode::InvalidScenario, "general gamble needs at least one state");
    }
    for (const auto& [state, pay] : payoffs_) {
        if (!std::isfinite(state) || !std::isfinite(pay)) {
            throw Error(ErrorCode::InvalidScenario, "general gamble entries must be finite");
        }
    }
}

namespace {

template <class Pred>
std::vector<double> states_where(const std::map<double, double>& payoffs, Pred pred) {
    std::vector<double> out;
    for (const auto& [state, pay] : payoffs) {
        if (pred(pay)) out.push_back(state);
    }
    return out;
}

}  // namespace

std::vector<double> GeneralGamble::gain_states() const {
    return states_where(payoffs_, [](double p) { return p > 0.0; });
}

std::vector<double> GeneralGamble::loss_states() const {
    return states_where(payoffs_, [](double p) { return p < 0.0; });
}

std::vector<double> GeneralGamble::zero_states() const {
    return states_where(payoffs_, [](double p) { return p == 0.0; });
}

double GeneralGamble::payoff(double state) const {
    auto it = payoffs_.find(state);
    if (it == payoffs_.end()) {
        throw Error(ErrorCode::InvalidScenario,
                    "unknown state label " + std::to_string(state));
    }
    return it->second;
}

GeneralGamble GeneralGamble::from_binary(const Gamble& g) {
    validate_gamble(g);
    return GeneralGamble({{0.0, -g.beta}, {1.0, g.alpha}});
}

WealthSet WealthSet::list(List values) {
    if (values.empty()) {
        throw Error(ErrorCode::InvalidWealthSet, "wealth list must be nonempty");
    }
    for (double w : values) {
        if (!std::isfinite(w)) {
            throw Error(ErrorCode::InvalidWealthSet, "wealth values must be finite");
        }
    }
    return WealthSet(std::move(values));
}

WealthSet WealthSet::interval(double lo, double hi, double step) {
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo <= hi)) {
        throw Error(ErrorCode::InvalidWealthSet, "wealth interval needs finite lo <= hi");
    }
    if (!(step > 0.0) || !std::isfinite(step)) {
        throw Error(ErrorCode::InvalidWealthSet, "wealth interval step must be positive");
    }
    return WealthSet(WealthInterval{lo, hi, step});
}

std::vector<double> WealthSet::sample() const {
    std::vector<double> out;
    if (const auto* values = as_list()) {
        out = *values;
    } else {
        const auto& iv = std::get<WealthInterval>(repr_);
        const double span = iv.hi - iv.lo;
        const auto count = static_cast<std::size_t>(std::floor(span / iv.step + 1e-9));
        out.reserve(count + 2);
        for (std::size_t i = 0; i <= count; ++i) {
            out.push_back(iv.lo + static_cast<double>(i) * iv.step);
        }
        if (iv.hi - out.back() > 1e-9 * iv.step) {
            out.push_back(iv.hi);
        } else {
            out.back() = iv.hi;
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

double WealthSet::min() const {
    if (const auto* values = as_list()) return *std::min_element(values->begin(), values->end());
    return std::get<WealthInterval>(repr_).lo;
}

double WealthSet::max() const {
    if (const auto* values = as_list()) return *std::max_element(values->begin(), values->end());
    return std::get<WealthInterval>(repr_).hi;
}

Scenario validate_scenario(const Scenario& s) {
    validate_gamble(s.r);
    validate_gamble(s.r_hat);
    if (!(s.tolerance >= 0.0) || !std::isfinite(s.tolerance)) {
        throw Error(ErrorCode::InvalidScenario, "tolerance must be a nonnegative real");
    }
    if (!(s.belief_grid_step > 0.0 && s.belief_grid_step <= 0.5)) {
        throw Error(ErrorCode::InvalidScenario, "belief_grid_step must lie in (0, 0.5]");
    }
    if (!(s.k_max >= 1.0) || !std::isfinite(s.k_max)) {
        throw Error(ErrorCode::InvalidScenario, "k_max must be at least 1");
    }
    return s;
}

}  // namespace seucal
