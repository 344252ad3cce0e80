#include "seucal/preference.hpp"

#include <cmath>
#include <sstream>

namespace seucal {

double seu_value(const StateUtility& su, Belief mu, double w, const Action& act) {
    const double m = mu.mu();
    if (const auto* g = std::get_if<Gamble>(&act)) {
        return m * eval(su.u1, w + g->alpha) + (1.0 - m) * eval(su.u0, w - g->beta);
    }
    return m * eval(su.u1, w) + (1.0 - m) * eval(su.u0, w);
}

namespace {

struct Spread {
    Scaled loss_side;  // u0(w) - u0(w - beta)
    Scaled gain_side;  // u1(w + alpha) - u1(w)
};

Spread spread(const StateUtility& su, double w, const Gamble& g) {
    return {increment(su.u0, w - g.beta, w), increment(su.u1, w, w + g.alpha)};
}

Scaled checked_total(const Spread& s, double w) {
    const Scaled total = s.loss_side + s.gain_side;
    if (total.sign() <= 0 || !std::isfinite(total.mantissa()) ||
        !std::isfinite(total.log_scale())) {
        std::ostringstream msg;
        msg << "utility spread is not positive at w=" << w;
        throw Error(ErrorCode::DegenerateUtility, msg.str());
    }
    return total;
}

}  // namespace

Scaled safe_margin(const StateUtility& su, Belief mu, double w, const Gamble& g) {
    const auto s = spread(su, w, g);
    return (1.0 - mu.mu()) * s.loss_side - mu.mu() * s.gain_side;
}

double belief_margin(const StateUtility& su, Belief mu, double w, const Gamble& g) {
    const auto s = spread(su, w, g);
    const Scaled margin = (1.0 - mu.mu()) * s.loss_side - mu.mu() * s.gain_side;
    return ratio(margin, checked_total(s, w));
}

bool prefers_safe(const StateUtility& su, Belief mu, double w, const Gamble& g, bool strict,
                  double tolerance) {
    const Scaled margin = safe_margin(su, mu, w, g);
    if (strict) return compare(margin, Scaled(tolerance)) > 0;
    return compare(margin, Scaled(-tolerance)) >= 0;
}

double indifference_belief(const StateUtility& su, double w, const Gamble& g) {
    const auto s = spread(su, w, g);
    return ratio(s.loss_side, checked_total(s, w));
}

std::string_view to_string(RegionLabel label) noexcept {
    switch (label) {
        case RegionLabel::ExtremeLow: return "ExtremeLow";
        case RegionLabel::Case1: return "Case1";
        case RegionLabel::Case2: return "Case2";
        case RegionLabel::Case3: return "Case3";
        case RegionLabel::Case4: return "Case4";
        case RegionLabel::Case5: return "Case5";
        case RegionLabel::Case6: return "Case6";
        case RegionLabel::Case7: return "Case7";
        case RegionLabel::Interior: return "Interior";
        case RegionLabel::ExtremeHigh: return "ExtremeHigh";
    }
    return "Unknown";
}

bool region_applies(RegionLabel label, double w, const Gamble& r, const Gamble& r_hat) {
    const double a = r_hat.alpha;
    const double b = r_hat.beta;
    const double lo = w - r.beta;
    const double hi = w + r.alpha;
    switch (label) {
        case RegionLabel::ExtremeLow: return hi <= -b;
        case RegionLabel::Case1: return -b >= w && hi > -b && hi <= a;
        case RegionLabel::Case2: return -b >= w && hi > -b && hi >= a;
        case RegionLabel::Case3: return a <= w && lo < a && lo >= -b;
        case RegionLabel::Case4: return a <= w && lo < a && lo < -b;
        case RegionLabel::Case5: return -b <= lo && w <= a && a < hi;
        case RegionLabel::Case6: return lo < -b && -b <= w && hi <= a;
        case RegionLabel::Case7: return lo < -b && -b <= w && w <= a && a < hi;
        case RegionLabel::Interior: return -b <= lo && hi <= a;
        case RegionLabel::ExtremeHigh: return lo >= a;
    }
    return false;
}

std::vector<RegionLabel> applicable_regions(double w, const Gamble& r, const Gamble& r_hat) {
    std::vector<RegionLabel> out;
    for (auto label : kAllRegions) {
        if (region_applies(label, w, r, r_hat)) out.push_back(label);
    }
    return out;
}

RegionLabel classify_region(double w, const Gamble& r, const Gamble& r_hat) {
    for (auto label : kAllRegions) {
        if (region_applies(label, w, r, r_hat)) return label;
    }
    // The ten regions cover the real line; reaching here means NaN input.
    throw Error(ErrorCode::RegionMismatch, "no wealth region applies (non-finite input?)");
}

double extreme_belief(double k, const Gamble& r) {
    return std::expm1(-k * r.beta) / std::expm1(-k * (r.alpha + r.beta));
}

double closed_form_belief(RegionLabel label, double w, double k, const Gamble& r,
                          const Gamble& r_hat) {
    if (!region_applies(label, w, r, r_hat)) {
        std::ostringstream msg;
        msg << to_string(label) << " does not apply at w=" << w;
        throw Error(ErrorCode::RegionMismatch, msg.str());
    }
    const double a = r_hat.alpha;
    const double b = r_hat.beta;
    const double alpha = r.alpha;
    const double beta = r.beta;
    auto ex = [k](double x) { return std::exp(k * x); };           // x <= 0 at every call
    auto one_minus = [k](double x) { return -std::expm1(k * x); };  // 1 - e^{kx}, x <= 0

    // Shared pieces of the factored lower-tail forms (w - beta < -b there).
    auto lower_common = [&] { return one_minus(b + w - beta); };
    // e^{k(w-beta-a)} - e^{-k(alpha+beta)}, factored; needs w + alpha > a.
    auto upper_tail = [&] { return ex(w - beta - a) * one_minus(-(w + alpha - a)); };

    switch (label) {
        case RegionLabel::ExtremeLow:
        case RegionLabel::ExtremeHigh:
            return extreme_belief(k, r);
        case RegionLabel::Case1: {
            const double den = lower_common() + (w + alpha + b) * ex(w - beta);
            return one_minus(-beta) / den;
        }
        case RegionLabel::Case2: {
            const double den = lower_common() + (a + b) * ex(w - beta) + upper_tail();
            return one_minus(-beta) / den;
        }
        case RegionLabel::Case3: {
            const double linear = a - w + beta;
            const double num = linear + ex(-a) * one_minus(-(w - a));
            const double den = linear + ex(-a) * one_minus(-(w + alpha - a));
            return num / den;
        }
        case RegionLabel::Case4: {
            const double common = lower_common() + (a + b) * ex(w - beta);
            const double num = common + ex(w - beta - a) * one_minus(-(w - a));
            const double den = common + upper_tail();
            return num / den;
        }
        case RegionLabel::Case5:
            return beta / ((a - w + beta) + ex(-a) * one_minus(-(w + alpha - a)));
        case RegionLabel::Case6: {
            const double num = lower_common() + (w + b) * ex(w - beta);
            const double den = lower_common() + (w + alpha + b) * ex(w - beta);
            return num / den;
        }
        case RegionLabel::Case7: {
            const double num = lower_common() + (w + b) * ex(w - beta);
            const double den = lower_common() + (a + b) * ex(w - beta) + upper_tail();
            return num / den;
        }
        case RegionLabel::Interior:
            return beta / (alpha + beta);
    }
    return 0.0;
}

double limit_belief(RegionLabel label, double w, const Gamble& r, const Gamble& r_hat) {
    if (!region_applies(label, w, r, r_hat)) {
        std::ostringstream msg;
        msg << to_string(label) << " does not apply at w=" << w;
        throw Error(ErrorCode::RegionMismatch, msg.str());
    }
    switch (label) {
        case RegionLabel::Case5: return r.beta / (r_hat.alpha - w + r.beta);
        case RegionLabel::Interior: return r.beta / (r.alpha + r.beta);
        default: return 1.0;
    }
}

IndifferenceCurve witness_curve(const std::vector<double>& wealths, double k, const Gamble& r,
                                const Gamble& r_hat) {
    const auto su = StateUtility::independent(theorem_witness(k, r_hat));
    IndifferenceCurve curve;
    curve.k = k;
    curve.points.reserve(wealths.size());
    for (double w : wealths) curve.points.push_back({w, indifference_belief(su, w, r)});
    return curve;
}

}  // namespace seucal
