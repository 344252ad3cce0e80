#pragma once

#include <string_view>
#include <variant>
#include <vector>

#include "seucal/gamble.hpp"
#include "seucal/utility.hpp"

namespace seucal {

struct Safe {};

using Action = std::variant<Safe, Gamble>;

/// mu * u1(w + alpha) + (1 - mu) * u0(w - beta); the safe action reads both
/// utilities at w.
double seu_value(const StateUtility& su, Belief mu, double w, const Action& act);

/// seu(safe) - seu(g) as an exact log-scaled number:
/// (1 - mu) * [u0(w) - u0(w - beta)] - mu * [u1(w + alpha) - u1(w)].
Scaled safe_margin(const StateUtility& su, Belief mu, double w, const Gamble& g);

/// safe_margin divided by the gamble's utility spread
/// [u0(w) - u0(w - beta)] + [u1(w + alpha) - u1(w)]. Equals
/// indifference_belief - mu; finite for any witness rate.
double belief_margin(const StateUtility& su, Belief mu, double w, const Gamble& g);

/// Weak: seu(s) >= seu(g) - tol. Strict: seu(s) > seu(g) + tol.
bool prefers_safe(const StateUtility& su, Belief mu, double w, const Gamble& g,
                  bool strict, double tolerance = kDefaultTolerance);

/// Belief at which the safe action and g are equally good at wealth w.
/// Throws DegenerateUtility when the utility spread is not positive.
double indifference_belief(const StateUtility& su, double w, const Gamble& g);

/// Wealth regions of the large-k witness (kinks at -beta_hat and alpha_hat)
/// as seen by the three outcomes w - beta, w, w + alpha of r.
///
/// Interior is the configuration with all three outcomes on the linear
/// piece; it is empty whenever alpha + beta > alpha_hat + beta_hat.
enum class RegionLabel {
    ExtremeLow,
    Case1,
    Case2,
    Case3,
    Case4,
    Case5,
    Case6,
    Case7,
    Interior,
    ExtremeHigh,
};

inline constexpr RegionLabel kAllRegions[] = {
    RegionLabel::ExtremeLow, RegionLabel::Case1, RegionLabel::Case2,
    RegionLabel::Case3,      RegionLabel::Case4, RegionLabel::Case5,
    RegionLabel::Case6,      RegionLabel::Case7, RegionLabel::Interior,
    RegionLabel::ExtremeHigh,
};

std::string_view to_string(RegionLabel label) noexcept;

/// Whether the defining inequalities of `label` hold at w. Neighbouring
/// regions share their boundary points.
bool region_applies(RegionLabel label, double w, const Gamble& r, const Gamble& r_hat);

/// Every label whose inequalities hold at w, in scan order.
std::vector<RegionLabel> applicable_regions(double w, const Gamble& r, const Gamble& r_hat);

/// First applicable label in scan order (ExtremeLow, Case1..Case7,
/// Interior, ExtremeHigh).
RegionLabel classify_region(double w, const Gamble& r, const Gamble& r_hat);

/// Indifference belief between s and r under theorem_witness(k, r_hat), from
/// the per-region closed form. Every exponent argument is kept <= 0.
/// Throws RegionMismatch if `label` does not apply at w.
double closed_form_belief(RegionLabel label, double w, double k, const Gamble& r,
                          const Gamble& r_hat);

/// The k -> infinity limit: 1 everywhere except Case5, which tends to
/// beta / (alpha_hat - w + beta), and Interior, which stays at the
/// risk-neutral beta / (alpha + beta).
double limit_belief(RegionLabel label, double w, const Gamble& r, const Gamble& r_hat);

/// The extreme-region closed form (1 - e^{-beta k}) / (1 - e^{-(alpha+beta) k}).
double extreme_belief(double k, const Gamble& r);

struct IndifferencePoint {
    double wealth = 0.0;
    double belief = 0.0;
};

struct IndifferenceCurve {
    std::vector<IndifferencePoint> points;
    double k = 0.0;
};

/// Generic-route curve of indifference beliefs under theorem_witness(k, r_hat).
IndifferenceCurve witness_curve(const std::vector<double>& wealths, double k,
                                const Gamble& r, const Gamble& r_hat);

}  // namespace seucal
