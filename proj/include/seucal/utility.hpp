#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "seucal/gamble.hpp"
#include "seucal/scaled.hpp"

namespace seucal {

/// x -> slope * x + intercept
struct LinearSegment {
    double slope = 1.0;
    double intercept = 0.0;

    friend bool operator==(const LinearSegment&, const LinearSegment&) = default;
};

/// CARA piece x -> offset + exp(log_amplitude) * (1 - exp(-rate * (x - anchor))).
///
/// Both tails of the large-k witness have this shape with anchor at the kink
/// and log_amplitude = -rate * anchor, which reproduces a + e^{-k a} - e^{-k x}
/// for the upper tail and -b + e^{k b} - e^{-k x} for the lower one. Keeping
/// the amplitude as a logarithm lets the form survive translation and keeps
/// e^{k b} out of double arithmetic.
struct NegExpSegment {
    double offset = 0.0;
    double anchor = 0.0;
    double rate = 1.0;
    double log_amplitude = 0.0;

    friend bool operator==(const NegExpSegment&, const NegExpSegment&) = default;
};

using Segment = std::variant<LinearSegment, NegExpSegment>;

/// Exponent arguments beyond this magnitude saturate.
inline constexpr double kExponentClamp = 700.0;

struct Evaluation {
    double value = 0.0;
    bool saturated = false;
};

/// Continuous piecewise utility of money. Segment i covers
/// [breakpoints[i-1], breakpoints[i]), with unbounded end segments; a
/// breakpoint itself belongs to the segment on its right.
class PiecewiseUtility {
public:
    PiecewiseUtility(std::vector<double> breakpoints, std::vector<Segment> segments);

    static PiecewiseUtility identity();

    const std::vector<double>& breakpoints() const noexcept { return breakpoints_; }
    const std::vector<Segment>& segments() const noexcept { return segments_; }

    std::size_t segment_index(double x) const;

    /// Same function moved right by `delta`: v(x) = u(x - delta).
    PiecewiseUtility translated(double delta) const;

    friend bool operator==(const PiecewiseUtility&, const PiecewiseUtility&) = default;

private:
    std::vector<double> breakpoints_;
    std::vector<Segment> segments_;
};

/// Utility pair (u0 for state 0, u1 for state 1).
struct StateUtility {
    PiecewiseUtility u0;
    PiecewiseUtility u1;

    static StateUtility independent(const PiecewiseUtility& u) { return {u, u}; }

    friend bool operator==(const StateUtility&, const StateUtility&) = default;
};

Evaluation evaluate(const Segment& seg, double x);
Evaluation evaluate(const PiecewiseUtility& u, double x);

/// Plain value; saturated exponents are clamped at +-700.
double eval(const PiecewiseUtility& u, double x);

/// u(y) - u(x) without forming u(x) or u(y); exact in sign and carried in
/// log-scaled form. Works for either ordering of x and y.
Scaled increment(const PiecewiseUtility& u, double x, double y);

/// log of the one-sided derivative at x (right derivative unless `left`).
double log_derivative(const PiecewiseUtility& u, double x, bool left = false);

struct ValidationReport {
    struct Residual {
        double breakpoint = 0.0;
        double residual = 0.0;
    };
    struct SlopeIncrease {
        double where = 0.0;
        double left_slope_log = 0.0;
        double right_slope_log = 0.0;
    };

    std::vector<Residual> continuity;
    std::optional<std::pair<double, double>> monotonicity_violation;
    std::vector<SlopeIncrease> concavity_violations;
    double tolerance = 0.0;

    bool continuous() const;
    bool increasing() const { return !monotonicity_violation.has_value(); }
    bool concave() const { return concavity_violations.empty(); }
    bool passed() const { return continuous() && increasing() && concave(); }
};

/// Continuity at breakpoints, strict monotonicity and weak concavity.
/// Uses one-sided derivatives at every breakpoint plus a secant scan on a
/// grid of `grid_step` spanning all breakpoints with a margin on each side.
ValidationReport validate(const PiecewiseUtility& u, double grid_step,
                          double tolerance = kDefaultTolerance);

/// Three-piece utility with CARA tails kinked at -r_hat.beta and r_hat.alpha
/// and the identity in between. Throws InvalidK when k < 1.
PiecewiseUtility theorem_witness(double k, const Gamble& r_hat);

/// Closed-form concavity test for theorem_witness: the upper kink needs
/// k * exp(-k * alpha_hat) <= 1; the lower kink always holds for k >= 1.
bool theorem_witness_is_concave(double k, const Gamble& r_hat);

/// Identity below w_lo - beta_hat, slope iota above it, continuous at the
/// kink. Throws InvalidIota when iota is outside (0, 1].
PiecewiseUtility proposition_witness(double iota, double w_lo, const Gamble& r_hat);

/// Piecewise-linear interpolation of (node, value) pairs, extended linearly
/// with the end slopes. Throws InvalidUtility on unsorted nodes.
PiecewiseUtility piecewise_linear(const std::vector<double>& nodes,
                                  const std::vector<double>& values);

}  // namespace seucal
