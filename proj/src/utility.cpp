#include "seucal/utility.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace seucal {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// log(e^t - 1) for t > 0 without overflow.
double log_expm1(double t) {
    return t > 30.0 ? t + std::log1p(-std::exp(-t)) : std::log(std::expm1(t));
}

Scaled segment_increment(const Segment& seg, double x, double y) {
    return std::visit(
        overloaded{
            [&](const LinearSegment& s) { return Scaled(s.slope * (y - x)); },
            [&](const NegExpSegment& s) {
                // e^{lambda}(e^{-k(x-x0)} - e^{-k(y-x0)})
                const double lead = s.log_amplitude - s.rate * (x - s.anchor);
                return Scaled::from_log(-std::expm1(-s.rate * (y - x)), lead);
            },
        },
        seg);
}

double segment_log_derivative(const Segment& seg, double x) {
    return std::visit(
        overloaded{
            [](const LinearSegment& s) {
                return s.slope > 0.0 ? std::log(s.slope) : -kInf;
            },
            [&](const NegExpSegment& s) {
                return std::log(s.rate) + s.log_amplitude - s.rate * (x - s.anchor);
            },
        },
        seg);
}

}  // namespace

PiecewiseUtility::PiecewiseUtility(std::vector<double> breakpoints,
                                   std::vector<Segment> segments)
    : breakpoints_(std::move(breakpoints)), segments_(std::move(segments)) {
    if (segments_.size() != breakpoints_.size() + 1) {
        throw Error(ErrorCode::InvalidUtility,
                    "piecewise utility needs exactly one more segment than breakpoints");
    }
    for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
        if (!std::isfinite(breakpoints_[i]) ||
            (i > 0 && !(breakpoints_[i - 1] < breakpoints_[i]))) {
            throw Error(ErrorCode::InvalidUtility,
                        "breakpoints must be finite and strictly increasing");
        }
    }
    for (const auto& seg : segments_) {
        if (const auto* e = std::get_if<NegExpSegment>(&seg); e && !(e->rate > 0.0)) {
            throw Error(ErrorCode::InvalidUtility, "exponential segment rate must be positive");
        }
    }
}

PiecewiseUtility PiecewiseUtility::identity() {
    return PiecewiseUtility({}, {LinearSegment{1.0, 0.0}});
}

std::size_t PiecewiseUtility::segment_index(double x) const {
    return static_cast<std::size_t>(
        std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x) - breakpoints_.begin());
}

PiecewiseUtility PiecewiseUtility::translated(double delta) const {
    std::vector<double> bps = breakpoints_;
    for (double& b : bps) b += delta;
    std::vector<Segment> segs;
    segs.reserve(segments_.size());
    for (const auto& seg : segments_) {
        segs.push_back(std::visit(
            overloaded{
                [&](const LinearSegment& s) -> Segment {
                    return LinearSegment{s.slope, s.intercept - s.slope * delta};
                },
                [&](const NegExpSegment& s) -> Segment {
                    auto moved = s;
                    moved.anchor += delta;
                    return moved;
                },
            },
            seg));
    }
    return PiecewiseUtility(std::move(bps), std::move(segs));
}

Evaluation evaluate(const Segment& seg, double x) {
    return std::visit(
        overloaded{
            [&](const LinearSegment& s) { return Evaluation{s.slope * x + s.intercept, false}; },
            [&](const NegExpSegment& s) {
                const double t = -s.rate * (x - s.anchor);
                if (t == 0.0) return Evaluation{s.offset, false};
                // offset - e^{lambda} * expm1(t); split on the sign of expm1(t).
                const double log_mag =
                    t < 0.0 ? s.log_amplitude + std::log(-std::expm1(t))
                            : s.log_amplitude + log_expm1(t);
                const bool saturated = log_mag > kExponentClamp;
                const double mag = std::exp(std::min(log_mag, kExponentClamp));
                return Evaluation{t < 0.0 ? s.offset + mag : s.offset - mag, saturated};
            },
        },
        seg);
}

Evaluation evaluate(const PiecewiseUtility& u, double x) {
    return evaluate(u.segments()[u.segment_index(x)], x);
}

double eval(const PiecewiseUtility& u, double x) { return evaluate(u, x).value; }

Scaled increment(const PiecewiseUtility& u, double x, double y) {
    if (x == y) return Scaled{};
    if (x > y) return -increment(u, y, x);
    const auto& bps = u.breakpoints();
    const auto& segs = u.segments();
    std::size_t i = u.segment_index(x);
    const std::size_t last = u.segment_index(y);
    Scaled total;
    double from = x;
    for (; i < last; ++i) {
        total += segment_increment(segs[i], from, bps[i]);
        from = bps[i];
    }
    total += segment_increment(segs[last], from, y);
    return total;
}

double log_derivative(const PiecewiseUtility& u, double x, bool left) {
    std::size_t i = u.segment_index(x);
    if (left) {
        // Points strictly left of x live in segment lower_bound(x).
        const auto& bps = u.breakpoints();
        i = static_cast<std::size_t>(std::lower_bound(bps.begin(), bps.end(), x) - bps.begin());
    }
    return segment_log_derivative(u.segments()[i], x);
}

bool ValidationReport::continuous() const {
    return std::all_of(continuity.begin(), continuity.end(),
                       [&](const Residual& r) { return r.residual <= tolerance; });
}

ValidationReport validate(const PiecewiseUtility& u, double grid_step, double tolerance) {
    ValidationReport report;
    report.tolerance = tolerance;
    const auto& bps = u.breakpoints();
    const auto& segs = u.segments();

    for (std::size_t i = 0; i < bps.size(); ++i) {
        const auto left = evaluate(segs[i], bps[i]);
        const auto right = evaluate(segs[i + 1], bps[i]);
        const double scale = std::max(1.0, std::abs(left.value));
        report.continuity.push_back({bps[i], std::abs(left.value - right.value) / scale});
    }

    for (std::size_t i = 0; i < segs.size(); ++i) {
        const auto* lin = std::get_if<LinearSegment>(&segs[i]);
        if (lin && !(lin->slope > 0.0)) {
            const double a = i == 0 ? (bps.empty() ? -1.0 : bps.front() - 1.0) : bps[i - 1];
            report.monotonicity_violation = {a, a + 1.0};
            break;
        }
    }

    // One-sided derivatives must not increase across a kink.
    for (double b : bps) {
        const double l = log_derivative(u, b, true);
        const double r = log_derivative(u, b, false);
        if (r > l + tolerance) report.concavity_violations.push_back({b, l, r});
    }

    // Secant scan on a uniform grid.
    double lo = -1.0;
    double hi = 1.0;
    if (!bps.empty()) {
        const double margin = std::max(1.0, bps.back() - bps.front());
        lo = bps.front() - margin;
        hi = bps.back() + margin;
    }
    const double steps = std::min(1e6, std::ceil((hi - lo) / grid_step));
    const auto n = static_cast<std::size_t>(std::max(2.0, steps));
    const double h = (hi - lo) / static_cast<double>(n);
    Scaled prev;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = lo + static_cast<double>(i) * h;
        const double y = i + 1 == n ? hi : lo + static_cast<double>(i + 1) * h;
        const Scaled d = increment(u, x, y);
        if (d.sign() <= 0 && !report.monotonicity_violation) {
            report.monotonicity_violation = {x, y};
        }
        if (i > 0 && d.sign() > 0 && prev.sign() > 0 &&
            d.log_abs() > prev.log_abs() + tolerance) {
            // Only report grid cells not already explained by a kink.
            const bool near_kink = std::any_of(bps.begin(), bps.end(), [&](double b) {
                return b >= x - h && b <= y;
            });
            if (!near_kink) {
                report.concavity_violations.push_back({x, prev.log_abs(), d.log_abs()});
            }
        }
        prev = d;
    }
    return report;
}

PiecewiseUtility theorem_witness(double k, const Gamble& r_hat) {
    validate_gamble(r_hat);
    if (!(k >= 1.0) || !std::isfinite(k)) {
        throw Error(ErrorCode::InvalidK, "witness rate k must be >= 1, got " + std::to_string(k));
    }
    const double a = r_hat.alpha;
    const double b = r_hat.beta;
    return PiecewiseUtility(
        {-b, a},
        {
            NegExpSegment{-b, -b, k, k * b},
            LinearSegment{1.0, 0.0},
            NegExpSegment{a, a, k, -k * a},
        });
}

bool theorem_witness_is_concave(double k, const Gamble& r_hat) {
    return std::log(k) - k * r_hat.alpha <= 0.0;
}

PiecewiseUtility proposition_witness(double iota, double w_lo, const Gamble& r_hat) {
    validate_gamble(r_hat);
    if (!(iota > 0.0 && iota <= 1.0)) {
        throw Error(ErrorCode::InvalidIota, "iota must lie in (0,1], got " + std::to_string(iota));
    }
    const double kink = w_lo - r_hat.beta;
    return PiecewiseUtility({kink}, {LinearSegment{1.0, 0.0},
                                     LinearSegment{iota, (1.0 - iota) * kink}});
}

PiecewiseUtility piecewise_linear(const std::vector<double>& nodes,
                                  const std::vector<double>& values) {
    if (nodes.size() < 2 || nodes.size() != values.size()) {
        throw Error(ErrorCode::InvalidUtility, "interpolation needs >= 2 matching nodes/values");
    }
    std::vector<Segment> segs;
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        if (!(nodes[i] < nodes[i + 1])) {
            throw Error(ErrorCode::InvalidUtility, "interpolation nodes must be increasing");
        }
        const double slope = (values[i + 1] - values[i]) / (nodes[i + 1] - nodes[i]);
        segs.push_back(LinearSegment{slope, values[i] - slope * nodes[i]});
    }
    std::vector<double> bps(nodes.begin() + 1, nodes.end() - 1);
    return PiecewiseUtility(std::move(bps), std::move(segs));
}

}  // namespace seucal
