#include "seucal/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "seucal/error.hpp"
#include "seucal/scaled.hpp"
#include "seucal/simplex.hpp"

namespace seucal {

namespace {

std::vector<double> lp_nodes(const std::vector<double>& wealths, const Gamble& r,
                             const Gamble& r_hat) {
    std::vector<double> raw;
    for (double w : wealths) {
        raw.insert(raw.end(), {w, w + r.alpha, w - r.beta, w + r_hat.alpha, w - r_hat.beta});
    }
    std::sort(raw.begin(), raw.end());
    std::vector<double> nodes;
    for (double x : raw) {
        if (nodes.empty() || x - nodes.back() > 1e-12 * std::max(1.0, std::abs(x))) {
            nodes.push_back(x);
        }
    }
    return nodes;
}

// Linear form in the slope-excess variables t_j = slope_j - floor.
struct LinearForm {
    std::vector<double> coef;
    double constant = 0.0;

    LinearForm& add(const LinearForm& o, double scale) {
        for (std::size_t j = 0; j < coef.size(); ++j) coef[j] += scale * o.coef[j];
        constant += scale * o.constant;
        return *this;
    }
};

LinearForm node_value(const LpInstance& lp, std::size_t i) {
    LinearForm f{std::vector<double>(lp.nodes.size() - 1, 0.0), 0.0};
    for (std::size_t j = 0; j < i; ++j) f.coef[j] = lp.nodes[j + 1] - lp.nodes[j];
    f.constant = kSlopeFloor * (lp.nodes[i] - lp.nodes.front());
    return f;
}

LinearForm value_at(const LpInstance& lp, double x) { return node_value(lp, lp.node_index(x)); }

// mu * u(w + alpha) + (1 - mu) * u(w - beta) - u(w)
LinearForm gamble_minus_safe(const LpInstance& lp, double w, const Gamble& g, double mu) {
    LinearForm f = value_at(lp, w + g.alpha);
    for (double& c : f.coef) c *= mu;
    f.constant *= mu;
    f.add(value_at(lp, w - g.beta), 1.0 - mu);
    f.add(value_at(lp, w), -1.0);
    return f;
}

}  // namespace

std::size_t LpInstance::node_index(double x) const {
    auto it = std::lower_bound(nodes.begin(), nodes.end(), x);
    if (it == nodes.end()) return nodes.size() - 1;
    if (it != nodes.begin() && std::abs(*(it - 1) - x) < std::abs(*it - x)) --it;
    return static_cast<std::size_t>(it - nodes.begin());
}

LpInstance build_lp(const Scenario& scenario, Belief mu, double flip_w) {
    const Scenario sc = validate_scenario(scenario);
    LpInstance lp;
    lp.wealths = sc.wealth.sample();
    lp.nodes = lp_nodes(lp.wealths, sc.r, sc.r_hat);
    lp.flip = flip_w;
    lp.mu = mu.mu();
    const std::size_t vars = lp.nodes.size() - 1;

    auto push_row = [&](std::vector<double> row, double rhs) {
        lp.a.push_back(std::move(row));
        lp.b.push_back(rhs);
    };

    for (std::size_t j = 0; j < vars; ++j) {
        std::vector<double> row(vars, 0.0);
        row[j] = 1.0;
        push_row(std::move(row), kSlopeCap - kSlopeFloor);
        ++lp.monotonicity_rows;
    }
    for (std::size_t j = 0; j + 1 < vars; ++j) {
        std::vector<double> row(vars, 0.0);
        row[j + 1] = 1.0;
        row[j] = -1.0;
        push_row(std::move(row), 0.0);
        ++lp.concavity_rows;
    }
    for (double w : lp.wealths) {
        const auto f = gamble_minus_safe(lp, w, sc.r, lp.mu);
        push_row(f.coef, -f.constant);
        ++lp.preference_rows;
    }
    // u(flip + alpha_hat) - u(flip - beta_hat) == 1, as two inequalities.
    LinearForm spread = value_at(lp, flip_w + sc.r_hat.alpha);
    spread.add(value_at(lp, flip_w - sc.r_hat.beta), -1.0);
    push_row(spread.coef, 1.0 - spread.constant);
    std::vector<double> neg(spread.coef);
    for (double& c : neg) c = -c;
    push_row(std::move(neg), spread.constant - 1.0);
    lp.normalization_rows = 2;

    const auto objective = gamble_minus_safe(lp, flip_w, sc.r_hat, lp.mu);
    lp.c = objective.coef;
    lp.objective_constant = objective.constant;
    return lp;
}

std::optional<LpSolution> feasible_at_belief(const Scenario& scenario, Belief mu, double flip_w) {
    const LpInstance lp = build_lp(scenario, mu, flip_w);
    const LpResult res = solve_lp(lp.a, lp.b, lp.c);
    if (res.status == LpStatus::Infeasible) return std::nullopt;
    if (res.status == LpStatus::Unbounded) {
        throw Error(ErrorCode::NumericFailure, "oracle LP reported unbounded objective");
    }
    LpSolution sol;
    sol.margin = res.objective + lp.objective_constant;
    sol.nodes = lp.nodes;
    sol.values.assign(lp.nodes.size(), 0.0);
    for (std::size_t j = 0; j + 1 < lp.nodes.size(); ++j) {
        sol.slopes.push_back(kSlopeFloor + res.x[j]);
        sol.values[j + 1] = sol.values[j] + sol.slopes[j] * (lp.nodes[j + 1] - lp.nodes[j]);
    }
    return sol;
}

PiecewiseUtility solution_utility(const LpSolution& sol) {
    if (sol.nodes.size() < 2 || sol.slopes.size() + 1 != sol.nodes.size()) {
        throw Error(ErrorCode::InvalidUtility, "LP solution needs >= 2 nodes and matching slopes");
    }
    std::vector<Segment> segs;
    for (std::size_t j = 0; j < sol.slopes.size(); ++j) {
        segs.push_back(LinearSegment{sol.slopes[j], sol.values[j] - sol.slopes[j] * sol.nodes[j]});
    }
    return PiecewiseUtility({sol.nodes.begin() + 1, sol.nodes.end() - 1}, std::move(segs));
}

OracleResult must_remain_optimal_oracle(const Scenario& scenario) {
    const Scenario sc = validate_scenario(scenario);
    const auto wealths = sc.wealth.sample();
    const double threshold = 10.0 * sc.tolerance;
    const double step = sc.belief_grid_step;

    OracleResult out;
    struct Best {
        double mu = 0.0;
        double margin = -std::numeric_limits<double>::infinity();
        std::optional<LpSolution> solution;
    };
    std::vector<Best> best(wealths.size());

    // Returns true when (mu, wealths[i]) is a violation.
    auto probe = [&](double mu, std::size_t i) {
        if (!(mu > 0.0 && mu < 1.0)) return false;
        ++out.lp_solves;
        auto sol = feasible_at_belief(sc, Belief(mu), wealths[i]);
        if (!sol) return false;
        if (sol->margin > threshold) {
            const auto check = check_lp_point(sc, Belief(mu), wealths[i], solution_utility(*sol));
            if (!check.structurally_feasible() || !(check.margin > threshold)) {
                ++out.rejected_points;
                return false;
            }
            out.must_remain_optimal = false;
            out.evidence = OracleEvidence{mu, wealths[i], *sol};
            return true;
        }
        if (sol->margin > best[i].margin) best[i] = {mu, sol->margin, std::move(sol)};
        return false;
    };

    const auto cells = static_cast<long>(std::floor(1.0 / step + 1e-9));
    for (long c = 1; c < cells; ++c) {
        const double mu = static_cast<double>(c) * step;
        for (std::size_t i = 0; i < wealths.size(); ++i) {
            if (probe(mu, i)) return out;
        }
    }
    for (std::size_t i = 0; i < wealths.size(); ++i) {
        if (!best[i].solution) continue;
        double fine = step;
        for (int level = 0; level < kRefineLevels; ++level) {
            const double centre = best[i].mu;
            fine /= 10.0;
            for (int c = -10; c <= 10; ++c) {
                if (c == 0) continue;
                if (probe(centre + c * fine, i)) return out;
            }
        }
    }
    const auto top = std::max_element(best.begin(), best.end(), [](const Best& x, const Best& y) {
        return x.margin < y.margin;
    });
    if (top != best.end() && top->solution) {
        out.evidence = OracleEvidence{
            top->mu, wealths[static_cast<std::size_t>(top - best.begin())], *top->solution};
    }
    return out;
}

LpPointCheck check_lp_point(const Scenario& scenario, Belief mu, double flip_w,
                            const PiecewiseUtility& u) {
    const Scenario sc = validate_scenario(scenario);
    const auto wealths = sc.wealth.sample();
    LpInstance lp;
    lp.nodes = lp_nodes(wealths, sc.r, sc.r_hat);
    const auto& x = lp.nodes;

    std::vector<Scaled> steps(x.size() - 1);
    for (std::size_t j = 0; j + 1 < x.size(); ++j) steps[j] = increment(u, x[j], x[j + 1]);
    // u(hi) - u(lo) summed over the steps between them; differencing prefix
    // sums would cancel when a steep tail dominates.
    auto diff = [&](double hi, double lo) {
        const std::size_t i = lp.node_index(lo);
        const std::size_t j = lp.node_index(hi);
        Scaled total;
        for (std::size_t m = std::min(i, j); m < std::max(i, j); ++m) total += steps[m];
        return j >= i ? total : -total;
    };

    LpPointCheck out;
    const Scaled spread = diff(flip_w + sc.r_hat.alpha, flip_w - sc.r_hat.beta);
    if (spread.sign() <= 0) {
        out.increasing = false;
        return out;
    }
    for (std::size_t j = 0; j < steps.size(); ++j) {
        const Scaled slope = steps[j] * (1.0 / (x[j + 1] - x[j]));
        if (slope.sign() <= 0) out.increasing = false;
        if (j > 0) {
            const Scaled prev = steps[j - 1] * (1.0 / (x[j] - x[j - 1]));
            if (compare(slope, prev * (1.0 + 1e-9)) > 0) out.concave = false;
        }
        if (compare(slope, spread * (kSlopeFloor * (1.0 - 1e-9))) < 0 ||
            compare(slope, spread * (kSlopeCap * (1.0 + 1e-9))) > 0) {
            out.within_slope_box = false;
        }
    }
    const double m = mu.mu();
    for (double w : wealths) {
        const Scaled loss = diff(w, w - sc.r.beta);
        const Scaled gain = diff(w + sc.r.alpha, w);
        const Scaled safe_minus_gamble = (1.0 - m) * loss - m * gain;
        if (ratio(safe_minus_gamble, spread) < -sc.tolerance) out.weak_preference = false;
    }
    const Scaled loss_hat = diff(flip_w, flip_w - sc.r_hat.beta);
    out.margin = m - ratio(loss_hat, spread);
    return out;
}

}  // namespace seucal
