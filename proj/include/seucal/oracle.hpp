#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "seucal/gamble.hpp"
#include "seucal/utility.hpp"

namespace seucal {

/// Lower bound on every slope of the oracle's utilities (strictly increasing).
inline constexpr double kSlopeFloor = 1e-6;
/// Upper bound on every slope.
inline constexpr double kSlopeCap = 1e6;
/// Local refinement levels (each 10x finer) applied around the best belief
/// before the oracle answers "must remain optimal".
inline constexpr int kRefineLevels = 3;

/// Finite-node reduction of a calibration violation at a fixed belief.
///
/// Both SEU comparisons only read the utility at the node wealths
/// {w, w + alpha, w - beta, w + alpha_hat, w - beta_hat : w in W}, so a
/// concave increasing utility exists iff its restriction to the nodes is a
/// concave increasing sequence. Variables are the node slopes; the utility
/// is pinned to u(first node) = 0 and scaled so that
/// u(flip + alpha_hat) - u(flip - beta_hat) = 1, which makes the objective
/// (the r_hat-over-s SEU margin at the flip wealth) a belief-unit margin.
struct LpInstance {
    std::vector<double> nodes;
    std::vector<double> wealths;
    double flip = 0.0;
    double mu = 0.5;

    std::size_t monotonicity_rows = 0;  // slope caps; the floor is the variable bound
    std::size_t concavity_rows = 0;
    std::size_t preference_rows = 0;
    std::size_t normalization_rows = 0;

    std::vector<std::vector<double>> a;
    std::vector<double> b;
    std::vector<double> c;
    double objective_constant = 0.0;

    std::size_t node_index(double x) const;
};

LpInstance build_lp(const Scenario& scenario, Belief mu, double flip_w);

struct LpSolution {
    double margin = 0.0;  // seu(r_hat) - seu(s) at the flip, belief units
    std::vector<double> nodes;
    std::vector<double> values;
    std::vector<double> slopes;  // nodes.size() - 1 entries
};

/// The LP point as a utility, built from the slopes so that increments do
/// not difference large node values.
PiecewiseUtility solution_utility(const LpSolution& sol);

/// Maximum violation margin at (mu, flip_w), or nullopt when no concave
/// increasing utility makes s weakly preferred to r on all of W.
/// Throws NumericFailure if the solver reports an unbounded problem.
std::optional<LpSolution> feasible_at_belief(const Scenario& scenario, Belief mu, double flip_w);

struct OracleEvidence {
    double mu = 0.0;
    double flip_wealth = 0.0;
    LpSolution solution;
};

struct OracleResult {
    bool must_remain_optimal = true;
    /// The violating cell (smallest belief, then smallest wealth) when
    /// must_remain_optimal is false; otherwise the best non-violating cell.
    std::optional<OracleEvidence> evidence;
    std::size_t lp_solves = 0;
    /// Solver points whose margin cleared the threshold but which failed
    /// the independent re-check (solver round-off); these are not evidence.
    std::size_t rejected_points = 0;
};

/// Scans beliefs at scenario.belief_grid_step and every flip wealth in W,
/// with local refinement, for an LP-feasible violation whose margin exceeds
/// 10 * tolerance. A violation is only reported after check_lp_point
/// confirms the solver's point.
OracleResult must_remain_optimal_oracle(const Scenario& scenario);

/// Whether a given utility, restricted to the LP nodes, is a feasible point
/// of build_lp(scenario, mu, flip_w) after the normalization.
struct LpPointCheck {
    bool increasing = true;
    bool concave = true;
    bool weak_preference = true;
    bool within_slope_box = true;
    double margin = 0.0;  // belief units

    bool structurally_feasible() const { return increasing && concave && weak_preference; }
    bool feasible() const { return structurally_feasible() && within_slope_box; }
};

LpPointCheck check_lp_point(const Scenario& scenario, Belief mu, double flip_w,
                            const PiecewiseUtility& u);

}  // namespace seucal
