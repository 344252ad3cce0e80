#pragma once

#include <vector>

namespace seucal {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    double objective = 0.0;
    std::vector<double> x;
};

/// Dense two-phase tableau simplex for
///
///     maximize c'x  subject to  A x <= b,  x >= 0.
///
/// Negative right-hand sides are handled by a phase-one artificial column.
/// Entering and leaving variables are chosen by smallest (value, index)
/// pairs, which rules out cycling. Intended for problems with a few dozen
/// rows and columns.
LpResult solve_lp(const std::vector<std::vector<double>>& a, const std::vector<double>& b,
                  const std::vector<double>& c, double eps = 1e-9);

}  // namespace seucal
