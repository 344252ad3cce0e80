#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <variant>
#include <vector>

#include "seucal/error.hpp"

namespace seucal {

/// Binary-state risky action: pays `alpha` in state 1 and loses `beta` in
/// state 0. The safe action (zero payoff in both states) has no type.
struct Gamble {
    double alpha = 1.0;
    double beta = 1.0;

    friend bool operator==(const Gamble&, const Gamble&) = default;
};

/// Throws NonPositiveStake unless alpha > 0 and beta > 0 (NaN rejected).
Gamble validate_gamble(const Gamble& g);

/// Subjective probability of state 1.
class Belief {
public:
    Belief() = default;
    explicit Belief(double mu);

    double mu() const noexcept { return mu_; }

    friend bool operator==(const Belief&, const Belief&) = default;

private:
    double mu_ = 0.5;
};

/// A risky action over a finite state set. State labels are reals; payoffs
/// split the states into gains (R), losses (S) and zeros (T).
class GeneralGamble {
public:
    explicit GeneralGamble(std::map<double, double> payoffs);

    const std::map<double, double>& payoffs() const noexcept { return payoffs_; }

    std::vector<double> gain_states() const;  // R
    std::vector<double> loss_states() const;  // S
    std::vector<double> zero_states() const;  // T

    /// Payoff of a state; throws InvalidScenario for unknown labels.
    double payoff(double state) const;

    /// The binary embedding {0 -> -beta, 1 -> alpha}.
    static GeneralGamble from_binary(const Gamble& g);

private:
    std::map<double, double> payoffs_;
};

struct WealthInterval {
    double lo = 0.0;
    double hi = 0.0;
    double step = 1.0;

    friend bool operator==(const WealthInterval&, const WealthInterval&) = default;
};

/// Nonempty set of initial wealths: an explicit list or a closed interval
/// sampled at `step` with both endpoints included.
class WealthSet {
public:
    using List = std::vector<double>;

    static WealthSet list(List values);
    static WealthSet interval(double lo, double hi, double step);

    bool is_interval() const noexcept {
        return std::holds_alternative<WealthInterval>(repr_);
    }
    const List* as_list() const noexcept { return std::get_if<List>(&repr_); }
    const WealthInterval* as_interval() const noexcept {
        return std::get_if<WealthInterval>(&repr_);
    }

    /// Sorted, de-duplicated sample points. Interval points are lo + i*step
    /// (no accumulated drift) and always end exactly at hi.
    std::vector<double> sample() const;

    double min() const;
    double max() const;

    friend bool operator==(const WealthSet&, const WealthSet&) = default;

private:
    explicit WealthSet(std::variant<List, WealthInterval> repr)
        : repr_(std::move(repr)) {}

    std::variant<List, WealthInterval> repr_;
};

inline constexpr double kDefaultTolerance = 1e-9;
inline constexpr double kDefaultBeliefGridStep = 1e-3;
inline constexpr double kDefaultKMax = 512.0;

struct Scenario {
    Gamble r;
    Gamble r_hat;
    WealthSet wealth = WealthSet::list({0.0});
    double tolerance = kDefaultTolerance;
    double belief_grid_step = kDefaultBeliefGridStep;
    double k_max = kDefaultKMax;

    friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Checks every Scenario invariant; returns the scenario unchanged.
Scenario validate_scenario(const Scenario& s);

}  // namespace seucal
