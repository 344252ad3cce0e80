#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "seucal/gamble.hpp"
#include "seucal/preference.hpp"
#include "seucal/utility.hpp"

namespace seucal {

/// Relative slack for the cross-multiplied stake comparisons, so that
/// products equal in exact arithmetic compare equal after rounding.
inline constexpr double kStakeSlack = 1e-12;

/// alpha / beta >= alpha_hat / beta_hat, evaluated as alpha * beta_hat >=
/// alpha_hat * beta.
bool actuarial_worsening(const Gamble& r, const Gamble& r_hat);

/// beta_hat >= beta together with actuarial_worsening. Exactly the
/// condition under which rejecting r everywhere on W forces rejecting r_hat.
bool becomes_worse(const Gamble& r, const Gamble& r_hat);

/// Finite-state analogue: beta_hat >= beta on every loss state, and every
/// (gain state, loss state) pair satisfies the cross-ratio condition.
/// Throws PartitionMismatch unless both gambles have the same states and
/// the same gain/loss/zero partition.
bool remark_condition(const GeneralGamble& r, const GeneralGamble& r_hat);

struct RiskNeutralWitness {};
struct LargeKWitness {
    double k = 1.0;
};
struct IntervalWitness {
    double iota = 1.0;
    double w_lo = 0.0;
    double w_hi = 0.0;
};

using WitnessKind = std::variant<RiskNeutralWitness, LargeKWitness, IntervalWitness>;

/// s over r at one verified wealth, in belief units (see belief_margin).
struct SafeMargin {
    double wealth = 0.0;
    double safe_over_risky = 0.0;
};

/// r_hat over s at a flip wealth: raw SEU difference and belief units.
struct FlipMargin {
    double wealth = 0.0;
    double hat_over_safe = 0.0;
    double hat_over_safe_belief = 0.0;
};

/// Concrete (utility, belief) under which s is weakly preferred to r on every
/// verified wealth while r_hat is strictly preferred to s at the flip
/// wealth(s).
struct WitnessCertificate {
    StateUtility utility = StateUtility::independent(PiecewiseUtility::identity());
    Belief belief;
    WitnessKind kind;
    Gamble r;
    Gamble r_hat;
    /// Wealth that was mapped to 0 when normalizing W (0 if none needed).
    double shift = 0.0;
    double tolerance = kDefaultTolerance;
    std::vector<SafeMargin> verified;
    std::vector<FlipMargin> flips;
};

struct MustRemainOptimal {};

using WitnessResult = std::variant<MustRemainOptimal, WitnessCertificate>;

/// Outcome of re-checking a certificate from scratch.
struct CertificateCheck {
    bool weak_everywhere = true;        // seu(s) >= seu(r) - tol on every wealth
    bool positive_belief_margin = true; // indifference_belief(r) - mu > 0 everywhere
    bool strict_flip = true;            // seu(r_hat) - seu(s) > 10 * tol at every flip
    bool utility_valid = true;
    double min_safe_margin = 0.0;       // belief units
    double min_flip_margin = 0.0;       // raw

    bool ok() const {
        return weak_everywhere && positive_belief_margin && strict_flip && utility_valid;
    }
};

/// Re-evaluates a certificate through the preference module only.
CertificateCheck check_certificate(const WitnessCertificate& cert);

/// Builds a certificate for the given utility and belief: evaluates the
/// margins at every wealth and every flip wealth.
WitnessCertificate make_certificate(const StateUtility& su, Belief mu, WitnessKind kind,
                                    const Gamble& r, const Gamble& r_hat,
                                    const std::vector<double>& wealths,
                                    const std::vector<double>& flips, double shift,
                                    double tolerance);

/// Ladder 1, 2, 4, ... <= k_max, skipping rates where theorem_witness is not
/// concave.
std::vector<double> witness_k_ladder(double k_max, const Gamble& r_hat);

/// Witness search. MustRemainOptimal when becomes_worse holds;
/// otherwise a risk-neutral certificate (no actuarial worsening) or a
/// large-k certificate (worsening with a strictly smaller loss).
/// Throws SearchExhausted when no k on the ladder clears the target.
WitnessResult find_witness(const Scenario& scenario);

/// Indifference belief between s and r under proposition_witness, in the
/// displayed closed form.
double interval_r_belief(double iota, double w, double w_lo, const Gamble& r,
                         const Gamble& r_hat);

/// Certificate that r_hat beats s while s beats r on every grid point of
/// [w_lo, w_hi]. Without actuarial worsening this is risk neutral; otherwise
/// iota is halved from 1 until the r-indifference belief clears
/// beta_hat / (alpha_hat + beta_hat) across the interval.
/// Throws PreconditionViolated when becomes_worse holds, IntervalTooWide when
/// w_hi - w_lo >= beta - beta_hat in the worsening branch.
WitnessCertificate interval_witness(const Gamble& r, const Gamble& r_hat, double w_lo,
                                    double w_hi, double step,
                                    double tolerance = kDefaultTolerance);

/// Same, at a fixed iota (no search). Throws SearchExhausted if that iota
/// does not certify.
WitnessCertificate interval_witness_at(double iota, const Gamble& r, const Gamble& r_hat,
                                       double w_lo, double w_hi, double step,
                                       double tolerance = kDefaultTolerance);

/// The ordered chain from s-vs-r_hat indifference down to s-vs-r
/// indifference. Four values in the general branch; two (the two
/// indifference beliefs) when alpha >= alpha_hat and r dominates r_hat.
struct SufficiencyChain {
    std::vector<double> values;
    bool dominance = false;

    /// Largest amount by which a later value exceeds its predecessor (<= 0
    /// means the chain is nonincreasing).
    double worst_increase() const;
};

/// Throws PreconditionViolated when becomes_worse(r, r_hat) fails.
SufficiencyChain sufficiency_chain_check(const StateUtility& su, const Gamble& r,
                                         const Gamble& r_hat, double w);

}  // namespace seucal
