#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "seucal/gamble.hpp"
#include "seucal/utility.hpp"

namespace seucal::suites {

/// Seeded generator with a platform-independent mapping to doubles
/// (std::uniform_real_distribution is implementation-defined).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, 1).
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
    /// Uniform integer in [lo, hi].
    std::int64_t integer(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(engine_() % static_cast<std::uint64_t>(hi - lo + 1));
    }
    bool chance(double p) { return unit() < p; }

private:
    std::mt19937_64 engine_;
};

/// Random strictly increasing concave utility: piecewise linear, a large-k
/// witness, or the identity.
PiecewiseUtility random_concave_utility(Rng& rng, double centre);

struct SuiteReport {
    std::string name;
    bool passed = false;
    /// Deterministic key=value lines (no timings).
    std::string text;
};

inline constexpr std::uint64_t kDefaultSeed = 20240601;

/// 1: closed-form vs generic indifference beliefs for every applicable
/// region label on r=(2,2), r_hat=(1,1), w in [-6,6] step 0.01, k = 1..256,
/// plus coverage sets that reach the regions this instance leaves empty.
SuiteReport closed_form_agreement();

/// 2: k=256 limits, Case-5 finite limit, monotone extreme belief, Case-1 bound.
SuiteReport limit_reproduction();

/// 3: sufficiency chain over random state-dependent utilities.
SuiteReport sufficiency_property(std::uint64_t seed, int instances = 10000);

/// 4: witness search over random instances where r_hat is not worse.
SuiteReport necessity_property(std::uint64_t seed, int instances = 1000);

/// 5: LP oracle against becomes_worse on small instances, plus LP
/// feasibility of the witness certificates.
SuiteReport oracle_equivalence(std::uint64_t seed, int instances = 500);

/// 6: interval witness reproduction at iota = 0.1 and iota monotonicity.
SuiteReport proposition_reproduction();

/// 7: finite-state condition against becomes_worse and a nested-loop checker.
SuiteReport remark_specialization(std::uint64_t seed, int binary = 200, int multi = 100);

/// 8: criteria 3-5 (reduced sizes) run twice; reports whether the texts match.
SuiteReport determinism(std::uint64_t seed);

struct Criterion {
    int id = 0;
    std::string name;
    std::function<SuiteReport()> run;
};

/// Criteria 1-8 at their full sizes, bound to `seed`.
std::vector<Criterion> acceptance_criteria(std::uint64_t seed);

/// Runs one criterion; library errors become a failed report.
SuiteReport run_criterion(const Criterion& c);

}  // namespace seucal::suites
