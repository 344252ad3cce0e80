#include "seucal/calibration.hpp"
#include "seucal/oracle.hpp"
#include "seucal/preference.hpp"
#include "test_support.hpp"

using namespace seucal;

namespace {

Scenario make(Gamble r, Gamble r_hat, WealthSet::List w) {
    Scenario sc;
    sc.r = r;
    sc.r_hat = r_hat;
    sc.wealth = WealthSet::list(std::move(w));
    return sc;
}

}  // namespace

TEST_SUITE("oracle") {

TEST_CASE("identical gambles never flip") {
    const auto sc = make({1.0, 1.0}, {1.0, 1.0}, {0.0});
    for (double mu : {0.1, 0.5, 0.9}) {
        const auto sol = feasible_at_belief(sc, Belief(mu), 0.0);
        if (sol) CHECK(sol->margin <= 10.0 * sc.tolerance);
    }
}

TEST_CASE("safer gamble flips at mu = 0.65") {
    const auto sc = make({2.0, 2.0}, {1.0, 1.0}, {0.0});
    const auto sol = feasible_at_belief(sc, Belief(0.65), 0.0);
    REQUIRE(sol);
    CHECK(sol->margin > 10.0 * sc.tolerance);

    const auto cert = std::get<WitnessCertificate>(find_witness(sc));
    const auto point = check_lp_point(sc, cert.belief, cert.shift, cert.utility.u0);
    CHECK(point.structurally_feasible());
    CHECK(point.margin > 0.0);
}

TEST_CASE("risk-neutral certificate is an LP point") {
    const auto sc = make({1.0, 1.0}, {3.0, 1.0}, {0.0});
    const auto sol = feasible_at_belief(sc, Belief(0.375), 0.0);
    REQUIRE(sol);
    CHECK(sol->margin > 0.0);
    const auto point = check_lp_point(sc, Belief(0.375), 0.0, PiecewiseUtility::identity());
    CHECK(point.feasible());
    CHECK(point.margin == doctest::Approx(0.125));
}

TEST_CASE("LP solutions re-evaluate through the preference module") {
    const auto sc = make({2.0, 2.0}, {1.0, 1.0}, {-1.0, 0.0, 1.0});
    const auto sol = feasible_at_belief(sc, Belief(0.6), 0.0);
    REQUIRE(sol);
    const auto su = StateUtility::independent(solution_utility(*sol));
    CHECK(validate(su.u0, 1e-2, 1e-9).passed());
    for (double w : sc.wealth.sample()) {
        CHECK(prefers_safe(su, Belief(0.6), w, sc.r, false, 1e-7));
    }
    const double gain = seu_value(su, Belief(0.6), 0.0, sc.r_hat) - seu_value(su, Belief(0.6), 0.0, Safe{});
    CHECK(gain == doctest::Approx(sol->margin).epsilon(1e-6));
}

TEST_CASE("LP row bookkeeping") {
    const auto sc = make({2.0, 2.0}, {1.0, 1.0}, {0.0, 1.0});
    const auto lp = build_lp(sc, Belief(0.5), 0.0);
    const std::size_t vars = lp.nodes.size() - 1;
    CHECK(lp.monotonicity_rows == vars);
    CHECK(lp.concavity_rows == vars - 1);
    CHECK(lp.preference_rows == 2);
    CHECK(lp.normalization_rows == 2);
    CHECK(lp.a.size() == lp.b.size());
    CHECK(lp.a.size() == vars + (vars - 1) + 2 + 2);
    CHECK(lp.node_index(1.0) < lp.nodes.size());
}

TEST_CASE("oracle decisions") {
    CHECK(must_remain_optimal_oracle(make({2.0, 1.0}, {1.0, 1.0}, {0.0, 1.0})).must_remain_optimal);
    CHECK(must_remain_optimal_oracle(make({1.0, 1.0}, {1.0, 1.5}, {0.0})).must_remain_optimal);

    const auto res = must_remain_optimal_oracle(make({2.0, 2.0}, {1.0, 1.0}, {0.0}));
    CHECK_FALSE(res.must_remain_optimal);
    REQUIRE(res.evidence);
    CHECK(res.evidence->flip_wealth == 0.0);
    CHECK(res.evidence->mu > 0.5);
    CHECK(res.evidence->solution.margin > 1e-8);
}

TEST_CASE("LP point check rejects convex utilities") {
    const auto sc = make({2.0, 2.0}, {1.0, 1.0}, {0.0});
    const PiecewiseUtility convex({0.0}, {LinearSegment{1.0, 0.0}, LinearSegment{2.0, 0.0}});
    CHECK_FALSE(check_lp_point(sc, Belief(0.5), 0.0, convex).concave);
}

}  // TEST_SUITE
