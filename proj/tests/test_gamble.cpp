#include <cmath>
#include <limits>

#include "seucal/gamble.hpp"
#include "test_support.hpp"

using namespace seucal;

TEST_SUITE("gamble") {

TEST_CASE("validate_gamble accepts positive stakes and rejects the rest") {
    CHECK(validate_gamble({2.0, 1.0}) == Gamble{2.0, 1.0});
    CHECK_ERROR_CODE(validate_gamble({0.0, 1.0}), ErrorCode::NonPositiveStake);
    CHECK_ERROR_CODE(validate_gamble({1.0, -1.0}), ErrorCode::NonPositiveStake);
    CHECK_ERROR_CODE(validate_gamble({std::nan(""), 1.0}), ErrorCode::NonPositiveStake);
    CHECK_ERROR_CODE(validate_gamble({1.0, std::numeric_limits<double>::infinity()}),
                     ErrorCode::NonPositiveStake);
}

TEST_CASE("beliefs live in the closed unit interval") {
    CHECK(Belief(0.0).mu() == 0.0);
    CHECK(Belief(1.0).mu() == 1.0);
    CHECK_ERROR_CODE(Belief(-0.1), ErrorCode::InvalidBelief);
    CHECK_ERROR_CODE(Belief(1.5), ErrorCode::InvalidBelief);
    CHECK_ERROR_CODE(Belief(std::nan("")), ErrorCode::InvalidBelief);
}

TEST_CASE("general gambles partition states by payoff sign") {
    const GeneralGamble g({{1.0, 2.0}, {2.0, 4.0}, {3.0, -2.0}, {4.0, 0.0}});
    CHECK(g.gain_states() == std::vector<double>{1.0, 2.0});
    CHECK(g.loss_states() == std::vector<double>{3.0});
    CHECK(g.zero_states() == std::vector<double>{4.0});
    CHECK(g.payoff(3.0) == -2.0);
    CHECK_ERROR_CODE(g.payoff(9.0), ErrorCode::InvalidScenario);

    const auto b = GeneralGamble::from_binary({2.0, 1.0});
    CHECK(b.payoff(0.0) == -1.0);
    CHECK(b.payoff(1.0) == 2.0);
}

TEST_CASE("interval wealth sets include both ends without drift") {
    const auto pts = WealthSet::interval(-6.0, 6.0, 0.01).sample();
    CHECK(pts.size() == 1201);
    CHECK(pts.front() == -6.0);
    CHECK(pts.back() == 6.0);
    CHECK(pts[600] == doctest::Approx(0.0).epsilon(1e-15));

    const auto ragged = WealthSet::interval(0.0, 1.0, 0.3).sample();
    CHECK(ragged == std::vector<double>{0.0, 0.3, 0.6, 0.8999999999999999, 1.0});

    CHECK(WealthSet::interval(2.0, 2.0, 0.5).sample() == std::vector<double>{2.0});
}

TEST_CASE("list wealth sets are sorted and de-duplicated") {
    const auto ws = WealthSet::list({1.0, -1.0, 1.0});
    CHECK(ws.sample() == std::vector<double>{-1.0, 1.0});
    CHECK(ws.min() == -1.0);
    CHECK(ws.max() == 1.0);
}

TEST_CASE("invalid wealth sets are rejected") {
    CHECK_ERROR_CODE(WealthSet::list({}), ErrorCode::InvalidWealthSet);
    CHECK_ERROR_CODE(WealthSet::interval(1.0, 0.0, 0.1), ErrorCode::InvalidWealthSet);
    CHECK_ERROR_CODE(WealthSet::interval(0.0, 1.0, 0.0), ErrorCode::InvalidWealthSet);
    CHECK_ERROR_CODE(WealthSet::list({std::nan("")}), ErrorCode::InvalidWealthSet);
}

TEST_CASE("scenario validation") {
    Scenario s;
    s.r = {2.0, 2.0};
    s.r_hat = {1.0, 1.0};
    CHECK(validate_scenario(s) == s);

    Scenario bad = s;
    bad.tolerance = -1.0;
    CHECK_ERROR_CODE(validate_scenario(bad), ErrorCode::InvalidScenario);
    bad = s;
    bad.belief_grid_step = 0.7;
    CHECK_ERROR_CODE(validate_scenario(bad), ErrorCode::InvalidScenario);
    bad = s;
    bad.k_max = 0.5;
    CHECK_ERROR_CODE(validate_scenario(bad), ErrorCode::InvalidScenario);
    bad = s;
    bad.r = {0.0, 1.0};
    CHECK_ERROR_CODE(validate_scenario(bad), ErrorCode::NonPositiveStake);
}

}  // TEST_SUITE
