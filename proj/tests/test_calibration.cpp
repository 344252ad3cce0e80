#include <cmath>

#include "seucal/calibration.hpp"
#include "seucal/suites.hpp"
#include "test_support.hpp"

using namespace seucal;

TEST_SUITE("calibration") {

TEST_CASE("actuarial worsening") {
    CHECK(actuarial_worsening({2.0, 1.0}, {1.0, 1.0}));
    CHECK_FALSE(actuarial_worsening({1.0, 1.0}, {3.0, 1.0}));
    CHECK(actuarial_worsening({2.0, 2.0}, {1.0, 1.0}));
    // Equal ratios that differ after rounding.
    CHECK(actuarial_worsening({0.3, 0.1}, {0.9, 0.3}));
}

TEST_CASE("becomes worse") {
    CHECK(becomes_worse({1.0, 1.0}, {1.0, 1.0}));
    CHECK_FALSE(becomes_worse({2.0, 2.0}, {1.0, 1.0}));
    CHECK_FALSE(becomes_worse({1.0, 1.0}, {3.0, 1.0}));
    CHECK(becomes_worse({1.0, 1.0}, {1.0, 1.5}));
}

TEST_CASE("finite-state condition") {
    const GeneralGamble r({{1.0, 2.0}, {2.0, 4.0}, {3.0, -2.0}});
    CHECK(remark_condition(r, GeneralGamble({{1.0, 1.0}, {2.0, 2.0}, {3.0, -2.0}})));
    CHECK_FALSE(remark_condition(r, GeneralGamble({{1.0, 3.0}, {2.0, 2.0}, {3.0, -2.0}})));
    CHECK_ERROR_CODE(remark_condition(r, GeneralGamble({{1.0, 1.0}, {2.0, -2.0}, {3.0, -2.0}})),
                     ErrorCode::PartitionMismatch);
    CHECK_ERROR_CODE(remark_condition(r, GeneralGamble({{1.0, 1.0}, {3.0, -2.0}})),
                     ErrorCode::PartitionMismatch);
}

TEST_CASE("find_witness: risk-neutral branch") {
    Scenario sc;
    sc.r = {1.0, 1.0};
    sc.r_hat = {3.0, 1.0};
    sc.wealth = WealthSet::interval(-5.0, 5.0, 0.5);
    const auto res = find_witness(sc);
    const auto& cert = std::get<WitnessCertificate>(res);
    CHECK(std::holds_alternative<RiskNeutralWitness>(cert.kind));
    CHECK(cert.belief.mu() == doctest::Approx(0.375));
    const auto check = check_certificate(cert);
    CHECK(check.ok());
    CHECK(check.min_safe_margin > 0.0);
}

TEST_CASE("find_witness: large-k branch") {
    Scenario sc;
    sc.r = {2.0, 2.0};
    sc.r_hat = {1.0, 1.0};
    sc.wealth = WealthSet::interval(-10.0, 10.0, 0.05);
    const auto cert = std::get<WitnessCertificate>(find_witness(sc));
    REQUIRE(std::holds_alternative<LargeKWitness>(cert.kind));
    CHECK(cert.belief.mu() > 0.5);
    CHECK(cert.belief.mu() < 1.0);
    CHECK(cert.shift == doctest::Approx(0.0));
    REQUIRE(cert.flips.size() == 1);
    CHECK(cert.flips[0].hat_over_safe > 10.0 * sc.tolerance);
    CHECK(check_certificate(cert).ok());
}

TEST_CASE("find_witness: worse gamble needs no search") {
    Scenario sc;
    sc.r = {1.0, 1.0};
    sc.r_hat = {1.0, 1.0};
    CHECK(std::holds_alternative<MustRemainOptimal>(find_witness(sc)));
}

TEST_CASE("find_witness normalizes wealth sets away from zero") {
    Scenario sc;
    sc.r = {2.0, 2.0};
    sc.r_hat = {1.0, 1.0};
    sc.wealth = WealthSet::list({3.0, 4.0, 7.5});
    const auto cert = std::get<WitnessCertificate>(find_witness(sc));
    CHECK(cert.shift == 3.0);
    CHECK(check_certificate(cert).ok());
}

TEST_CASE("find_witness reports an exhausted ladder") {
    Scenario sc;
    sc.r = {2.0, 2.0};
    sc.r_hat = {1.0, 1.0};
    sc.wealth = WealthSet::interval(-10.0, 10.0, 0.05);
    sc.k_max = 1.0;
    sc.tolerance = 0.05;
    CHECK_ERROR_CODE(find_witness(sc), ErrorCode::SearchExhausted);
}

TEST_CASE("tampered certificates fail the re-check") {
    Scenario sc;
    sc.r = {2.0, 2.0};
    sc.r_hat = {1.0, 1.0};
    sc.wealth = WealthSet::interval(-2.0, 2.0, 0.5);
    auto cert = std::get<WitnessCertificate>(find_witness(sc));
    cert.belief = Belief(0.999);
    CHECK_FALSE(check_certificate(cert).ok());
    cert.belief = Belief(0.45);
    CHECK_FALSE(check_certificate(cert).strict_flip);
}

TEST_CASE("interval witness at iota = 0.1") {
    const Gamble r{2.0, 2.0};
    const Gamble r_hat{1.0, 1.0};
    CHECK(std::abs(interval_r_belief(0.1, 0.0, 0.0, r, r_hat) - 1.1 / 1.3) <= 1e-12);
    const auto at_zero = interval_witness_at(0.1, r, r_hat, 0.0, 0.0, 0.01);
    // Midpoint of 0.5 and 1.1/1.3 (mpmath: 0.67307692307692307692).
    CHECK(at_zero.belief.mu() == doctest::Approx(0.67307692307692307692).epsilon(1e-14));
    const auto cert = interval_witness_at(0.1, r, r_hat, 0.0, 0.5, 0.01);
    CHECK(check_certificate(cert).ok());
    CHECK(cert.verified.size() == 51);
}

TEST_CASE("interval witness preconditions") {
    CHECK_ERROR_CODE(interval_witness({1.0, 1.0}, {1.0, 1.0}, 0.0, 1.0, 0.1),
                     ErrorCode::PreconditionViolated);
    CHECK_ERROR_CODE(interval_witness({2.0, 2.0}, {1.0, 1.0}, 0.0, 1.0, 0.1),
                     ErrorCode::IntervalTooWide);
    const auto rn = interval_witness({1.0, 1.0}, {3.0, 1.0}, -3.0, 3.0, 0.5);
    CHECK(std::holds_alternative<RiskNeutralWitness>(rn.kind));
    CHECK(rn.belief.mu() == doctest::Approx(0.375));
}

TEST_CASE("interval belief rises as iota falls") {
    const Gamble r{2.0, 2.0};
    const Gamble r_hat{1.0, 1.0};
    double prev = 0.0;
    for (double iota : {1.0, 0.5, 0.1, 0.01}) {
        const double b = interval_r_belief(iota, 0.25, 0.0, r, r_hat);
        CHECK(b > prev);
        prev = b;
    }
}

TEST_CASE("sufficiency chain") {
    const auto id = StateUtility::independent(PiecewiseUtility::identity());
    const auto chain = sufficiency_chain_check(id, {2.0, 1.0}, {1.0, 1.0}, 0.0);
    REQUIRE_FALSE(chain.values.empty());
    CHECK(chain.values.front() == doctest::Approx(0.5));
    CHECK(chain.values.back() == doctest::Approx(1.0 / 3.0));
    CHECK(chain.worst_increase() <= 1e-15);

    const auto dom = sufficiency_chain_check(id, {2.0, 1.0}, {1.0, 2.0}, 0.0);
    CHECK(dom.dominance);
    CHECK(dom.values.front() == doctest::Approx(2.0 / 3.0));
    CHECK(dom.values.back() == doctest::Approx(1.0 / 3.0));

    suites::Rng rng(7);
    for (int i = 0; i < 200; ++i) {
        const StateUtility su{suites::random_concave_utility(rng, 0.3),
                              suites::random_concave_utility(rng, 0.3)};
        CHECK(sufficiency_chain_check(su, {2.0, 1.0}, {1.5, 1.2}, 0.3).worst_increase() <= 1e-10);
    }

    CHECK_ERROR_CODE(sufficiency_chain_check(id, {2.0, 2.0}, {1.0, 1.0}, 0.0),
                     ErrorCode::PreconditionViolated);
}

TEST_CASE("witness k ladder skips non-concave rates") {
    const auto ladder = witness_k_ladder(64.0, {0.2, 1.0});
    REQUIRE_FALSE(ladder.empty());
    for (double k : ladder) CHECK(theorem_witness_is_concave(k, {0.2, 1.0}));
    CHECK(ladder.back() == 64.0);
    CHECK(witness_k_ladder(256.0, {1.0, 1.0}).size() == 9);
}

}  // TEST_SUITE
