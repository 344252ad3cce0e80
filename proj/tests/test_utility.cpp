#include <cmath>

#include "seucal/scaled.hpp"
#include "seucal/utility.hpp"
#include "test_support.hpp"

using namespace seucal;

TEST_SUITE("utility") {

TEST_CASE("large-k witness at k=1 with unit kinks") {
    const auto u = theorem_witness(1.0, {1.0, 1.0});
    CHECK(eval(u, 0.0) == 0.0);
    CHECK(eval(u, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(eval(u, -1.0) == doctest::Approx(-1.0).epsilon(1e-15));
    // mpmath: 1 + e^-1 - e^-2 and -1 + e - e^2.
    CHECK(eval(u, 2.0) == doctest::Approx(1.2325441579348296297).epsilon(1e-14));
    CHECK(eval(u, -2.0) == doctest::Approx(-5.6707742704716049919).epsilon(1e-14));
}

TEST_CASE("large-k witness is the identity between the kinks") {
    const auto u = theorem_witness(2.0, {0.5, 0.5});
    CHECK(eval(u, 0.25) == 0.25);
    CHECK(eval(u, -0.4) == -0.4);
}

TEST_CASE("large-k witness rejects k below one") {
    CHECK_ERROR_CODE(theorem_witness(0.5, {1.0, 1.0}), ErrorCode::InvalidK);
}

TEST_CASE("large-k witness validates wherever it is concave") {
    for (double k : {1.0, 2.0, 4.0, 16.0, 64.0, 256.0}) {
        CAPTURE(k);
        const Gamble kinks{1.0, 1.0};
        REQUIRE(theorem_witness_is_concave(k, kinks));
        CHECK(validate(theorem_witness(k, kinks), 1e-2).passed());
    }
    // Upper-kink slope k e^{-k a} exceeds one for small a and moderate k.
    const Gamble small{0.2, 1.0};
    CHECK_FALSE(theorem_witness_is_concave(2.0, small));
    CHECK_FALSE(validate(theorem_witness(2.0, small), 1e-3).concave());
    CHECK(theorem_witness_is_concave(64.0, small));
}

TEST_CASE("increments stay finite where values overflow") {
    const auto u = theorem_witness(512.0, {1.0, 1.0});
    const Scaled d = increment(u, -3.0, -2.0);
    CHECK(d.sign() > 0);
    // u(-2) - u(-3) = e^{1536} - e^{1024}; log is 1536 + log1p(-e^{-512}).
    CHECK(d.log_abs() == doctest::Approx(1536.0).epsilon(1e-15));
    CHECK(std::isinf(std::exp(d.log_abs())));
}

TEST_CASE("interval witness pieces") {
    const Gamble r_hat{1.0, 1.0};
    const auto id = proposition_witness(1.0, 0.0, r_hat);
    for (double x : {-5.0, -1.0, 0.0, 2.5}) CHECK(eval(id, x) == doctest::Approx(x));

    const auto u = proposition_witness(0.1, 0.0, r_hat);
    CHECK(eval(u, 0.0) == doctest::Approx(-0.9).epsilon(1e-15));
    CHECK(eval(u, -1.0) == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(eval(u, -3.0) == doctest::Approx(-3.0).epsilon(1e-15));
    CHECK(validate(u, 1e-2).passed());

    CHECK_ERROR_CODE(proposition_witness(0.0, 0.0, r_hat), ErrorCode::InvalidIota);
    CHECK_ERROR_CODE(proposition_witness(1.5, 0.0, r_hat), ErrorCode::InvalidIota);
}

TEST_CASE("validate reports each failure kind") {
    CHECK(validate(PiecewiseUtility::identity(), 0.1).passed());

    const PiecewiseUtility convex({0.0}, {LinearSegment{1.0, 0.0}, LinearSegment{2.0, 0.0}});
    const auto rep = validate(convex, 0.1);
    CHECK(rep.continuous());
    CHECK(rep.increasing());
    CHECK_FALSE(rep.concave());

    const PiecewiseUtility jump({0.0}, {LinearSegment{1.0, 0.0}, LinearSegment{0.5, 1.0}});
    CHECK_FALSE(validate(jump, 0.1).continuous());

    const PiecewiseUtility flat({0.0}, {LinearSegment{1.0, 0.0}, LinearSegment{0.0, 0.0}});
    CHECK_FALSE(validate(flat, 0.1).increasing());
}

TEST_CASE("piecewise utilities need matching breakpoints and segments") {
    CHECK_ERROR_CODE(PiecewiseUtility({0.0}, {LinearSegment{}}), ErrorCode::InvalidUtility);
    CHECK_ERROR_CODE(PiecewiseUtility({1.0, 0.0}, {LinearSegment{}, LinearSegment{}, LinearSegment{}}),
                     ErrorCode::InvalidUtility);
}

TEST_CASE("breakpoints belong to the right-hand segment") {
    const PiecewiseUtility u({0.0}, {LinearSegment{2.0, 0.0}, LinearSegment{1.0, 0.0}});
    CHECK(u.segment_index(-1e-12) == 0);
    CHECK(u.segment_index(0.0) == 1);
    CHECK(log_derivative(u, 0.0) == doctest::Approx(0.0));
    CHECK(log_derivative(u, 0.0, true) == doctest::Approx(std::log(2.0)));
}

TEST_CASE("translation shifts the argument") {
    const auto u = theorem_witness(4.0, {1.0, 2.0});
    const auto v = u.translated(3.0);
    for (double x : {-6.0, -1.0, 0.5, 2.0, 7.0}) {
        CAPTURE(x);
        CHECK(eval(v, x + 3.0) == doctest::Approx(eval(u, x)).epsilon(1e-13));
    }
}

TEST_CASE("piecewise-linear interpolation") {
    const auto u = piecewise_linear({0.0, 1.0, 3.0}, {0.0, 2.0, 3.0});
    CHECK(eval(u, 0.5) == doctest::Approx(1.0));
    CHECK(eval(u, 2.0) == doctest::Approx(2.5));
    CHECK(eval(u, 4.0) == doctest::Approx(3.5));
    CHECK_ERROR_CODE(piecewise_linear({0.0, 0.0}, {0.0, 1.0}), ErrorCode::InvalidUtility);
}

TEST_CASE("scaled arithmetic") {
    const auto a = Scaled::from_log(1.0, 1000.0);
    const auto b = Scaled::from_log(1.0, 999.0);
    CHECK(ratio(b, a) == doctest::Approx(std::exp(-1.0)));
    CHECK(compare(a, b) > 0);
    CHECK((a - a).sign() == 0);
    CHECK(ratio(a + b, a) == doctest::Approx(1.0 + std::exp(-1.0)));
    CHECK(Scaled(3.0).value() == 3.0);
}

}  // TEST_SUITE
