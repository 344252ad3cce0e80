#include <cmath>
#include <limits>
#include <optional>

#include "seucal/simplex.hpp"
#include "seucal/suites.hpp"
#include "test_support.hpp"

using namespace seucal;

namespace {

using Matrix = std::vector<std::vector<double>>;

std::optional<std::vector<double>> solve_square(Matrix m, std::vector<double> rhs) {
    const std::size_t n = rhs.size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r) {
            if (std::abs(m[r][c]) > std::abs(m[piv][c])) piv = r;
        }
        if (std::abs(m[piv][c]) < 1e-12) return std::nullopt;
        std::swap(m[c], m[piv]);
        std::swap(rhs[c], rhs[piv]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c) continue;
            const double f = m[r][c] / m[c][c];
            for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
            rhs[r] -= f * rhs[c];
        }
    }
    for (std::size_t i = 0; i < n; ++i) rhs[i] /= m[i][i];
    return rhs;
}

// Best vertex of {Ax <= b, x >= 0}, by enumerating every choice of n tight
// constraints. Assumes the region is bounded.
std::optional<double> brute_force(const Matrix& a, const std::vector<double>& b,
                                  const std::vector<double>& c) {
    const std::size_t n = c.size();
    Matrix rows = a;
    std::vector<double> rhs = b;
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<double> e(n, 0.0);
        e[j] = -1.0;
        rows.push_back(e);
        rhs.push_back(0.0);
    }
    const std::size_t m = rows.size();
    std::optional<double> best;
    std::vector<std::size_t> pick(n);
    for (std::size_t i = 0; i < n; ++i) pick[i] = i;
    while (true) {
        Matrix sq;
        std::vector<double> sr;
        for (auto i : pick) {
            sq.push_back(rows[i]);
            sr.push_back(rhs[i]);
        }
        if (auto x = solve_square(sq, sr)) {
            bool ok = true;
            for (std::size_t i = 0; i < m && ok; ++i) {
                double lhs = 0.0;
                for (std::size_t j = 0; j < n; ++j) lhs += rows[i][j] * (*x)[j];
                ok = lhs <= rhs[i] + 1e-9;
            }
            if (ok) {
                double obj = 0.0;
                for (std::size_t j = 0; j < n; ++j) obj += c[j] * (*x)[j];
                if (!best || obj > *best) best = obj;
            }
        }
        std::size_t i = n;
        while (i > 0 && pick[i - 1] == m - n + i - 1) --i;
        if (i == 0) break;
        ++pick[i - 1];
        for (std::size_t j = i; j < n; ++j) pick[j] = pick[j - 1] + 1;
    }
    return best;
}

}  // namespace

TEST_SUITE("simplex") {

TEST_CASE("textbook optimum") {
    const auto res = solve_lp({{1, 0}, {0, 2}, {3, 2}}, {4, 12, 18}, {3, 5});
    REQUIRE(res.status == LpStatus::Optimal);
    CHECK(res.objective == doctest::Approx(36.0));
    CHECK(res.x[0] == doctest::Approx(2.0));
    CHECK(res.x[1] == doctest::Approx(6.0));
}

TEST_CASE("negative right-hand sides go through phase one") {
    // x >= 1, y >= 2, x + y <= 5; maximize -x - y.
    const auto res = solve_lp({{-1, 0}, {0, -1}, {1, 1}}, {-1, -2, 5}, {-1, -1});
    REQUIRE(res.status == LpStatus::Optimal);
    CHECK(res.objective == doctest::Approx(-3.0));
}

TEST_CASE("infeasible and unbounded") {
    CHECK(solve_lp({{1}, {-1}}, {1, -2}, {1}).status == LpStatus::Infeasible);
    CHECK(solve_lp({{-1}}, {0}, {1}).status == LpStatus::Unbounded);
}

TEST_CASE("degenerate problems terminate") {
    const auto res = solve_lp({{1, 1}, {1, -1}, {-1, 1}, {1, 0}}, {0, 0, 0, 0}, {1, 1});
    REQUIRE(res.status == LpStatus::Optimal);
    CHECK(res.objective == doctest::Approx(0.0));
}

TEST_CASE("matches vertex enumeration on random bounded problems") {
    suites::Rng rng(99);
    for (int trial = 0; trial < 300; ++trial) {
        const auto n = static_cast<std::size_t>(rng.integer(1, 3));
        const auto m = static_cast<std::size_t>(rng.integer(1, 4));
        Matrix a;
        std::vector<double> b;
        for (std::size_t i = 0; i < m; ++i) {
            std::vector<double> row(n);
            for (auto& v : row) v = static_cast<double>(rng.integer(-4, 4));
            a.push_back(row);
            b.push_back(static_cast<double>(rng.integer(-3, 8)));
        }
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<double> row(n, 0.0);
            row[j] = 1.0;
            a.push_back(row);
            b.push_back(10.0);
        }
        std::vector<double> c(n);
        for (auto& v : c) v = static_cast<double>(rng.integer(-5, 5));
        CAPTURE(trial);
        const auto expected = brute_force(a, b, c);
        const auto res = solve_lp(a, b, c);
        if (!expected) {
            CHECK(res.status == LpStatus::Infeasible);
        } else {
            REQUIRE(res.status == LpStatus::Optimal);
            CHECK(res.objective == doctest::Approx(*expected).epsilon(1e-9));
        }
    }
}

}  // TEST_SUITE
