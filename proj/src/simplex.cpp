#include "seucal/simplex.hpp"

#include <cmath>
#include <limits>
#include <utility>

#include "seucal/error.hpp"

namespace seucal {

namespace {

// Tableau layout: rows 0..m-1 constraints, row m objective, row m+1 phase-one
// objective. Columns 0..n-1 nonbasic variables, column n the artificial
// variable, column n+1 the right-hand side. Variable ids: 0..n-1 original,
// n..n+m-1 slacks, -1 artificial.
class Tableau {
public:
    Tableau(const std::vector<std::vector<double>>& a, const std::vector<double>& b,
            const std::vector<double>& c, double eps)
        : m_(static_cast<int>(b.size())),
          n_(static_cast<int>(c.size())),
          eps_(eps),
          nonbasic_(n_ + 1),
          basic_(m_),
          d_(m_ + 2, std::vector<double>(n_ + 2, 0.0)) {
        for (int i = 0; i < m_; ++i) {
            if (static_cast<int>(a[i].size()) != n_) {
                throw Error(ErrorCode::NumericFailure, "LP row width does not match objective");
            }
            for (int j = 0; j < n_; ++j) d_[i][j] = a[i][j];
            basic_[i] = n_ + i;
            d_[i][n_] = -1.0;
            d_[i][n_ + 1] = b[i];
        }
        for (int j = 0; j < n_; ++j) {
            nonbasic_[j] = j;
            d_[m_][j] = -c[j];
        }
        nonbasic_[n_] = -1;
        d_[m_ + 1][n_] = 1.0;
    }

    LpResult solve() {
        LpResult out;
        int r = 0;
        for (int i = 1; i < m_; ++i) {
            if (d_[i][n_ + 1] < d_[r][n_ + 1]) r = i;
        }
        if (m_ > 0 && d_[r][n_ + 1] < -eps_) {
            pivot(r, n_);
            if (!run(2) || d_[m_ + 1][n_ + 1] < -eps_) {
                out.status = LpStatus::Infeasible;
                return out;
            }
            // Drive the artificial variable out of the basis if it stayed.
            for (int i = 0; i < m_; ++i) {
                if (basic_[i] != -1) continue;
                int s = 0;
                for (int j = 1; j <= n_; ++j) {
                    if (std::make_pair(d_[i][j], nonbasic_[j]) <
                        std::make_pair(d_[i][s], nonbasic_[s])) {
                        s = j;
                    }
                }
                pivot(i, s);
            }
        }
        const bool bounded = run(1);
        out.x.assign(n_, 0.0);
        for (int i = 0; i < m_; ++i) {
            if (basic_[i] >= 0 && basic_[i] < n_) out.x[basic_[i]] = d_[i][n_ + 1];
        }
        out.status = bounded ? LpStatus::Optimal : LpStatus::Unbounded;
        out.objective = bounded ? d_[m_][n_ + 1] : std::numeric_limits<double>::infinity();
        return out;
    }

private:
    void pivot(int r, int s) {
        const double inv = 1.0 / d_[r][s];
        for (int i = 0; i < m_ + 2; ++i) {
            if (i == r || std::abs(d_[i][s]) <= eps_) continue;
            const double factor = d_[i][s] * inv;
            for (int j = 0; j < n_ + 2; ++j) d_[i][j] -= d_[r][j] * factor;
            d_[i][s] = d_[r][s] * factor;
        }
        for (int j = 0; j < n_ + 2; ++j) {
            if (j != s) d_[r][j] *= inv;
        }
        for (int i = 0; i < m_ + 2; ++i) {
            if (i != r) d_[i][s] *= -inv;
        }
        d_[r][s] = inv;
        std::swap(basic_[r], nonbasic_[s]);
    }

    // phase 1 optimizes row m (the real objective), phase 2 row m+1.
    bool run(int phase) {
        const int x = m_ + phase - 1;
        for (;;) {
            int s = -1;
            for (int j = 0; j <= n_; ++j) {
                if (nonbasic_[j] == -phase) continue;
                if (s == -1 || std::make_pair(d_[x][j], nonbasic_[j]) <
                                   std::make_pair(d_[x][s], nonbasic_[s])) {
                    s = j;
                }
            }
            if (d_[x][s] >= -eps_) return true;
            int r = -1;
            for (int i = 0; i < m_; ++i) {
                if (d_[i][s] <= eps_) continue;
                if (r == -1 || std::make_pair(d_[i][n_ + 1] / d_[i][s], basic_[i]) <
                                   std::make_pair(d_[r][n_ + 1] / d_[r][s], basic_[r])) {
                    r = i;
                }
            }
            if (r == -1) return false;
            pivot(r, s);
        }
    }

    int m_;
    int n_;
    double eps_;
    std::vector<int> nonbasic_;
    std::vector<int> basic_;
    std::vector<std::vector<double>> d_;
};

}  // namespace

LpResult solve_lp(const std::vector<std::vector<double>>& a, const std::vector<double>& b,
                  const std::vector<double>& c, double eps) {
    if (a.size() != b.size()) {
        throw Error(ErrorCode::NumericFailure, "LP needs one right-hand side per row");
    }
    return Tableau(a, b, c, eps).solve();
}

}  // namespace seucal
