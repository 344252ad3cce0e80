#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

namespace seucal {

/// A real number stored as mantissa * exp(log_scale).
///
/// Utility differences on the CARA tails of the large-k witness reach
/// exp(k*|w|) for k in the hundreds; only their ratios are meaningful, so
/// differences are carried in this form and divided before collapsing to a
/// double.
class Scaled {
public:
    constexpr Scaled() = default;
    constexpr Scaled(double value) : mantissa_(value) {}  // NOLINT: implicit by intent

    static Scaled from_log(double mantissa, double log_scale) {
        Scaled s;
        s.mantissa_ = mantissa;
        s.log_scale_ = mantissa == 0.0 ? 0.0 : log_scale;
        return s;
    }

    double mantissa() const noexcept { return mantissa_; }
    double log_scale() const noexcept { return log_scale_; }

    int sign() const noexcept { return (mantissa_ > 0.0) - (mantissa_ < 0.0); }

    /// Collapses to a double; overflows to +-inf, underflows to 0.
    double value() const { return mantissa_ * std::exp(log_scale_); }

    /// log|x|; -inf for zero.
    double log_abs() const {
        return mantissa_ == 0.0 ? -std::numeric_limits<double>::infinity()
                                : std::log(std::abs(mantissa_)) + log_scale_;
    }

    Scaled operator-() const { return from_log(-mantissa_, log_scale_); }

    friend Scaled operator+(const Scaled& a, const Scaled& b) {
        if (a.mantissa_ == 0.0) return b;
        if (b.mantissa_ == 0.0) return a;
        const double top = std::max(a.log_scale_, b.log_scale_);
        const double m = a.mantissa_ * std::exp(a.log_scale_ - top) +
                         b.mantissa_ * std::exp(b.log_scale_ - top);
        return from_log(m, top);
    }

    friend Scaled operator-(const Scaled& a, const Scaled& b) { return a + (-b); }

    friend Scaled operator*(const Scaled& a, double c) {
        return from_log(a.mantissa_ * c, a.log_scale_);
    }
    friend Scaled operator*(double c, const Scaled& a) { return a * c; }

    Scaled& operator+=(const Scaled& other) { return *this = *this + other; }

    /// a / b as a double; both operands may be far outside double range.
    friend double ratio(const Scaled& a, const Scaled& b) {
        return (a.mantissa_ / b.mantissa_) * std::exp(a.log_scale_ - b.log_scale_);
    }

    /// Exact three-way comparison in the real line.
    friend int compare(const Scaled& a, const Scaled& b) { return (a - b).sign(); }

private:
    double mantissa_ = 0.0;
    double log_scale_ = 0.0;
};

}  // namespace seucal
