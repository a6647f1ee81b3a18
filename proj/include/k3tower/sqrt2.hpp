#pragma once

/**
 * @file sqrt2.hpp
 * @brief Exact arithmetic in Z[sqrt 2, 1/2].
 *
 * A value is (a + b*sqrt2) / 2^k with integers a, b and k >= 0, kept reduced:
 * a and b are not both even while k > 0.
 */

#include <cmath>
#include <cstdint>
#include <string>

namespace k3tower {

class Sqrt2Scalar {
public:
    constexpr Sqrt2Scalar() = default;
    constexpr Sqrt2Scalar(std::int64_t a, std::int64_t b = 0, int k = 0) : a_(a), b_(b), k_(k) { reduce(); }

    static constexpr Sqrt2Scalar sqrt2() { return {0, 1, 0}; }
    /// 1/sqrt2 = sqrt2/2
    static constexpr Sqrt2Scalar inv_sqrt2() { return {0, 1, 1}; }

    constexpr std::int64_t rational_part() const { return a_; }
    constexpr std::int64_t sqrt2_part() const { return b_; }
    constexpr int denominator_exponent() const { return k_; }

    constexpr bool is_zero() const { return a_ == 0 && b_ == 0; }
    constexpr bool is_integer() const { return b_ == 0 && k_ == 0; }

    double to_double() const { return (static_cast<double>(a_) + static_cast<double>(b_) * std::sqrt(2.0)) / std::ldexp(1.0, k_); }

    friend constexpr Sqrt2Scalar operator+(const Sqrt2Scalar& x, const Sqrt2Scalar& y) {
        const int k = x.k_ > y.k_ ? x.k_ : y.k_;
        const std::int64_t sx = std::int64_t{1} << (k - x.k_);
        const std::int64_t sy = std::int64_t{1} << (k - y.k_);
        return {x.a_ * sx + y.a_ * sy, x.b_ * sx + y.b_ * sy, k};
    }
    constexpr Sqrt2Scalar operator-() const { return {-a_, -b_, k_}; }
    friend constexpr Sqrt2Scalar operator-(const Sqrt2Scalar& x, const Sqrt2Scalar& y) { return x + (-y); }
    friend constexpr Sqrt2Scalar operator*(const Sqrt2Scalar& x, const Sqrt2Scalar& y) {
        return {x.a_ * y.a_ + 2 * x.b_ * y.b_, x.a_ * y.b_ + x.b_ * y.a_, x.k_ + y.k_};
    }

    constexpr Sqrt2Scalar times_sqrt2() const { return {2 * b_, a_, k_}; }
    /// (a + b sqrt2)/sqrt2 = (2b + a sqrt2)/2
    constexpr Sqrt2Scalar div_sqrt2() const { return {2 * b_, a_, k_ + 1}; }

    /// Multiply by 2^(j/2) for any integer j.
    constexpr Sqrt2Scalar scaled_by_root2_power(int j) const {
        Sqrt2Scalar r = *this;
        for (; j > 0; --j) r = r.times_sqrt2();
        for (; j < 0; ++j) r = r.div_sqrt2();
        return r;
    }

    constexpr bool operator==(const Sqrt2Scalar&) const = default;

    std::string to_string() const {
        std::string s = "(" + std::to_string(a_) + (b_ < 0 ? " - " : " + ") + std::to_string(b_ < 0 ? -b_ : b_) + "*sqrt2)";
        if (k_ > 0) s += "/2^" + std::to_string(k_);
        return s;
    }

private:
    constexpr void reduce() {
        if (a_ == 0 && b_ == 0) {
            k_ = 0;
            return;
        }
        while (k_ > 0 && a_ % 2 == 0 && b_ % 2 == 0) {
            a_ /= 2;
            b_ /= 2;
            --k_;
        }
        // negative exponents are folded back into the numerator
        while (k_ < 0) {
            a_ *= 2;
            b_ *= 2;
            ++k_;
        }
    }

    std::int64_t a_ = 0;
    std::int64_t b_ = 0;
    int k_ = 0;
};

}  // namespace k3tower
