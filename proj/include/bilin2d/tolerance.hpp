#pragma once

#include <cmath>

namespace bilin2d {

enum class SignClass { Negative, Zero, Positive };

/// Shared zero-test policy: a quantity q whose natural magnitude is `scale`
/// counts as zero when |q| <= eps * (1 + scale).
struct Tolerance {
    double eps = 1e-9;

    double threshold(double scale) const { return eps * (1.0 + std::abs(scale)); }
    bool is_zero(double q, double scale) const { return std::abs(q) <= threshold(scale); }
    bool is_negative(double q, double scale) const { return q < -threshold(scale); }
    bool is_positive(double q, double scale) const { return q > threshold(scale); }

    SignClass sign(double q, double scale) const {
        if (is_zero(q, scale)) return SignClass::Zero;
        return q < 0.0 ? SignClass::Negative : SignClass::Positive;
    }

    /// Distance from q to the nearest flip of its zero/nonzero judgement.
    double flip_distance(double q, double scale) const {
        return std::abs(std::abs(q) - threshold(scale));
    }
};

}  // namespace bilin2d
