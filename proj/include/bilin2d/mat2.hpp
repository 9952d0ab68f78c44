#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace bilin2d {

/// Plain 2-vector.  Arithmetic never validates, so intermediate results may
/// temporarily overflow; API entry points that require finite data check it
/// explicitly via finite().
struct Vec2 {
    double x1 = 0.0;
    double x2 = 0.0;

    bool finite() const { return std::isfinite(x1) && std::isfinite(x2); }
    double norm() const { return std::hypot(x1, x2); }
    double max_norm() const { return std::max(std::abs(x1), std::abs(x2)); }

    friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x1 + b.x1, a.x2 + b.x2}; }
    friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x1 - b.x1, a.x2 - b.x2}; }
    friend Vec2 operator*(double s, Vec2 a) { return {s * a.x1, s * a.x2}; }
    friend Vec2 operator*(Vec2 a, double s) { return s * a; }
    friend bool operator==(const Vec2&, const Vec2&) = default;
};

inline double dot(Vec2 a, Vec2 b) { return a.x1 * b.x1 + a.x2 * b.x2; }

/// Determinant of the 2x2 matrix whose columns are a and b.
inline double det_cols(Vec2 a, Vec2 b) { return a.x1 * b.x2 - a.x2 * b.x1; }

/// 2x2 real matrix, row-major value record.  Construction rejects NaN and
/// infinite entries so every Mat2 built through the constructor is finite.
struct Mat2 {
    double a11 = 0.0, a12 = 0.0, a21 = 0.0, a22 = 0.0;

    Mat2() = default;
    Mat2(double m11, double m12, double m21, double m22)
        : a11(m11), a12(m12), a21(m21), a22(m22) {
        if (!(std::isfinite(m11) && std::isfinite(m12) && std::isfinite(m21) &&
              std::isfinite(m22)))
            throw std::invalid_argument("Mat2: entries must be finite");
    }

    static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
    static Mat2 zero() { return {}; }

    double trace() const { return a11 + a22; }
    double det() const { return a11 * a22 - a12 * a21; }
    double max_norm() const {
        return std::max(std::max(std::abs(a11), std::abs(a12)),
                        std::max(std::abs(a21), std::abs(a22)));
    }

    Vec2 col1() const { return {a11, a21}; }
    Vec2 col2() const { return {a12, a22}; }

    friend Mat2 operator+(const Mat2& a, const Mat2& b) {
        return {a.a11 + b.a11, a.a12 + b.a12, a.a21 + b.a21, a.a22 + b.a22};
    }
    friend Mat2 operator-(const Mat2& a, const Mat2& b) {
        return {a.a11 - b.a11, a.a12 - b.a12, a.a21 - b.a21, a.a22 - b.a22};
    }
    friend Mat2 operator*(double s, const Mat2& a) {
        return {s * a.a11, s * a.a12, s * a.a21, s * a.a22};
    }
    friend Mat2 operator*(const Mat2& a, double s) { return s * a; }
    friend Mat2 operator*(const Mat2& a, const Mat2& b) {
        return {a.a11 * b.a11 + a.a12 * b.a21, a.a11 * b.a12 + a.a12 * b.a22,
                a.a21 * b.a11 + a.a22 * b.a21, a.a21 * b.a12 + a.a22 * b.a22};
    }
    friend Vec2 operator*(const Mat2& a, Vec2 x) {
        return {a.a11 * x.x1 + a.a12 * x.x2, a.a21 * x.x1 + a.a22 * x.x2};
    }
    friend bool operator==(const Mat2&, const Mat2&) = default;
};

/// Commutator [A, B] = AB - BA.
inline Mat2 bracket(const Mat2& a, const Mat2& b) { return a * b - b * a; }

/// Adjugate adj(M) = tr(M) I - M, so that M adj(M) = det(M) I.
inline Mat2 adjugate(const Mat2& m) {
    return {m.a22, -m.a12, -m.a21, m.a11};
}

/// Discriminant tr(M)^2 - 4 det(M) of the characteristic polynomial.
inline double char_discriminant(const Mat2& m) {
    double t = m.trace();
    return t * t - 4.0 * m.det();
}

/// det(A + rB) expanded in r: det(A) + tr(adj(A) B) r + det(B) r^2.
inline double det_pencil(const Mat2& a, const Mat2& b, double r) {
    double mid = (adjugate(a) * b).trace();
    return a.det() + mid * r + b.det() * r * r;
}

/// Eigenvalues ordered by real part, then by imaginary part.
inline std::array<std::complex<double>, 2> eigenvalues(const Mat2& m) {
    double t = m.trace();
    double disc = char_discriminant(m);
    if (disc >= 0.0) {
        double s = std::sqrt(disc);
        return {std::complex<double>((t - s) / 2.0, 0.0),
                std::complex<double>((t + s) / 2.0, 0.0)};
    }
    double s = std::sqrt(-disc);
    return {std::complex<double>(t / 2.0, -s / 2.0),
            std::complex<double>(t / 2.0, s / 2.0)};
}

}  // namespace bilin2d
