#include "bilin2d/delta.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace bilin2d {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Stable real roots of alpha u^2 + beta u + gamma with positive
/// discriminant disc, returned in increasing order.
std::pair<double, double> quadratic_roots(double alpha, double beta, double gamma,
                                          double disc) {
    double s = std::sqrt(disc);
    double w = -0.5 * (beta + std::copysign(s, beta));
    double r1 = w / alpha;
    double r2 = (w != 0.0) ? gamma / w : -r1;  // w == 0 only when beta = gamma = 0
    if (r1 > r2) std::swap(r1, r2);
    return {r1, r2};
}

}  // namespace

const char* to_string(DeltaCaseLabel label) {
    switch (label) {
        case DeltaCaseLabel::A1: return "A1";
        case DeltaCaseLabel::A2: return "A2";
        case DeltaCaseLabel::B1: return "B1";
        case DeltaCaseLabel::B2: return "B2";
        case DeltaCaseLabel::C1Neg: return "C1_neg";
        case DeltaCaseLabel::C1Nonneg: return "C1_nonneg";
        case DeltaCaseLabel::C2Neg: return "C2_neg";
        case DeltaCaseLabel::C2Pos: return "C2_pos";
    }
    return "B2";
}

std::optional<DeltaCaseLabel> delta_case_from_string(const std::string& s) {
    for (DeltaCaseLabel l : {DeltaCaseLabel::A1, DeltaCaseLabel::A2, DeltaCaseLabel::B1,
                             DeltaCaseLabel::B2, DeltaCaseLabel::C1Neg, DeltaCaseLabel::C1Nonneg,
                             DeltaCaseLabel::C2Neg, DeltaCaseLabel::C2Pos})
        if (s == to_string(l)) return l;
    return std::nullopt;
}

DeltaQuadratic delta_quadratic(const Mat2& a, const Mat2& b) {
    DeltaQuadratic d;
    double tra = a.trace();
    double trb = b.trace();
    d.alpha = trb * trb - 4.0 * b.det();
    d.beta = 2.0 * (2.0 * (a * b).trace() - tra * trb);
    d.gamma = tra * tra - 4.0 * a.det();
    d.det_bracket = bracket(a, b).det();
    return d;
}

std::optional<std::pair<double, double>> delta_extremum(const DeltaQuadratic& d,
                                                        const Tolerance& tol) {
    double scale = std::abs(d.alpha) + std::abs(d.beta) + std::abs(d.gamma);
    if (tol.is_zero(d.alpha, scale)) return std::nullopt;
    double ustar = -d.beta / (2.0 * d.alpha);
    double value = 4.0 * d.det_bracket / d.alpha;
    return std::make_pair(ustar, value);
}

DeltaClassification classify_exists_negative(const DeltaQuadratic& d, SignClass eig_disc_a,
                                             SignClass eig_disc_b, bool trace_condition,
                                             const Tolerance& tol) {
    DeltaClassification out;
    double cscale = std::abs(d.alpha) + std::abs(d.beta) + std::abs(d.gamma);
    // The quadratic's discriminant is beta^2 - 4 alpha gamma = -16 det[A,B],
    // so det[A,B] is judged on the coefficient scale.
    double dbscale = (d.beta * d.beta + 4.0 * std::abs(d.alpha) * std::abs(d.gamma)) / 16.0;
    SignClass db_sign = tol.sign(d.det_bracket, dbscale);
    double margin = tol.flip_distance(d.det_bracket, dbscale);
    bool alpha_zero = eig_disc_b == SignClass::Zero;

    switch (db_sign) {
        case SignClass::Negative: {
            // Delta's discriminant is positive: two real roots, Delta < 0 on
            // the side(s) selected by the leading coefficient.
            double disc = -16.0 * d.det_bracket;
            margin = std::min(margin, tol.flip_distance(d.alpha, cscale));
            out.label = alpha_zero ? DeltaCaseLabel::A1 : DeltaCaseLabel::A2;
            out.exists_negative = true;
            if (d.alpha == 0.0) {
                // Exactly linear (beta != 0 here, otherwise the discriminant
                // would vanish): negative on the side set by the slope.
                double r = -d.gamma / d.beta;
                if (d.beta > 0.0)
                    out.negative_set = {{-kInf, r}};
                else
                    out.negative_set = {{r, kInf}};
            } else {
                auto [r1, r2] = quadratic_roots(d.alpha, d.beta, d.gamma, disc);
                if (d.alpha > 0.0)
                    out.negative_set = {{r1, r2}};
                else
                    out.negative_set = {{-kInf, r1}, {r2, kInf}};
            }
            break;
        }
        case SignClass::Positive: {
            // Negative discriminant: Delta never vanishes, one fixed sign.
            margin = std::min(margin, tol.flip_distance(d.alpha, cscale));
            bool somewhere_negative;
            if (alpha_zero) {
                // alpha = beta = 0 is incompatible with det[A,B] > 0, so the
                // sign is gamma's; reachable only near the tolerance border.
                somewhere_negative = eig_disc_a == SignClass::Negative;
            } else {
                somewhere_negative = d.alpha < 0.0;
            }
            out.label = somewhere_negative ? DeltaCaseLabel::B1 : DeltaCaseLabel::B2;
            out.exists_negative = somewhere_negative;
            if (somewhere_negative) out.negative_set = {{-kInf, kInf}};
            break;
        }
        case SignClass::Zero: {
            if (alpha_zero) {
                // Constant sign gamma (beta vanishes with the discriminant).
                margin = std::min(margin, tol.flip_distance(d.alpha, cscale));
                margin = std::min(margin, tol.flip_distance(d.gamma, cscale));
                bool neg = trace_condition && eig_disc_a == SignClass::Negative;
                out.label = neg ? DeltaCaseLabel::C1Neg : DeltaCaseLabel::C1Nonneg;
                out.exists_negative = neg;
                if (neg) out.negative_set = {{-kInf, kInf}};
            } else {
                // Perfect square alpha (u - u*)^2.
                margin = std::min(margin, tol.flip_distance(d.alpha, cscale));
                double ustar = -d.beta / (2.0 * d.alpha);
                if (d.alpha < 0.0) {
                    out.label = DeltaCaseLabel::C2Neg;
                    out.exists_negative = true;
                    out.negative_set = {{-kInf, ustar}, {ustar, kInf}};
                } else {
                    out.label = DeltaCaseLabel::C2Pos;
                    out.exists_negative = false;
                }
            }
            break;
        }
    }
    out.margin = margin;
    return out;
}

DeltaClassification classify_exists_negative(const DeltaQuadratic& d, const Tolerance& tol) {
    double cscale = std::abs(d.alpha) + std::abs(d.beta) + std::abs(d.gamma);
    SignClass eig_a = tol.sign(d.gamma, cscale);
    SignClass eig_b = tol.sign(d.alpha, cscale);
    bool trace_condition = tol.is_zero(d.beta, cscale);
    return classify_exists_negative(d, eig_a, eig_b, trace_condition, tol);
}

}  // namespace bilin2d
