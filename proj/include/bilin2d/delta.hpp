#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bilin2d/interval.hpp"
#include "bilin2d/mat2.hpp"
#include "bilin2d/tolerance.hpp"

namespace bilin2d {

/// Delta(u) = alpha u^2 + beta u + gamma, the characteristic-polynomial
/// discriminant of A + uB as a quadratic in the control.  Carries
/// det([A, B]) because the quadratic's own discriminant equals
/// -16 det([A, B]), which drives the case analysis.
struct DeltaQuadratic {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    double det_bracket = 0.0;

    double eval(double u) const { return (alpha * u + beta) * u + gamma; }

    friend bool operator==(const DeltaQuadratic&, const DeltaQuadratic&) = default;
};

DeltaQuadratic delta_quadratic(const Mat2& a, const Mat2& b);

/// Vertex of Delta when alpha != 0: location -beta / (2 alpha) and value
/// 4 det([A, B]) / alpha.  Absent when alpha is (numerically) zero.
std::optional<std::pair<double, double>> delta_extremum(const DeltaQuadratic& d,
                                                        const Tolerance& tol = {});

/// Case labels for the sign analysis of Delta over all real controls:
///   A*: det[A,B] < 0 (Delta takes negative values; A1 linear, A2 quadratic)
///   B*: det[A,B] > 0 (sign fixed by alpha: B1 negative somewhere, B2 never)
///   C*: det[A,B] = 0 (double-root/degenerate configurations)
enum class DeltaCaseLabel { A1, A2, B1, B2, C1Neg, C1Nonneg, C2Neg, C2Pos };

const char* to_string(DeltaCaseLabel label);
std::optional<DeltaCaseLabel> delta_case_from_string(const std::string& s);

struct DeltaClassification {
    DeltaCaseLabel label = DeltaCaseLabel::B2;
    bool exists_negative = false;
    /// Open intervals, ordered, where Delta < 0; endpoints may be +-infinity.
    std::vector<Interval> negative_set;
    /// Distance to the nearest sign-judgement flip among the quantities the
    /// classification consulted; near zero means a fragile classification.
    double margin = 0.0;

    friend bool operator==(const DeltaClassification&, const DeltaClassification&) = default;
};

/// Classify where Delta is negative.  The three-argument qualifiers mirror
/// the degenerate-case analysis: eig_disc_a / eig_disc_b are the sign
/// classes of the characteristic discriminants of A and B (gamma and alpha
/// respectively), and trace_condition states tr(adj(A) B) == tr(A B),
/// i.e. beta == 0.
DeltaClassification classify_exists_negative(const DeltaQuadratic& d,
                                             SignClass eig_disc_a, SignClass eig_disc_b,
                                             bool trace_condition,
                                             const Tolerance& tol = {});

/// Convenience overload deriving the qualifiers from the coefficients.
DeltaClassification classify_exists_negative(const DeltaQuadratic& d,
                                             const Tolerance& tol = {});

}  // namespace bilin2d
