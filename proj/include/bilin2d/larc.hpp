#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bilin2d/mat2.hpp"
#include "bilin2d/tolerance.hpp"

namespace bilin2d {

/// Homogeneous quadratic form c0 x1^2 + c1 x1 x2 + c2 x2^2 on the plane.
struct QuadraticForm {
    double c0 = 0.0, c1 = 0.0, c2 = 0.0;

    double discriminant() const { return c1 * c1 - 4.0 * c0 * c2; }
    double eval(Vec2 x) const {
        return c0 * x.x1 * x.x1 + c1 * x.x1 * x.x2 + c2 * x.x2 * x.x2;
    }
    bool identically_zero(const Tolerance& tol, double scale) const {
        return tol.is_zero(c0, scale) && tol.is_zero(c1, scale) && tol.is_zero(c2, scale);
    }

    friend bool operator==(const QuadraticForm&, const QuadraticForm&) = default;
};

/// Provenance of one basis element: leaf 0 is the drift matrix A, leaf 1 is
/// the input matrix B, otherwise the element is [basis[left], basis[right]].
struct BracketWord {
    int leaf = -1;
    int left = -1;
    int right = -1;

    friend bool operator==(const BracketWord&, const BracketWord&) = default;
};

/// Basis of the matrix Lie algebra generated by A and B (dimension <= 4).
struct LieAlgebraBasis {
    std::vector<Mat2> generators;
    std::vector<BracketWord> words;
    int dim = 0;

    /// Human-readable bracket expression for generator i, e.g. "[B,[A,B]]".
    std::string word_string(int i) const;
};

enum class CertificateRoute {
    None,
    DefinitePair,        // the pair whose independence form is negative definite
    BasisPair,           // found scanning basis pairs
    ShortcutDetA,        // (A, [A,B]) with det(A) det([A,B]) > 0
    ShortcutDetB,        // (B, [A,B]) with det(B) det([A,B]) > 0
    RandomCombination,   // randomized search over span combinations
};

const char* to_string(CertificateRoute r);
std::optional<CertificateRoute> certificate_route_from_string(const std::string& s);

/// Outcome of the rank-condition decision.  When the condition fails, a
/// direction witnessing rank <= 1 is reported; when it holds, a matrix pair
/// with negative indicator is searched for as a machine-checkable
/// certificate (the search may come up empty on degenerate algebras, in
/// which case certificate_found is false while holds stays true).
struct LarcVerdict {
    bool holds = false;
    bool certificate_found = false;
    std::optional<std::pair<Mat2, Mat2>> certificate;
    std::optional<double> certificate_indicator;
    CertificateRoute certificate_route = CertificateRoute::None;
    std::optional<Vec2> failure_point;

    friend bool operator==(const LarcVerdict&, const LarcVerdict&) = default;
};

inline constexpr std::uint64_t kDefaultCertificateSeed = 0x9e3779b97f4a7c15ull;

struct LarcOptions {
    Tolerance tol{};
    std::uint64_t seed = kDefaultCertificateSeed;
    int random_budget = 256;
};

/// Coefficients of q(x) = det(Ax | Bx); its discriminant is negative exactly
/// when Ax and Bx are independent for every x != 0.
QuadraticForm independence_form(const Mat2& a, const Mat2& b);

/// tr(adj(A) B)^2 - 4 det(adj(A) B).  Negative iff the pair spans every
/// tangent plane direction; equals independence_form(a, b).discriminant().
double indicator(const Mat2& a, const Mat2& b);

/// Bracket-closure of span{A, B} inside gl(2, R), breadth-first, with
/// tolerance-scaled independence tests.  Deterministic generator order.
LieAlgebraBasis generate_lie_algebra(const Mat2& a, const Mat2& b,
                                     const Tolerance& tol = {});

/// dim span{M x : M in basis} at the nonzero point x.  Throws on x = 0.
int rank_at(const LieAlgebraBasis& basis, Vec2 x, const Tolerance& tol = {});

/// Decide the rank condition for the pair (A, B) and, when it holds, try to
/// attach a certificate pair.
LarcVerdict decide_larc(const Mat2& a, const Mat2& b, const LarcOptions& opts = {});

/// Real projective roots of q, unit-normalized with the first nonzero
/// coordinate positive.  Empty when q is (numerically) negative definite or
/// identically zero; callers handle those cases separately.
std::vector<Vec2> projective_roots(const QuadraticForm& q, const Tolerance& tol = {});

/// Least-squares coordinates of M in the basis (size == basis.dim).
std::vector<double> span_coordinates(const LieAlgebraBasis& basis, const Mat2& m);

/// Frobenius-style residual of M after projection onto the basis span.
double span_residual(const LieAlgebraBasis& basis, const Mat2& m);

}  // namespace bilin2d
