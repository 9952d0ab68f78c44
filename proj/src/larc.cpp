#include "bilin2d/larc.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <stdexcept>

namespace bilin2d {

namespace {

using Vec4 = std::array<double, 4>;

Vec4 vectorize(const Mat2& m) { return {m.a11, m.a12, m.a21, m.a22}; }

double dot4(const Vec4& a, const Vec4& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

double norm4(const Vec4& a) { return std::sqrt(dot4(a, a)); }

void axpy4(Vec4& y, double s, const Vec4& x) {
    for (int i = 0; i < 4; ++i) y[i] += s * x[i];
}

/// Orthonormal frame for the span of the generators, with each frame vector
/// expressed in generator coordinates so span coordinates can be recovered.
struct Frame {
    std::vector<Vec4> ortho;                 // orthonormal vectors
    std::vector<std::vector<double>> coeff;  // ortho[k] = sum_i coeff[k][i] gen[i]

    /// Remove the span component from v (twice, for numerical hygiene).
    /// When coords is non-null, accumulate the generator coordinates of the
    /// removed component.
    double project_out(Vec4 v, std::vector<double>* coords) const {
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t k = 0; k < ortho.size(); ++k) {
                double c = dot4(v, ortho[k]);
                axpy4(v, -c, ortho[k]);
                if (coords)
                    for (std::size_t i = 0; i < coeff[k].size(); ++i)
                        (*coords)[i] += c * coeff[k][i];
            }
        }
        return norm4(v);
    }

    /// Append a unit vector for gen_index if v has an independent component.
    bool try_add(const Vec4& v, std::size_t gen_index, double residual_threshold) {
        Vec4 w = v;
        std::vector<double> removed(gen_index + 1, 0.0);
        double res = 0.0;
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t k = 0; k < ortho.size(); ++k) {
                double c = dot4(w, ortho[k]);
                axpy4(w, -c, ortho[k]);
                removed_accumulate(removed, k, c);
            }
            res = norm4(w);
        }
        if (res <= residual_threshold) return false;
        // w = v - sum removed[i] gen[i]; normalize and record coordinates.
        std::vector<double> c(gen_index + 1, 0.0);
        for (std::size_t i = 0; i < gen_index; ++i) c[i] = -removed[i];
        c[gen_index] = 1.0;
        for (double& x : c) x /= res;
        for (double& x : w) x /= res;
        ortho.push_back(w);
        coeff.push_back(std::move(c));
        return true;
    }

  private:
    void removed_accumulate(std::vector<double>& removed, std::size_t k, double c) {
        for (std::size_t i = 0; i < coeff[k].size(); ++i) removed[i] += c * coeff[k][i];
    }
};

Frame build_frame(const LieAlgebraBasis& basis) {
    Frame f;
    for (std::size_t i = 0; i < basis.generators.size(); ++i)
        f.try_add(vectorize(basis.generators[i]), i, 0.0);
    return f;
}

/// Unit-normalize with the first nonzero coordinate positive.
Vec2 orient_unit(Vec2 x) {
    double n = x.norm();
    Vec2 v{x.x1 / n, x.x2 / n};
    double lead = (std::abs(v.x1) > 1e-14) ? v.x1 : v.x2;
    if (lead < 0.0) v = -1.0 * v;
    return v;
}

/// Direction spanning the kernel of a (numerically) singular matrix.
Vec2 kernel_direction(const Mat2& m) {
    Vec2 r1{m.a11, m.a12};
    Vec2 r2{m.a21, m.a22};
    Vec2 row = (r1.norm() >= r2.norm()) ? r1 : r2;
    if (row.norm() == 0.0) return {1.0, 0.0};
    return orient_unit(Vec2{-row.x2, row.x1});
}

}  // namespace

std::string LieAlgebraBasis::word_string(int i) const {
    const BracketWord& w = words.at(static_cast<std::size_t>(i));
    if (w.leaf == 0) return "A";
    if (w.leaf == 1) return "B";
    return "[" + word_string(w.left) + "," + word_string(w.right) + "]";
}

const char* to_string(CertificateRoute r) {
    switch (r) {
        case CertificateRoute::None: return "none";
        case CertificateRoute::DefinitePair: return "definite_pair";
        case CertificateRoute::BasisPair: return "basis_pair";
        case CertificateRoute::ShortcutDetA: return "shortcut_det_a";
        case CertificateRoute::ShortcutDetB: return "shortcut_det_b";
        case CertificateRoute::RandomCombination: return "random_combination";
    }
    return "none";
}

std::optional<CertificateRoute> certificate_route_from_string(const std::string& s) {
    for (CertificateRoute r :
         {CertificateRoute::None, CertificateRoute::DefinitePair, CertificateRoute::BasisPair,
          CertificateRoute::ShortcutDetA, CertificateRoute::ShortcutDetB,
          CertificateRoute::RandomCombination})
        if (s == to_string(r)) return r;
    return std::nullopt;
}

QuadraticForm independence_form(const Mat2& a, const Mat2& b) {
    QuadraticForm q;
    q.c0 = det_cols(a.col1(), b.col1());
    q.c1 = det_cols(a.col1(), b.col2()) + det_cols(a.col2(), b.col1());
    q.c2 = det_cols(a.col2(), b.col2());
    return q;
}

double indicator(const Mat2& a, const Mat2& b) {
    Mat2 m = adjugate(a) * b;
    double t = m.trace();
    return t * t - 4.0 * m.det();
}

LieAlgebraBasis generate_lie_algebra(const Mat2& a, const Mat2& b, const Tolerance& tol) {
    LieAlgebraBasis basis;
    Frame frame;
    auto consider = [&](const Mat2& m, BracketWord word) {
        double thr = tol.threshold(m.max_norm());
        if (frame.try_add(vectorize(m), basis.generators.size(), thr)) {
            basis.generators.push_back(m);
            basis.words.push_back(word);
        }
    };
    consider(a, BracketWord{0, -1, -1});
    consider(b, BracketWord{1, -1, -1});

    // Breadth-first closure under the bracket; gl(2, R) caps the dimension
    // at four, so the loop terminates after at most a few rounds.  Pairs
    // already found dependent are rescanned harmlessly (consider rejects).
    bool grew = true;
    while (grew && basis.generators.size() < 4) {
        grew = false;
        for (std::size_t j = 1; j < basis.generators.size() && basis.generators.size() < 4; ++j) {
            for (std::size_t i = 0; i < j && basis.generators.size() < 4; ++i) {
                Mat2 br = bracket(basis.generators[i], basis.generators[j]);
                std::size_t before = basis.generators.size();
                consider(br, BracketWord{-1, static_cast<int>(i), static_cast<int>(j)});
                if (basis.generators.size() > before) grew = true;
            }
        }
    }
    basis.dim = static_cast<int>(basis.generators.size());
    return basis;
}

int rank_at(const LieAlgebraBasis& basis, Vec2 x, const Tolerance& tol) {
    if (!x.finite() || x.norm() == 0.0)
        throw std::invalid_argument("rank_at: x must be a finite nonzero vector");
    Vec2 xh{x.x1 / x.norm(), x.x2 / x.norm()};
    std::vector<Vec2> imgs;
    imgs.reserve(basis.generators.size());
    for (const Mat2& m : basis.generators) imgs.push_back(m * xh);
    for (std::size_t j = 1; j < imgs.size(); ++j)
        for (std::size_t i = 0; i < j; ++i) {
            double minor = det_cols(imgs[i], imgs[j]);
            double scale = basis.generators[i].max_norm() * basis.generators[j].max_norm();
            if (!tol.is_zero(minor, scale)) return 2;
        }
    for (std::size_t i = 0; i < imgs.size(); ++i)
        if (!tol.is_zero(imgs[i].norm(), basis.generators[i].max_norm())) return 1;
    return 0;
}

std::vector<Vec2> projective_roots(const QuadraticForm& q, const Tolerance& tol) {
    std::vector<Vec2> roots;
    double scale = std::abs(q.c0) + std::abs(q.c1) + std::abs(q.c2);
    auto push_unique = [&](Vec2 v) {
        for (const Vec2& r : roots)
            if (std::abs(det_cols(r, v)) <= 1e-12) return;
        roots.push_back(v);
    };
    if (tol.is_zero(q.c0, scale)) {
        // x2 factors out: [1:0] is a root, the other is c1 x1 + c2 x2 = 0.
        push_unique(Vec2{1.0, 0.0});
        Vec2 other{q.c2, -q.c1};
        if (other.norm() > tol.threshold(scale)) push_unique(orient_unit(other));
        return roots;
    }
    double disc = q.discriminant();
    double dscale = scale * scale;
    if (tol.is_zero(disc, dscale)) {
        double r = -q.c1 / (2.0 * q.c0);
        push_unique(orient_unit(Vec2{r, 1.0}));
        return roots;
    }
    if (disc < 0.0) return roots;
    // Stable quadratic roots: q.c0 r^2 + q.c1 r + q.c2 = 0.
    double s = std::sqrt(disc);
    double w = -0.5 * (q.c1 + std::copysign(s, q.c1));
    double r1 = w / q.c0;
    double r2 = (w != 0.0) ? q.c2 / w : -q.c1 / q.c0 - r1;
    push_unique(orient_unit(Vec2{r1, 1.0}));
    push_unique(orient_unit(Vec2{r2, 1.0}));
    return roots;
}

std::vector<double> span_coordinates(const LieAlgebraBasis& basis, const Mat2& m) {
    Frame frame = build_frame(basis);
    std::vector<double> coords(basis.generators.size(), 0.0);
    frame.project_out(vectorize(m), &coords);
    return coords;
}

double span_residual(const LieAlgebraBasis& basis, const Mat2& m) {
    Frame frame = build_frame(basis);
    return frame.project_out(vectorize(m), nullptr);
}

LarcVerdict decide_larc(const Mat2& a, const Mat2& b, const LarcOptions& opts) {
    const Tolerance& tol = opts.tol;
    LarcVerdict v;
    LieAlgebraBasis basis = generate_lie_algebra(a, b, tol);
    const auto& gen = basis.generators;

    // Degenerate span: a single direction (or nothing) cannot move the
    // state off a line, so the condition fails everywhere; report the most
    // informative stuck direction.
    if (basis.dim <= 1) {
        v.holds = false;
        if (basis.dim == 0) {
            v.failure_point = Vec2{1.0, 0.0};
        } else {
            const Mat2& m = gen[0];
            if (tol.is_zero(m.det(), m.max_norm() * m.max_norm()))
                v.failure_point = kernel_direction(m);
            else
                v.failure_point = Vec2{1.0, 0.0};
        }
        return v;
    }

    // Pairwise independence forms; remember the most definite pair, with
    // discriminants compared on scale-normalized coefficients.
    struct PairInfo {
        std::size_t i = 0, j = 0;
        QuadraticForm q;
        double scale = 1.0;  // coefficient magnitude ||Mi|| ||Mj||
    };
    std::vector<PairInfo> pairs;
    bool all_zero = true;
    for (std::size_t j = 1; j < gen.size(); ++j)
        for (std::size_t i = 0; i < j; ++i) {
            PairInfo p;
            p.i = i;
            p.j = j;
            p.q = independence_form(gen[i], gen[j]);
            p.scale = gen[i].max_norm() * gen[j].max_norm();
            if (!p.q.identically_zero(tol, p.scale)) all_zero = false;
            pairs.push_back(p);
        }

    if (all_zero) {
        // Every basis image of every direction is collinear with the others.
        v.holds = false;
        v.failure_point = Vec2{1.0, 0.0};
        return v;
    }

    auto normalized_disc = [](const PairInfo& p) {
        double s = (p.scale > 0.0) ? p.scale : 1.0;
        QuadraticForm qn{p.q.c0 / s, p.q.c1 / s, p.q.c2 / s};
        return qn.discriminant();
    };
    const PairInfo* best = &pairs.front();
    double best_disc = normalized_disc(*best);
    for (const PairInfo& p : pairs) {
        double d = normalized_disc(p);
        if (d < best_disc) {
            best = &p;
            best_disc = d;
        }
    }

    double coeff_scale = std::abs(best->q.c0 / std::max(best->scale, 1e-300)) +
                         std::abs(best->q.c1 / std::max(best->scale, 1e-300)) +
                         std::abs(best->q.c2 / std::max(best->scale, 1e-300));
    if (tol.is_negative(best_disc, coeff_scale * coeff_scale)) {
        // A definite pair moves every direction in two independent ways.
        v.holds = true;
        v.certificate = std::make_pair(gen[best->i], gen[best->j]);
        v.certificate_indicator = indicator(gen[best->i], gen[best->j]);
        v.certificate_route = CertificateRoute::DefinitePair;
        v.certificate_found = true;
        return v;
    }

    // No definite pair: the best form has real projective roots.  The rank
    // can only drop along those directions, so checking them decides.
    double s = (best->scale > 0.0) ? best->scale : 1.0;
    QuadraticForm qn{best->q.c0 / s, best->q.c1 / s, best->q.c2 / s};
    for (const Vec2& root : projective_roots(qn, tol)) {
        if (rank_at(basis, root, tol) <= 1) {
            v.holds = false;
            v.failure_point = root;
            return v;
        }
    }
    v.holds = true;

    // Certificate search: basis pairs, then the bracket shortcuts, then
    // random span combinations.
    auto accept = [&](const Mat2& x, const Mat2& y, CertificateRoute route) {
        double ind = indicator(x, y);
        double sc = x.max_norm() * y.max_norm();
        if (tol.is_negative(ind, sc * sc)) {
            v.certificate = std::make_pair(x, y);
            v.certificate_indicator = ind;
            v.certificate_route = route;
            v.certificate_found = true;
            return true;
        }
        return false;
    };
    for (const PairInfo& p : pairs)
        if (accept(gen[p.i], gen[p.j], CertificateRoute::BasisPair)) return v;
    Mat2 br = bracket(a, b);
    if (!tol.is_zero(br.max_norm(), a.max_norm() * b.max_norm())) {
        if (accept(a, br, CertificateRoute::ShortcutDetA)) return v;
        if (accept(b, br, CertificateRoute::ShortcutDetB)) return v;
    }
    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    auto combo = [&]() {
        Mat2 m = Mat2::zero();
        for (const Mat2& g : gen) m = m + unit(rng) * g;
        return m;
    };
    for (int trial = 0; trial < opts.random_budget; ++trial) {
        Mat2 x = combo();
        Mat2 y = combo();
        if (accept(x, y, CertificateRoute::RandomCombination)) return v;
    }
    v.certificate_found = false;
    return v;
}

}  // namespace bilin2d
