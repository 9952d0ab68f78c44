#include "bilin2d/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace bilin2d {

namespace {

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
}

}  // namespace

const char* to_string(LemmaTag tag) {
    switch (tag) {
        case LemmaTag::None: return "none";
        case LemmaTag::TraceNonzero: return "trace_nonzero";
        case LemmaTag::TraceZeroIff: return "trace_zero_iff";
    }
    return "none";
}

std::optional<LemmaTag> lemma_tag_from_string(const std::string& s) {
    for (LemmaTag t : {LemmaTag::None, LemmaTag::TraceNonzero, LemmaTag::TraceZeroIff})
        if (s == to_string(t)) return t;
    return std::nullopt;
}

const char* to_string(ControllabilityStatus s) {
    switch (s) {
        case ControllabilityStatus::Controllable: return "controllable";
        case ControllabilityStatus::NotControllable: return "not_controllable";
        case ControllabilityStatus::Inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

std::optional<ControllabilityStatus> status_from_string(const std::string& s) {
    for (ControllabilityStatus c :
         {ControllabilityStatus::Controllable, ControllabilityStatus::NotControllable,
          ControllabilityStatus::Inconclusive})
        if (s == to_string(c)) return c;
    return std::nullopt;
}

std::array<std::complex<double>, 2> eigenvalues_of_pencil(const Mat2& a, const Mat2& b,
                                                          double u) {
    DeltaQuadratic d = delta_quadratic(a, b);
    double s = a.trace() + u * b.trace();
    double delta = d.eval(u);
    if (delta >= 0.0) {
        double r = std::sqrt(delta);
        return {std::complex<double>((s - r) / 2.0, 0.0),
                std::complex<double>((s + r) / 2.0, 0.0)};
    }
    double r = std::sqrt(-delta);
    return {std::complex<double>(s / 2.0, -r / 2.0),
            std::complex<double>(s / 2.0, r / 2.0)};
}

ZeroInteriorResult zero_in_interior_sigma_re(const Mat2& a, const Mat2& b,
                                             bool pcontrollable, const Tolerance& tol) {
    ZeroInteriorResult out;
    Mat2 ab = a * b;
    out.trace_zero_test_value = ab.trace() * ab.trace() - 4.0 * ab.det();
    if (!pcontrollable) return out;  // test only meaningful under controllability

    double trb = b.trace();
    if (!tol.is_zero(trb, b.max_norm())) {
        out.lemma = LemmaTag::TraceNonzero;
        out.zero_in_interior = true;
        return out;
    }
    out.lemma = LemmaTag::TraceZeroIff;
    double scale = a.max_norm() * b.max_norm();
    out.zero_in_interior = tol.is_positive(out.trace_zero_test_value, scale * scale);
    return out;
}

std::vector<Interval> sigma_re_range(const Mat2& a, const Mat2& b, const ControlSet& u,
                                     int grid_n, double u_max) {
    if (grid_n < 2) throw std::invalid_argument("sigma_re_range: grid_n must be >= 2");
    if (!(u_max > 0.0)) throw std::invalid_argument("sigma_re_range: u_max must be > 0");
    double lo = u.all_reals ? -u_max : u.lo;
    double hi = u.all_reals ? u_max : u.hi;

    DeltaQuadratic d = delta_quadratic(a, b);
    std::vector<double> samples;
    samples.reserve(static_cast<std::size_t>(grid_n) + 4);
    for (int i = 0; i < grid_n; ++i)
        samples.push_back(lo + (hi - lo) * static_cast<double>(i) / (grid_n - 1));
    // Enrich with the structure points of Delta so extrema of the real
    // parts land exactly on samples: the vertex and the real roots.
    auto add_if_inside = [&](double x) {
        if (std::isfinite(x) && x >= lo && x <= hi) samples.push_back(x);
    };
    if (d.alpha != 0.0) {
        add_if_inside(-d.beta / (2.0 * d.alpha));
        double disc = d.beta * d.beta - 4.0 * d.alpha * d.gamma;
        if (disc > 0.0) {
            double sq = std::sqrt(disc);
            double w = -0.5 * (d.beta + std::copysign(sq, d.beta));
            add_if_inside(w / d.alpha);
            if (w != 0.0) add_if_inside(d.gamma / w);
        }
    } else if (d.beta != 0.0) {
        add_if_inside(-d.gamma / d.beta);
    }
    std::sort(samples.begin(), samples.end());
    samples.erase(std::unique(samples.begin(), samples.end()), samples.end());

    double tra = a.trace();
    double trb = b.trace();
    auto re_lo = [&](double uu) {
        double delta = d.eval(uu);
        return ((tra + uu * trb) - std::sqrt(std::max(delta, 0.0))) / 2.0;
    };
    auto re_hi = [&](double uu) {
        double delta = d.eval(uu);
        return ((tra + uu * trb) + std::sqrt(std::max(delta, 0.0))) / 2.0;
    };

    std::vector<Interval> cells;
    if (samples.size() == 1) {
        double x = samples.front();
        cells.push_back({re_lo(x), re_lo(x)});
        cells.push_back({re_hi(x), re_hi(x)});
    }
    for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
        double l0 = re_lo(samples[i]);
        double l1 = re_lo(samples[i + 1]);
        double h0 = re_hi(samples[i]);
        double h1 = re_hi(samples[i + 1]);
        cells.push_back({std::min(l0, l1), std::max(l0, l1)});
        cells.push_back({std::min(h0, h1), std::max(h0, h1)});
    }
    return merge_intervals(std::move(cells));
}

SpectrumSummary summarize_spectrum(const Mat2& a, const Mat2& b, const ControlSet& u,
                                   bool pcontrollable, int grid_n, double u_max,
                                   const Tolerance& tol) {
    SpectrumSummary s;
    s.trace_b = b.trace();
    s.re_range = sigma_re_range(a, b, u, grid_n, u_max);
    ZeroInteriorResult zi = zero_in_interior_sigma_re(a, b, pcontrollable, tol);
    s.zero_in_interior = zi.zero_in_interior;
    s.lemma_used = zi.lemma;
    s.trace_zero_test_value = zi.trace_zero_test_value;
    return s;
}

ControllabilityVerdict combine_verdict(const LarcVerdict& larc,
                                       const ProjectiveControllability& pc,
                                       const ZeroInteriorResult& interior, double trace_b) {
    ControllabilityVerdict v;
    auto push = [&](const char* cond, bool holds, std::string evidence) {
        v.reasons.push_back({cond, holds, std::move(evidence)});
    };

    std::string larc_evidence;
    if (larc.holds) {
        if (larc.certificate_found && larc.certificate_indicator)
            larc_evidence = "certificate pair with indicator " +
                            fmt(*larc.certificate_indicator) + " (" +
                            to_string(larc.certificate_route) + ")";
        else
            larc_evidence = "rank 2 at every root direction (no certificate pair found)";
    } else if (larc.failure_point) {
        larc_evidence = "rank <= 1 at direction (" + fmt(larc.failure_point->x1) + ", " +
                        fmt(larc.failure_point->x2) + ")";
    }
    push("larc", larc.holds, larc_evidence);
    if (!larc.holds) {
        v.status = ControllabilityStatus::NotControllable;
        return v;
    }

    std::string pc_evidence =
        pc.controllable
            ? ("Delta(u) < 0 at admissible u = " + fmt(pc.witness_u.value_or(0.0)))
            : "Delta(u) >= 0 for every admissible control";
    push("projective_controllability", pc.controllable, pc_evidence);
    if (!pc.controllable) {
        v.status = ControllabilityStatus::NotControllable;
        return v;
    }

    bool trace_nonzero = interior.lemma == LemmaTag::TraceNonzero;
    push("trace_nonzero", trace_nonzero, "tr(B) = " + fmt(trace_b));
    if (trace_nonzero) {
        v.status = ControllabilityStatus::Controllable;
        return v;
    }

    push("spectrum_interior", interior.zero_in_interior,
         "tr(B) = 0 and tr^2(AB) - 4 det(AB) = " + fmt(interior.trace_zero_test_value));
    v.status = interior.zero_in_interior ? ControllabilityStatus::Controllable
                                         : ControllabilityStatus::Inconclusive;
    return v;
}

ControllabilityVerdict controllability_verdict(const Mat2& a, const Mat2& b,
                                               const ControlSet& u,
                                               const VerdictOptions& opts) {
    LarcOptions lo{opts.tol, opts.seed, opts.random_budget};
    LarcVerdict larc = decide_larc(a, b, lo);
    ProjectiveControllability pc = projective_controllable(a, b, u, opts.tol);
    ZeroInteriorResult zi = zero_in_interior_sigma_re(a, b, pc.controllable, opts.tol);
    return combine_verdict(larc, pc, zi, b.trace());
}

}  // namespace bilin2d
