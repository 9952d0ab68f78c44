#include "bilin2d/angular.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bilin2d {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kHalfPi = kPi / 2.0;

/// Split theta = base + k*pi with base in (-pi/2, pi/2].
struct BaseAngle {
    double base;
    double k;
};

BaseAngle split_angle(double theta) {
    double k = std::floor((theta + kHalfPi) / kPi);
    double b = theta - k * kPi;
    // Guard against floor rounding at the seams.
    while (b > kHalfPi) {
        b -= kPi;
        k += 1.0;
    }
    while (b <= -kHalfPi) {
        b += kPi;
        k -= 1.0;
    }
    return {b, k};
}

double sign_of(double x) { return x > 0.0 ? 1.0 : -1.0; }

}  // namespace

const char* to_string(AngularCaseTag tag) {
    switch (tag) {
        case AngularCaseTag::LinearInV: return "linear_in_v";
        case AngularCaseTag::AffineDrift: return "affine_drift";
        case AngularCaseTag::Frozen: return "frozen";
        case AngularCaseTag::DoubleRoot: return "double_root";
        case AngularCaseTag::TwoRealRoots: return "two_real_roots";
        case AngularCaseTag::Rotational: return "rotational";
    }
    return "frozen";
}

std::optional<AngularCaseTag> angular_case_from_string(const std::string& s) {
    for (AngularCaseTag t : {AngularCaseTag::LinearInV, AngularCaseTag::AffineDrift,
                             AngularCaseTag::Frozen, AngularCaseTag::DoubleRoot,
                             AngularCaseTag::TwoRealRoots, AngularCaseTag::Rotational})
        if (s == to_string(t)) return t;
    return std::nullopt;
}

PqrCoefficients pqr(const Mat2& a, const Mat2& b, double u) {
    if (!std::isfinite(u)) throw std::invalid_argument("pqr: u must be finite");
    PqrCoefficients c;
    c.P = (a.a12 + a.a21) + u * (b.a12 + b.a21);
    c.Q = (a.a22 - a.a11) + u * (b.a22 - b.a11);
    c.R = (a.a21 - a.a12) + u * (b.a21 - b.a12);
    c.S = (a.a22 + a.a11) + u * (b.a22 + b.a11);
    c.u = u;
    return c;
}

double angular_rhs(const PqrCoefficients& c, double theta) {
    return 0.5 * (c.P * std::cos(2.0 * theta) + c.Q * std::sin(2.0 * theta) + c.R);
}

double delta_of_pqr(const PqrCoefficients& c) {
    return c.P * c.P + c.Q * c.Q - c.R * c.R;
}

Vec2 project_field(const Mat2& a, Vec2 s) {
    if (!s.finite() || std::abs(s.norm() - 1.0) > 1e-9)
        throw std::invalid_argument("project_field: s must be a unit vector");
    Vec2 as = a * s;
    double radial = dot(s, as);
    return as - radial * s;
}

AngularCase classify_case(const PqrCoefficients& c, const Tolerance& tol) {
    AngularCase out;
    double scale = std::abs(c.P) + std::abs(c.Q) + std::abs(c.R);
    double delta = delta_of_pqr(c);
    double dscale = c.P * c.P + c.Q * c.Q + c.R * c.R;
    out.delta = delta;

    double rp = c.R - c.P;
    double m_rp = tol.flip_distance(rp, scale);
    if (tol.is_zero(rp, scale)) {
        if (!tol.is_zero(c.Q, scale)) {
            out.tag = AngularCaseTag::LinearInV;
            out.rate = c.Q;
            out.fixed_v = -0.5 * (c.R + c.P) / c.Q;
            out.margin = std::min(m_rp, tol.flip_distance(c.Q, scale));
        } else if (!tol.is_zero(c.P, scale)) {
            out.tag = AngularCaseTag::AffineDrift;
            out.drift = 0.5 * (c.R + c.P);
            out.margin = std::min({m_rp, tol.flip_distance(c.Q, scale),
                                   tol.flip_distance(c.P, scale)});
        } else {
            out.tag = AngularCaseTag::Frozen;
            out.margin = std::min({m_rp, tol.flip_distance(c.Q, scale),
                                   tol.flip_distance(c.P, scale)});
        }
        return out;
    }

    double m_delta = tol.flip_distance(delta, dscale);
    out.margin = std::min(m_rp, m_delta);
    if (tol.is_zero(delta, dscale)) {
        out.tag = AngularCaseTag::DoubleRoot;
        out.fixed_v = -c.Q / rp;
    } else if (delta > 0.0) {
        out.tag = AngularCaseTag::TwoRealRoots;
        double s = std::sqrt(delta);
        double v_hi = (s - c.Q) / rp;
        double v_lo = (-s - c.Q) / rp;
        if (v_lo > v_hi) std::swap(v_lo, v_hi);
        out.roots_v = std::array<double, 2>{v_lo, v_hi};
    } else {
        out.tag = AngularCaseTag::Rotational;
        out.omega = std::sqrt(-delta);
    }
    return out;
}

ProjectivePoint ProjectivePoint::from_angle(double raw) {
    if (!std::isfinite(raw))
        throw std::invalid_argument("ProjectivePoint: angle must be finite");
    return ProjectivePoint{split_angle(raw).base};
}

namespace {

// ---------------------------------------------------------------------------
// Closed forms.  Every case is solved in a coordinate where the evolution is
// affine (or exponential), then mapped back to a continuous lift of theta.
// tau is the elapsed time, b0/k0 the split of theta0.
// ---------------------------------------------------------------------------

/// R = P cases stay inside one chart: theta = +-pi/2 is invariant, so the
/// lift is theta0 plus the change of atan(v).
double solve_linear_in_v(const PqrCoefficients& c, double theta0, double tau) {
    BaseAngle a0 = split_angle(theta0);
    double v0 = std::tan(a0.base);
    double p = 0.5 * (c.R + c.P);
    double vstar = -p / c.Q;
    double offset = v0 - vstar;
    if (offset == 0.0) return theta0;
    double v = offset * std::exp(c.Q * tau) + vstar;  // +-inf decays to atan
    return theta0 + (std::atan(v) - std::atan(v0));
}

double solve_affine_drift(const PqrCoefficients& c, double theta0, double tau) {
    BaseAngle a0 = split_angle(theta0);
    double v0 = std::tan(a0.base);
    double drift = 0.5 * (c.R + c.P);
    double v = v0 + drift * tau;
    return theta0 + (std::atan(v) - std::atan(v0));
}

/// R != P, Delta = 0.  With v* the double root, eta = cos(theta) /
/// (sin(theta) - v* cos(theta)) evolves as eta(tau) = eta0 - (R-P) tau / 2;
/// eta -> 0 is the crossing of +-pi/2, handled by the branch bookkeeping.
double solve_double_root(const PqrCoefficients& c, double theta0, double tau) {
    double rp = c.R - c.P;
    double vstar = -c.Q / rp;
    BaseAngle a0 = split_angle(theta0);
    double sn = std::sin(a0.base);
    double cs = std::cos(a0.base);  // >= 0 on the fundamental domain
    double den = sn - vstar * cs;
    // Within rounding noise of the equilibrium direction the trajectory is
    // the equilibrium itself; the branch bookkeeping below would otherwise
    // sit on a rounding knife edge and can misplace the lift by pi.
    if (std::abs(den) <= 1e-12 * std::hypot(1.0, vstar)) return theta0;
    double eta = cs / den - 0.5 * rp * tau;

    double thstar = std::atan(vstar);
    double branch = std::floor((theta0 - thstar) / kPi);
    double mid = thstar + branch * kPi + kHalfPi;
    double phi = (eta == 0.0) ? kHalfPi : std::atan(vstar + 1.0 / eta);
    double m = std::round((mid - phi) / kPi);
    return phi + m * kPi;
}

/// R != P, Delta > 0.  In y = (R-P) tan(theta) + Q the flow is
/// dy/dtau = (y^2 - Delta)/2, solved by G = (y - s)/(y + s), G(tau) =
/// G(0) e^{s tau} with s = sqrt(Delta).  Log-space evolution avoids
/// overflow; G = 1 is the +-pi/2 crossing.
double solve_two_real_roots(const PqrCoefficients& c, double theta0, double tau) {
    double rp = c.R - c.P;
    double s = std::sqrt(delta_of_pqr(c));
    BaseAngle a0 = split_angle(theta0);
    double sn = std::sin(a0.base);
    double cs = std::cos(a0.base);
    double n0 = rp * sn + c.Q * cs;  // y(0) * cos(theta0), overflow-free
    double num = n0 - s * cs;
    double den = n0 + s * cs;
    if (num == 0.0 || den == 0.0) return theta0;  // starting on an equilibrium

    double sig = sign_of(num) * sign_of(den);
    double logmag = std::log(std::abs(num)) - std::log(std::abs(den)) + s * tau;
    double phi;
    if (sig > 0.0 && logmag == 0.0) {
        phi = kHalfPi;  // exactly at the crossing
    } else {
        double y;
        if (logmag <= 0.0) {
            double g = sig * std::exp(logmag);  // |G| <= 1, G != 1
            y = s * (1.0 + g) / (1.0 - g);
        } else {
            double h = sig * std::exp(-logmag);  // H = 1/G, |H| < 1
            y = s * (h + 1.0) / (h - 1.0);
        }
        phi = std::atan((y - c.Q) / rp);
    }

    // The trajectory lives between two consecutive equilibrium lifts; pick
    // the representative of phi inside that branch.
    double tp = std::atan((s - c.Q) / rp);
    double tm = std::atan((-s - c.Q) / rp);
    double lo_p = tp + std::floor((theta0 - tp) / kPi) * kPi;
    double lo_m = tm + std::floor((theta0 - tm) / kPi) * kPi;
    double lo = std::max(lo_p, lo_m);
    double hi = std::min(lo_p, lo_m) + kPi;
    double mid = 0.5 * (lo + hi);
    double m = std::round((mid - phi) / kPi);
    return phi + m * kPi;
}

double rotational_phase_impl(double rp, double q, double omega, double theta) {
    BaseAngle a = split_angle(theta);
    double n = rp * std::sin(a.base) + q * std::cos(a.base);
    double psi_rep = std::atan2(n, omega * std::cos(a.base));
    return psi_rep + a.k * sign_of(rp) * kPi;
}

/// R != P, Delta < 0.  The phase psi = Psi(theta) advances uniformly:
/// psi(tau) = psi(0) + omega tau / 2.
double solve_rotational(const PqrCoefficients& c, double theta0, double tau) {
    double rp = c.R - c.P;
    double omega = std::sqrt(-delta_of_pqr(c));
    double sig = sign_of(rp);
    double psi = rotational_phase_impl(rp, c.Q, omega, theta0) + 0.5 * omega * tau;
    double j = std::floor((psi + kHalfPi) / kPi);
    double psib = psi - j * kPi;  // in [-pi/2, pi/2)
    double y = omega * std::tan(psib);
    double phi = std::atan((y - c.Q) / rp);
    return phi + sig * j * kPi;
}

}  // namespace

double rotational_phase(const PqrCoefficients& c, double theta) {
    double delta = delta_of_pqr(c);
    if (!(delta < 0.0))
        throw std::invalid_argument("rotational_phase: requires Delta < 0");
    return rotational_phase_impl(c.R - c.P, c.Q, std::sqrt(-delta), theta);
}

double rotational_period(const PqrCoefficients& c) {
    double delta = delta_of_pqr(c);
    if (!(delta < 0.0))
        throw std::invalid_argument("rotational_period: requires Delta < 0");
    return 2.0 * kPi / std::sqrt(-delta);
}

double solve_angular_unwrapped(const PqrCoefficients& c, double theta0, double t,
                               const Tolerance& tol) {
    if (!std::isfinite(theta0))
        throw std::invalid_argument("solve_angular_unwrapped: theta0 must be finite");
    if (!(t >= 0.0))
        throw UnsupportedTime("solve_angular_unwrapped: t must be >= 0");
    AngularCase ac = classify_case(c, tol);
    double out = theta0;
    switch (ac.tag) {
        case AngularCaseTag::Frozen: out = theta0; break;
        case AngularCaseTag::LinearInV: out = solve_linear_in_v(c, theta0, t); break;
        case AngularCaseTag::AffineDrift: out = solve_affine_drift(c, theta0, t); break;
        case AngularCaseTag::DoubleRoot: out = solve_double_root(c, theta0, t); break;
        case AngularCaseTag::TwoRealRoots: out = solve_two_real_roots(c, theta0, t); break;
        case AngularCaseTag::Rotational: out = solve_rotational(c, theta0, t); break;
    }
    if (!std::isfinite(out))
        throw UnsupportedTime("solve_angular_unwrapped: result overflowed");
    return out;
}

ProjectivePoint solve_angular_closed_form(const PqrCoefficients& c, double theta0, double t,
                                          const Tolerance& tol) {
    return ProjectivePoint::from_angle(solve_angular_unwrapped(c, theta0, t, tol));
}

ProjectiveControllability projective_controllable(const Mat2& a, const Mat2& b,
                                                  const ControlSet& u, const Tolerance& tol) {
    DeltaQuadratic d = delta_quadratic(a, b);
    DeltaClassification cls = classify_exists_negative(d, tol);
    for (const Interval& it : cls.negative_set) {
        double lo = it.lo;
        double hi = it.hi;
        if (!u.all_reals) {
            lo = std::max(lo, u.lo);
            hi = std::min(hi, u.hi);
        }
        if (!(lo < hi)) continue;  // needs interior: negative intervals are open
        double w;
        bool lo_inf = std::isinf(lo);
        bool hi_inf = std::isinf(hi);
        if (lo_inf && hi_inf)
            w = 0.0;
        else if (lo_inf)
            w = hi - 1.0;
        else if (hi_inf)
            w = lo + 1.0;
        else
            w = 0.5 * (lo + hi);
        return {true, w};
    }
    return {false, std::nullopt};
}

}  // namespace bilin2d
