#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>

#include "bilin2d/control_set.hpp"
#include "bilin2d/delta.hpp"
#include "bilin2d/mat2.hpp"
#include "bilin2d/tolerance.hpp"

namespace bilin2d {

/// Raised for time arguments outside the supported domain: negative times,
/// or closed-form evaluations that leave the representable range (the
/// latter is defensive; the per-case formulas are arranged to avoid it).
struct UnsupportedTime : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Coefficients of the angle dynamics on the projective line:
///   dtheta/dt = (P cos 2theta + Q sin 2theta + R) / 2,
/// evaluated for M = A + uB.  S = tr(M) completes the parametrization
/// (M is recoverable from P, Q, R, S).
struct PqrCoefficients {
    double P = 0.0;
    double Q = 0.0;
    double R = 0.0;
    double S = 0.0;
    double u = 0.0;  // control at which the coefficients were evaluated

    friend bool operator==(const PqrCoefficients&, const PqrCoefficients&) = default;
};

PqrCoefficients pqr(const Mat2& a, const Mat2& b, double u);

/// Right-hand side of the angle ODE at theta.
double angular_rhs(const PqrCoefficients& c, double theta);

/// Delta = P^2 + Q^2 - R^2; equals tr^2(A+uB) - 4 det(A+uB).
double delta_of_pqr(const PqrCoefficients& c);

/// Tangential component of the linear field at a unit vector s:
/// h(A, s) = (A - (s^T A s) I) s.  Requires ||s|| = 1 within 1e-9.
Vec2 project_field(const Mat2& a, Vec2 s);

/// Solution regimes of the angle ODE.  In the chart v = tan(theta) the
/// dynamics is dv/dt = ((R-P) v^2 + 2 Q v + (R+P)) / 2, so the split is by
/// whether the v-quadratic degenerates (R = P) and by the sign of Delta.
enum class AngularCaseTag {
    LinearInV,     // R = P, Q != 0: exponential relaxation in v
    AffineDrift,   // R = P, Q = 0, P != 0: uniform drift in v
    Frozen,        // P = Q = R = 0: every direction is an equilibrium
    DoubleRoot,    // R != P, Delta = 0: one double equilibrium direction
    TwoRealRoots,  // R != P, Delta > 0: two equilibrium directions
    Rotational,    // R != P, Delta < 0: no equilibria, periodic sweep
};

const char* to_string(AngularCaseTag tag);
std::optional<AngularCaseTag> angular_case_from_string(const std::string& s);

struct AngularCase {
    AngularCaseTag tag = AngularCaseTag::Frozen;
    double delta = 0.0;
    /// Distance to the nearest judgement flip among the quantities consulted
    /// for this tag; near zero means the case call sits on a boundary.
    double margin = 0.0;

    // Case constants (present when meaningful for the tag).
    std::optional<double> drift;                     // AffineDrift: dv/dt
    std::optional<double> rate;                      // LinearInV: exponential rate (Q)
    std::optional<double> fixed_v;                   // LinearInV/DoubleRoot equilibrium in v
    std::optional<std::array<double, 2>> roots_v;    // TwoRealRoots equilibria, sorted
    std::optional<double> omega;                     // Rotational: sqrt(-Delta)

    friend bool operator==(const AngularCase&, const AngularCase&) = default;
};

AngularCase classify_case(const PqrCoefficients& c, const Tolerance& tol = {});

/// Direction on the projective line, represented by theta in (-pi/2, pi/2].
struct ProjectivePoint {
    double theta = 0.0;

    static ProjectivePoint from_angle(double raw);
    double v() const { return std::tan(theta); }

    friend bool operator==(const ProjectivePoint&, const ProjectivePoint&) = default;
};

/// Exact solution of the angle ODE as a continuous lift: theta(t) with
/// theta(0) = theta0, not reduced modulo pi, so winding is measurable.
/// Crossings of +-pi/2 (finite-time escape of v) are followed through by
/// evaluating each case in a coordinate where the evolution is affine.
/// Requires t >= 0.
double solve_angular_unwrapped(const PqrCoefficients& c, double theta0, double t,
                               const Tolerance& tol = {});

/// Same solution reduced to the projective fundamental domain.
ProjectivePoint solve_angular_closed_form(const PqrCoefficients& c, double theta0,
                                          double t, const Tolerance& tol = {});

/// Unwrapped phase of the Rotational case: strictly monotone in theta,
/// advancing at rate sqrt(-Delta)/2 along trajectories, with
/// phase(theta + pi) = phase(theta) + sign(R-P) pi.  Requires Delta < 0.
double rotational_phase(const PqrCoefficients& c, double theta);

/// Time for theta to advance by pi in the Rotational case: 2 pi / sqrt(-Delta).
double rotational_period(const PqrCoefficients& c);

struct ProjectiveControllability {
    bool controllable = false;
    std::optional<double> witness_u;

    friend bool operator==(const ProjectiveControllability&,
                           const ProjectiveControllability&) = default;
};

/// The induced system on the projective line is controllable iff some
/// admissible control makes Delta negative.  Decided analytically from the
/// sign classification of Delta intersected with U; the witness is the
/// midpoint of the first feasible interval (shifted one unit inward from a
/// finite end when the interval is unbounded, zero when it is all of R).
ProjectiveControllability projective_controllable(const Mat2& a, const Mat2& b,
                                                  const ControlSet& u,
                                                  const Tolerance& tol = {});

}  // namespace bilin2d
