#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "bilin2d/angular.hpp"
#include "bilin2d/mat2.hpp"
#include "bilin2d/tolerance.hpp"

namespace bilin2d {

/// Raised by the integrators when the step-doubling error monitor estimates
/// a scaled local error above 1e-3 for the requested dt.
struct StepTooLarge : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Piecewise-constant control: hold each u for the given duration, in order.
struct ControlSchedule {
    struct Segment {
        double duration = 0.0;
        double u = 0.0;

        friend bool operator==(const Segment&, const Segment&) = default;
    };

    std::vector<Segment> segments;

    double total_duration() const;
    /// Control active at time t (last segment's value from the end onward).
    double u_at(double t) const;
    /// Throws std::invalid_argument unless every duration is finite and > 0
    /// and every u is finite.
    void validate() const;

    friend bool operator==(const ControlSchedule&, const ControlSchedule&) = default;
};

/// Sampled trajectory.  Exactly one of states/thetas is populated (planar
/// vs angular run); times are strictly increasing and include t = 0;
/// controls[i] is the control in effect from times[i] onward.
struct Trajectory {
    std::vector<double> times;
    std::vector<Vec2> states;    // planar runs
    std::vector<double> thetas;  // angular runs, unwrapped (winding visible)
    std::vector<double> controls;
    /// True when planar integration stopped early because the state norm
    /// left [1e-300, 1e300]; the last recorded sample is the final valid one.
    bool truncated = false;

    friend bool operator==(const Trajectory&, const Trajectory&) = default;
};

/// Classical fixed-step 4th-order integration of dx/dt = (A + uB) x with a
/// uniform step of at most dt inside each schedule segment (segment
/// boundaries are hit exactly).  A step-doubling error monitor throws
/// StepTooLarge when the scaled local error estimate exceeds 1e-3.
Trajectory integrate_planar(const Mat2& a, const Mat2& b, const ControlSchedule& sched,
                            Vec2 x0, double dt = 1e-3);

/// Same integrator on the angle ODE; theta is accumulated without reduction.
Trajectory integrate_angular(const Mat2& a, const Mat2& b, const ControlSchedule& sched,
                             double theta0, double dt = 1e-3);

/// Integrate both representations from x0 (the angular run starts at the
/// argument of x0) and return the largest projective distance (angle
/// difference modulo pi) between the planar direction and theta across the
/// shared time grid.
double consistency_planar_vs_angular(const Mat2& a, const Mat2& b,
                                     const ControlSchedule& sched, Vec2 x0,
                                     double dt = 1e-3);

/// First hitting time of direction theta1 (mod pi) from theta0 under the
/// constant control u.  Defined only in the Rotational regime (Delta(u) < 0);
/// returns absent otherwise.  The result lies in [0, 2 pi / sqrt(-Delta)).
std::optional<double> reach_angle(const Mat2& a, const Mat2& b, double u,
                                  double theta0, double theta1,
                                  const Tolerance& tol = {});

}  // namespace bilin2d
