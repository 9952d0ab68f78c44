#include "bilin2d/sim.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace bilin2d {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kMaxScaledLocalError = 1e-3;
constexpr double kNormFloor = 1e-300;
constexpr double kNormCeil = 1e300;

Vec2 rk4_step_planar(const Mat2& m, Vec2 x, double h) {
    Vec2 k1 = m * x;
    Vec2 k2 = m * (x + (0.5 * h) * k1);
    Vec2 k3 = m * (x + (0.5 * h) * k2);
    Vec2 k4 = m * (x + h * k3);
    return x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

double rk4_step_angular(const PqrCoefficients& c, double th, double h) {
    double k1 = angular_rhs(c, th);
    double k2 = angular_rhs(c, th + 0.5 * h * k1);
    double k3 = angular_rhs(c, th + 0.5 * h * k2);
    double k4 = angular_rhs(c, th + h * k3);
    return th + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

[[noreturn]] void throw_step_too_large(double t, double err) {
    throw StepTooLarge("step-doubling error estimate " + std::to_string(err) +
                       " exceeds " + std::to_string(kMaxScaledLocalError) + " at t = " +
                       std::to_string(t) + "; reduce dt");
}

int steps_for(double duration, double dt) {
    int n = static_cast<int>(std::ceil(duration / dt - 1e-12));
    return std::max(n, 1);
}

void check_dt(double dt) {
    if (!(dt > 0.0) || !std::isfinite(dt))
        throw std::invalid_argument("integrate: dt must be positive and finite");
}

}  // namespace

double ControlSchedule::total_duration() const {
    double sum = 0.0;
    for (const Segment& s : segments) sum += s.duration;
    return sum;
}

double ControlSchedule::u_at(double t) const {
    double acc = 0.0;
    for (const Segment& s : segments) {
        acc += s.duration;
        if (t < acc) return s.u;
    }
    return segments.empty() ? 0.0 : segments.back().u;
}

void ControlSchedule::validate() const {
    if (segments.empty())
        throw std::invalid_argument("ControlSchedule: needs at least one segment");
    for (const Segment& s : segments) {
        if (!std::isfinite(s.duration) || !(s.duration > 0.0))
            throw std::invalid_argument("ControlSchedule: durations must be finite and > 0");
        if (!std::isfinite(s.u))
            throw std::invalid_argument("ControlSchedule: controls must be finite");
    }
    if (!std::isfinite(total_duration()))
        throw std::invalid_argument("ControlSchedule: total duration overflows");
}

Trajectory integrate_planar(const Mat2& a, const Mat2& b, const ControlSchedule& sched,
                            Vec2 x0, double dt) {
    sched.validate();
    check_dt(dt);
    if (!x0.finite() || x0.norm() < kNormFloor)
        throw std::invalid_argument("integrate_planar: x0 must be finite and nonzero");

    Trajectory traj;
    double t = 0.0;
    Vec2 x = x0;
    traj.times.push_back(t);
    traj.states.push_back(x);
    traj.controls.push_back(sched.segments.front().u);

    for (const ControlSchedule::Segment& seg : sched.segments) {
        Mat2 m = a + seg.u * b;
        int n = steps_for(seg.duration, dt);
        double h = seg.duration / n;
        double t_seg_start = t;
        for (int i = 0; i < n; ++i) {
            Vec2 full = rk4_step_planar(m, x, h);
            // Blow-up guard first, so overflow truncates instead of feeding
            // non-finite values into the error monitor.
            double nrm = full.norm();
            if (!full.finite() || nrm >= kNormCeil || nrm <= kNormFloor) {
                traj.truncated = true;
                return traj;
            }
            Vec2 half = rk4_step_planar(m, rk4_step_planar(m, x, 0.5 * h), 0.5 * h);
            double err = (full - half).norm() / 15.0 / (1.0 + half.norm());
            if (!(err <= kMaxScaledLocalError)) throw_step_too_large(t, err);
            x = full;
            // Land segment ends exactly so boundaries are shared samples.
            t = (i + 1 == n) ? t_seg_start + seg.duration : t + h;
            traj.times.push_back(t);
            traj.states.push_back(x);
            traj.controls.push_back(sched.u_at(t));
        }
    }
    return traj;
}

Trajectory integrate_angular(const Mat2& a, const Mat2& b, const ControlSchedule& sched,
                             double theta0, double dt) {
    sched.validate();
    check_dt(dt);
    if (!std::isfinite(theta0))
        throw std::invalid_argument("integrate_angular: theta0 must be finite");

    Trajectory traj;
    double t = 0.0;
    double th = theta0;
    traj.times.push_back(t);
    traj.thetas.push_back(th);
    traj.controls.push_back(sched.segments.front().u);

    for (const ControlSchedule::Segment& seg : sched.segments) {
        PqrCoefficients c = pqr(a, b, seg.u);
        int n = steps_for(seg.duration, dt);
        double h = seg.duration / n;
        double t_seg_start = t;
        for (int i = 0; i < n; ++i) {
            double full = rk4_step_angular(c, th, h);
            double half = rk4_step_angular(c, rk4_step_angular(c, th, 0.5 * h), 0.5 * h);
            double err = std::abs(full - half) / 15.0 / (1.0 + std::abs(half));
            if (!(err <= kMaxScaledLocalError)) throw_step_too_large(t, err);
            th = full;
            t = (i + 1 == n) ? t_seg_start + seg.duration : t + h;
            traj.times.push_back(t);
            traj.thetas.push_back(th);
            traj.controls.push_back(sched.u_at(t));
        }
    }
    return traj;
}

double consistency_planar_vs_angular(const Mat2& a, const Mat2& b,
                                     const ControlSchedule& sched, Vec2 x0, double dt) {
    Trajectory planar = integrate_planar(a, b, sched, x0, dt);
    Trajectory angular = integrate_angular(a, b, sched, std::atan2(x0.x2, x0.x1), dt);
    std::size_t n = std::min(planar.times.size(), angular.times.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double dir = std::atan2(planar.states[i].x2, planar.states[i].x1);
        double diff = std::remainder(dir - angular.thetas[i], kPi);
        worst = std::max(worst, std::abs(diff));
    }
    return worst;
}

std::optional<double> reach_angle(const Mat2& a, const Mat2& b, double u, double theta0,
                                  double theta1, const Tolerance& tol) {
    if (!std::isfinite(theta0) || !std::isfinite(theta1))
        throw std::invalid_argument("reach_angle: angles must be finite");
    PqrCoefficients c = pqr(a, b, u);
    double delta = delta_of_pqr(c);
    double dscale = c.P * c.P + c.Q * c.Q + c.R * c.R;
    if (!tol.is_negative(delta, dscale)) return std::nullopt;

    double sig = (c.R - c.P) > 0.0 ? 1.0 : -1.0;
    double omega = std::sqrt(-delta);
    // Directed projective gap in [0, pi) along the flow direction.
    double gap = std::fmod(sig * (theta1 - theta0), kPi);
    if (gap < 0.0) gap += kPi;
    double target = theta0 + sig * gap;
    double t = 2.0 * (rotational_phase(c, target) - rotational_phase(c, theta0)) / omega;
    if (t < 0.0) t = 0.0;  // guard microscopic negatives at gap ~ 0
    return t;
}

}  // namespace bilin2d
