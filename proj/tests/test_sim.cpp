#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "bilin2d/sim.hpp"
#include "oracles.hpp"

using namespace bilin2d;

namespace {

bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }

const Mat2 kJ{0.0, 1.0, -1.0, 0.0};
const Mat2 kAe{2.0, -1.0, 0.0, 1.0};
const Mat2 kBe{0.0, 1.0, -1.0, 0.0};

ControlSchedule one_segment(double duration, double u) {
    ControlSchedule s;
    s.segments.push_back({duration, u});
    return s;
}

}  // namespace

TEST_CASE("schedule bookkeeping") {
    ControlSchedule s;
    s.segments = {{0.5, 1.0}, {2.0, 0.0}, {1.0, -3.0}};
    CHECK_EQ(s.total_duration(), doctest::Approx(3.5));
    CHECK_EQ(s.u_at(0.0), 1.0);
    CHECK_EQ(s.u_at(0.49), 1.0);
    CHECK_EQ(s.u_at(0.5), 0.0);   // boundaries belong to the next segment
    CHECK_EQ(s.u_at(2.5), -3.0);
    CHECK_EQ(s.u_at(99.0), -3.0); // last value holds beyond the end
    s.validate();

    ControlSchedule empty;
    CHECK_THROWS_AS(empty.validate(), std::invalid_argument);
    ControlSchedule bad;
    bad.segments = {{0.0, 1.0}};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    ControlSchedule nonfinite;
    nonfinite.segments = {{1.0, INFINITY}};
    CHECK_THROWS_AS(nonfinite.validate(), std::invalid_argument);
}

TEST_CASE("pure rotation returns after a full turn") {
    Trajectory t = integrate_planar(kJ, Mat2::zero(), one_segment(2.0 * oracle::kPi, 0.0),
                                    Vec2{1.0, 0.0});
    REQUIRE_FALSE(t.states.empty());
    CHECK_FALSE(t.truncated);
    CHECK_EQ(t.times.front(), 0.0);
    CHECK_EQ(t.times.back(), doctest::Approx(2.0 * oracle::kPi).epsilon(1e-12));
    Vec2 last = t.states.back();
    CHECK(close(last.x1, 1.0, 1e-6));
    CHECK(close(last.x2, 0.0, 1e-6));
    for (const Vec2& x : t.states) CHECK(close(x.norm(), 1.0, 1e-7));
}

TEST_CASE("planar integration matches the matrix exponential per segment") {
    std::mt19937_64 rng(61);
    for (int trial = 0; trial < 20; ++trial) {
        Mat2 a = oracle::random_mat(rng, 1.5);
        Mat2 b = oracle::random_mat(rng, 1.5);
        ControlSchedule sched;
        sched.segments = {{0.7, -0.5}, {0.4, 1.25}, {0.9, 0.0}};
        Vec2 x0{1.0, -0.5};
        Trajectory t = integrate_planar(a, b, sched, x0, 1e-4);
        Vec2 want = x0;
        want = oracle::flow(a + b * -0.5, 0.7, want);
        want = oracle::flow(a + b * 1.25, 0.4, want);
        want = oracle::flow(a + b * 0.0, 0.9, want);
        Vec2 got = t.states.back();
        double scale = 1 + want.norm();
        CHECK(close(got.x1, want.x1, 1e-9 * scale));
        CHECK(close(got.x2, want.x2, 1e-9 * scale));
        // Segment boundaries appear exactly in the time grid.
        bool saw_07 = false, saw_11 = false;
        for (double tm : t.times) {
            if (tm == 0.7) saw_07 = true;
            if (close(tm, 1.1, 1e-12)) saw_11 = true;
        }
        CHECK(saw_07);
        CHECK(saw_11);
        // Recorded controls match the schedule.
        for (std::size_t i = 0; i + 1 < t.times.size(); ++i)
            CHECK_EQ(t.controls[i], sched.u_at(t.times[i]));
    }
}

TEST_CASE("integration error shrinks at fourth order") {
    Mat2 a{0.3, 1.0, -1.0, 0.2};
    ControlSchedule sched = one_segment(2.0, 0.7);
    Mat2 b{0.1, 0.2, -0.3, 0.4};
    Vec2 x0{0.8, 0.6};
    Vec2 exact = oracle::flow(a + b * 0.7, 2.0, x0);
    auto err_at = [&](double dt) {
        Vec2 got = integrate_planar(a, b, sched, x0, dt).states.back();
        return (got - exact).norm();
    };
    double e1 = err_at(1e-2);
    double e2 = err_at(5e-3);
    double ratio = e1 / e2;
    CHECK(ratio > 12.0);
    CHECK(ratio < 20.0);
}

TEST_CASE("angle integration tracks the planar direction") {
    std::mt19937_64 rng(62);
    for (int trial = 0; trial < 15; ++trial) {
        Mat2 a = oracle::random_mat(rng, 1.5);
        Mat2 b = oracle::random_mat(rng, 1.5);
        ControlSchedule sched;
        sched.segments = {{1.0, 0.4}, {1.5, -1.1}};
        double worst = consistency_planar_vs_angular(a, b, sched, Vec2{0.6, 0.8});
        CHECK(worst <= 1e-4);
        double tight = consistency_planar_vs_angular(a, b, sched, Vec2{0.6, 0.8}, 1e-4);
        CHECK(tight <= 1e-6);
    }
}

TEST_CASE("angle integration agrees with the closed form") {
    PqrCoefficients c = pqr(kAe, kBe, 2.0);
    double theta0 = 0.3;
    Trajectory t = integrate_angular(kAe, kBe, one_segment(3.0, 2.0), theta0, 1e-4);
    double want = solve_angular_unwrapped(c, theta0, 3.0);
    CHECK(close(t.thetas.back(), want, 1e-7));
}

TEST_CASE("too-coarse steps are refused, not silently wrong") {
    Mat2 stiff{1e4, 0.0, 0.0, -1e4};
    CHECK_THROWS_AS(
        integrate_planar(stiff, Mat2::zero(), one_segment(1.0, 0.0), Vec2{1.0, 1.0}, 0.1),
        StepTooLarge);
}

TEST_CASE("runaway growth truncates the trajectory instead of overflowing") {
    Mat2 grow{5.0, 0.0, 0.0, 5.0};
    Trajectory t =
        integrate_planar(grow, Mat2::zero(), one_segment(200.0, 0.0), Vec2{1.0, 0.0});
    CHECK(t.truncated);
    REQUIRE_FALSE(t.times.empty());
    CHECK(t.times.back() < 200.0);
    for (const Vec2& x : t.states) CHECK(x.finite());

    // Decay toward zero truncates as well (norm leaves the window from below).
    Mat2 decay{-5.0, 0.0, 0.0, -5.0};
    Trajectory d =
        integrate_planar(decay, Mat2::zero(), one_segment(200.0, 0.0), Vec2{1.0, 0.0});
    CHECK(d.truncated);
    CHECK(d.times.back() < 200.0);
}

TEST_CASE("invalid start states are rejected") {
    CHECK_THROWS_AS(
        integrate_planar(kJ, Mat2::zero(), one_segment(1.0, 0.0), Vec2{0.0, 0.0}),
        std::invalid_argument);
    CHECK_THROWS_AS(
        integrate_planar(kJ, Mat2::zero(), one_segment(1.0, 0.0), Vec2{std::nan(""), 1.0}),
        std::invalid_argument);
}

TEST_CASE("hitting times in the rotational regime") {
    // Pure rotation: the direction angle decreases at unit speed.
    auto t1 = reach_angle(kJ, Mat2::zero(), 0.0, 0.3, 0.3 - 1.0);
    REQUIRE(t1.has_value());
    CHECK_EQ(*t1, doctest::Approx(1.0).epsilon(1e-10));

    // Against the closed-form flow for the worked pair at a rotational control.
    PqrCoefficients c = pqr(kAe, kBe, 2.0);
    AngularCase k = classify_case(c);
    REQUIRE(k.tag == AngularCaseTag::Rotational);
    double period = rotational_period(c);
    std::mt19937_64 rng(63);
    std::uniform_real_distribution<double> dth(-oracle::kPi, oracle::kPi);
    for (int trial = 0; trial < 60; ++trial) {
        double th0 = dth(rng);
        double th1 = dth(rng);
        auto t = reach_angle(kAe, kBe, 2.0, th0, th1);
        REQUIRE(t.has_value());
        CHECK(*t >= 0.0);
        CHECK(*t < period + 1e-12);
        double arrived = solve_angular_unwrapped(c, th0, *t);
        CHECK(oracle::angle_diff_mod_pi(arrived, th1) <= 1e-8);
    }

    // Off the rotational regime there is no universal hitting time.
    CHECK_FALSE(reach_angle(kAe, kBe, 0.0, 0.2, 1.0).has_value());

    // Reaching the start angle again takes zero time.
    auto t0 = reach_angle(kAe, kBe, 2.0, 0.4, 0.4);
    REQUIRE(t0.has_value());
    CHECK(close(*t0, 0.0, 1e-12));
}

TEST_CASE("every direction is reachable under a rotational control") {
    // Sweep a grid of targets from a fixed start; times must fill [0, period).
    PqrCoefficients c = pqr(kAe, kBe, 2.0);
    double period = rotational_period(c);
    double tmin = 1e300, tmax = -1e300;
    for (int k = 0; k < 64; ++k) {
        double th1 = -oracle::kPi / 2 + oracle::kPi * k / 64.0;
        auto t = reach_angle(kAe, kBe, 2.0, 0.0, th1);
        REQUIRE(t.has_value());
        tmin = std::min(tmin, *t);
        tmax = std::max(tmax, *t);
    }
    CHECK(tmin < period / 64.0);
    CHECK(tmax > period * (1.0 - 2.0 / 64.0));
}
