#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "bilin2d/spectrum.hpp"
#include "oracles.hpp"

using namespace bilin2d;

namespace {

bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }

const Mat2 kAe{2.0, -1.0, 0.0, 1.0};  // triangular-plus-rotation pair
const Mat2 kBe{0.0, 1.0, -1.0, 0.0};

bool strictly_inside(const std::vector<Interval>& xs, double v) {
    for (const Interval& it : xs)
        if (v > it.lo && v < it.hi) return true;
    return false;
}

// Hull of attainable real parts by dense sampling (reference only).
Interval brute_re_hull(const Mat2& a, const Mat2& b, double lo, double hi, int n) {
    Interval out{1e308, -1e308};
    for (int i = 0; i <= n; ++i) {
        double u = lo + (hi - lo) * i / n;
        auto e = eigenvalues(a + b * u);
        out.lo = std::min(out.lo, e[0].real());
        out.hi = std::max(out.hi, e[1].real());
    }
    return out;
}

}  // namespace

TEST_CASE("pencil eigenvalues at fixed controls") {
    auto e0 = eigenvalues_of_pencil(kAe, kBe, 0.0);
    CHECK_EQ(e0[0].real(), doctest::Approx(1.0).epsilon(1e-14));
    CHECK_EQ(e0[1].real(), doctest::Approx(2.0).epsilon(1e-14));
    CHECK_EQ(e0[0].imag(), 0.0);

    // Against the matrix-side eigenvalue routine (different computational path).
    std::mt19937_64 rng(51);
    std::uniform_real_distribution<double> du(-5.0, 5.0);
    for (int trial = 0; trial < 300; ++trial) {
        Mat2 a = oracle::random_mat(rng);
        Mat2 b = oracle::random_mat(rng);
        double u = du(rng);
        auto via_pencil = eigenvalues_of_pencil(a, b, u);
        auto via_matrix = eigenvalues(a + b * u);
        double scale = 1 + a.max_norm() + 5 * b.max_norm();
        for (int i = 0; i < 2; ++i) {
            CHECK(close(via_pencil[i].real(), via_matrix[i].real(), 1e-9 * scale));
            CHECK(close(via_pencil[i].imag(), via_matrix[i].imag(), 1e-9 * scale));
        }
    }
}

TEST_CASE("zero-in-interior test on the worked pair") {
    // Projectively controllable, tr(B) = 0, and the trace-zero quantity is
    // tr^2(AB) - 4 det(AB) = -7: zero stays outside the interior.
    ZeroInteriorResult r = zero_in_interior_sigma_re(kAe, kBe, true);
    CHECK_FALSE(r.zero_in_interior);
    CHECK(r.lemma == LemmaTag::TraceZeroIff);
    CHECK_EQ(r.trace_zero_test_value, doctest::Approx(-7.0).epsilon(1e-14));

    // Without projective controllability nothing is settled.
    ZeroInteriorResult rn = zero_in_interior_sigma_re(kAe, kBe, false);
    CHECK_FALSE(rn.zero_in_interior);
    CHECK(rn.lemma == LemmaTag::None);
}

TEST_CASE("nonzero trace forces zero inside") {
    Mat2 a{0.0, -1.0, 1.0, 0.0};
    ZeroInteriorResult r = zero_in_interior_sigma_re(a, Mat2::identity(), true);
    CHECK(r.zero_in_interior);
    CHECK(r.lemma == LemmaTag::TraceNonzero);
}

TEST_CASE("traceless input with a positive test value") {
    // tr(B) = 0 and tr^2(AB) - 4 det(AB) = 4 > 0: zero is interior.
    Mat2 a{0.0, -1.0, 1.0, 0.0};
    Mat2 b{1.0, 0.0, 0.0, -1.0};
    CHECK_EQ(b.trace(), 0.0);
    CHECK_EQ((a * b).trace() * (a * b).trace() - 4.0 * (a * b).det(), 4.0);
    ZeroInteriorResult r = zero_in_interior_sigma_re(a, b, true);
    CHECK(r.zero_in_interior);
    CHECK(r.lemma == LemmaTag::TraceZeroIff);
    CHECK_EQ(r.trace_zero_test_value, 4.0);

    // And the sampled range confirms it.
    auto range = sigma_re_range(a, b, ControlSet::reals(), 4001, 50.0);
    CHECK(strictly_inside(range, 0.0));
}

TEST_CASE("trace-zero criterion agrees with dense range sampling") {
    std::mt19937_64 rng(52);
    std::uniform_real_distribution<double> d(-3.0, 3.0);
    int settled = 0;
    for (int trial = 0; trial < 120; ++trial) {
        Mat2 a = oracle::random_mat(rng);
        double b11 = d(rng);
        Mat2 b{b11, d(rng), d(rng), -b11};  // traceless input
        ProjectiveControllability pc = projective_controllable(a, b, ControlSet::reals());
        if (!pc.controllable) continue;
        ZeroInteriorResult r = zero_in_interior_sigma_re(a, b, true);
        REQUIRE(r.lemma == LemmaTag::TraceZeroIff);
        // Skip judgement-fragile draws.
        if (std::abs(r.trace_zero_test_value) < 1e-3) continue;
        ++settled;
        auto range = sigma_re_range(a, b, ControlSet::reals(), 8001, 200.0);
        CHECK_EQ(strictly_inside(range, 0.0), r.zero_in_interior);
    }
    CHECK(settled > 30);
}

TEST_CASE("attainable real parts of the worked pair") {
    auto range = sigma_re_range(kAe, kBe, ControlSet::reals());
    REQUIRE_EQ(range.size(), 1);
    CHECK(close(range[0].lo, (3.0 - std::sqrt(2.0)) / 2.0, 1e-9));
    CHECK(close(range[0].hi, (3.0 + std::sqrt(2.0)) / 2.0, 1e-9));
    CHECK_FALSE(strictly_inside(range, 0.0));
}

TEST_CASE("range reporting in degenerate families") {
    // Zero input matrix: the spectrum never moves.
    Mat2 j{0.0, 1.0, -1.0, 0.0};
    auto fixed = sigma_re_range(j, Mat2::zero(), ControlSet::reals());
    REQUIRE_EQ(fixed.size(), 1);
    CHECK_EQ(fixed[0].lo, 0.0);
    CHECK_EQ(fixed[0].hi, 0.0);

    // Identity input: real parts sweep the clipped control window.
    auto sweep = sigma_re_range(j, Mat2::identity(), ControlSet::reals(), 2001, 100.0);
    REQUIRE_EQ(sweep.size(), 1);
    CHECK_EQ(sweep[0].lo, doctest::Approx(-100.0));
    CHECK_EQ(sweep[0].hi, doctest::Approx(100.0));

    // Bounded controls are not clipped.
    auto window = sigma_re_range(j, Mat2::identity(), ControlSet::interval(-2.0, 3.0));
    REQUIRE_EQ(window.size(), 1);
    CHECK_EQ(window[0].lo, doctest::Approx(-2.0));
    CHECK_EQ(window[0].hi, doctest::Approx(3.0));

    CHECK_THROWS_AS(sigma_re_range(j, j, ControlSet::reals(), 1), std::invalid_argument);
}

TEST_CASE("range hull matches dense sampling on bounded windows") {
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 40; ++trial) {
        Mat2 a = oracle::random_mat(rng);
        Mat2 b = oracle::random_mat(rng);
        ControlSet u = ControlSet::interval(-3.0, 2.0);
        auto range = sigma_re_range(a, b, u, 4001);
        REQUIRE_FALSE(range.empty());
        Interval brute = brute_re_hull(a, b, -3.0, 2.0, 20000);
        double scale = 1 + a.max_norm() + 3 * b.max_norm();
        CHECK(close(range.front().lo, brute.lo, 1e-3 * scale));
        CHECK(close(range.back().hi, brute.hi, 1e-3 * scale));
        // Intervals come ordered and disjoint.
        for (std::size_t i = 0; i + 1 < range.size(); ++i)
            CHECK(range[i].hi < range[i + 1].lo);
    }
}

TEST_CASE("summary bundles the spectrum facts") {
    SpectrumSummary s = summarize_spectrum(kAe, kBe, ControlSet::reals(), true);
    CHECK_EQ(s.trace_b, 0.0);
    REQUIRE_EQ(s.re_range.size(), 1);
    CHECK(close(s.re_range[0].lo, (3.0 - std::sqrt(2.0)) / 2.0, 1e-9));
    CHECK_FALSE(s.zero_in_interior);
    CHECK(s.lemma_used == LemmaTag::TraceZeroIff);
    CHECK_EQ(s.trace_zero_test_value, doctest::Approx(-7.0));
}

TEST_CASE("verdict chain: rank failure wins") {
    Mat2 a3{1.0, 2.0, 0.0, 1.0};
    Mat2 b3{2.0, 3.0, 0.0, 2.0};
    ControllabilityVerdict v = controllability_verdict(a3, b3, ControlSet::reals());
    CHECK(v.status == ControllabilityStatus::NotControllable);
    REQUIRE_FALSE(v.reasons.empty());
    CHECK_EQ(v.reasons.front().condition, "larc");
    CHECK_FALSE(v.reasons.front().holds);
}

TEST_CASE("verdict chain: projective failure wins after rank passes") {
    // Rank condition holds but Delta is never negative.
    Mat2 a{0.0, 1.0, 1.0, 0.0};
    Mat2 b{1.0, 0.0, 0.0, -1.0};
    LarcVerdict lv = decide_larc(a, b);
    CHECK(lv.holds);
    ControllabilityVerdict v = controllability_verdict(a, b, ControlSet::reals());
    CHECK(v.status == ControllabilityStatus::NotControllable);
    REQUIRE_GE(v.reasons.size(), 2);
    CHECK_EQ(v.reasons[0].condition, "larc");
    CHECK(v.reasons[0].holds);
    CHECK_EQ(v.reasons[1].condition, "projective_controllability");
    CHECK_FALSE(v.reasons[1].holds);
}

TEST_CASE("verdict chain: controllable via the nonzero-trace route") {
    Mat2 a{0.0, -1.0, 1.0, 0.0};
    ControllabilityVerdict v = controllability_verdict(a, Mat2::identity(), ControlSet::reals());
    CHECK(v.status == ControllabilityStatus::Controllable);
    bool saw_trace = false;
    for (const auto& re : v.reasons)
        if (re.condition == "trace_nonzero" && re.holds) saw_trace = true;
    CHECK(saw_trace);
}

TEST_CASE("verdict chain: controllable via the trace-zero spectrum route") {
    Mat2 a{0.0, -1.0, 1.0, 0.0};
    Mat2 b{1.0, 0.0, 0.0, -1.0};
    ControllabilityVerdict v = controllability_verdict(a, b, ControlSet::reals());
    CHECK(v.status == ControllabilityStatus::Controllable);
    bool saw_spec = false;
    for (const auto& re : v.reasons)
        if (re.condition == "spectrum_interior" && re.holds) saw_spec = true;
    CHECK(saw_spec);
}

TEST_CASE("verdict chain: sufficiency blocked means inconclusive, not negative") {
    ControllabilityVerdict v = controllability_verdict(kAe, kBe, ControlSet::reals());
    CHECK(v.status == ControllabilityStatus::Inconclusive);
    // The spectrum reason is present, failed, and mentions evidence.
    bool saw = false;
    for (const auto& re : v.reasons)
        if (re.condition == "spectrum_interior") {
            saw = true;
            CHECK_FALSE(re.holds);
            CHECK_FALSE(re.evidence.empty());
        }
    CHECK(saw);
}

TEST_CASE("inconclusive never downgrades to not-controllable on spectrum grounds") {
    std::mt19937_64 rng(54);
    for (int trial = 0; trial < 100; ++trial) {
        Mat2 a = oracle::random_mat(rng);
        Mat2 b = oracle::random_mat(rng);
        ControllabilityVerdict v = controllability_verdict(a, b, ControlSet::reals());
        if (v.status == ControllabilityStatus::NotControllable) {
            // Only the two necessary conditions may justify this.
            REQUIRE_FALSE(v.reasons.empty());
            const VerdictReason& last = v.reasons.back();
            CHECK((last.condition == "larc" || last.condition == "projective_controllability"));
            CHECK_FALSE(last.holds);
        }
    }
}

TEST_CASE("status and lemma strings round-trip") {
    for (ControllabilityStatus s :
         {ControllabilityStatus::Controllable, ControllabilityStatus::NotControllable,
          ControllabilityStatus::Inconclusive}) {
        auto back = status_from_string(to_string(s));
        REQUIRE(back.has_value());
        CHECK(*back == s);
    }
    for (LemmaTag t : {LemmaTag::None, LemmaTag::TraceNonzero, LemmaTag::TraceZeroIff}) {
        auto back = lemma_tag_from_string(to_string(t));
        REQUIRE(back.has_value());
        CHECK(*back == t);
    }
    CHECK_EQ(std::string(to_string(ControllabilityStatus::Inconclusive)), "inconclusive");
    CHECK_FALSE(status_from_string("maybe").has_value());
}
