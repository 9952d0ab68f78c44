#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "bilin2d/delta.hpp"
#include "oracles.hpp"

using namespace bilin2d;

namespace {

bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }

const Mat2 kAe{2.0, -1.0, 0.0, 1.0};  // triangular-plus-rotation pair
const Mat2 kBe{0.0, 1.0, -1.0, 0.0};

// Is u inside the (open) negative set reported by the classification?
bool in_negative_set(const DeltaClassification& c, double u) {
    for (const Interval& it : c.negative_set)
        if (u > it.lo && u < it.hi) return true;
    return false;
}

}  // namespace

TEST_CASE("coefficients of the control quadratic") {
    DeltaQuadratic d = delta_quadratic(kAe, kBe);
    CHECK_EQ(d.alpha, -4.0);
    CHECK_EQ(d.beta, 4.0);
    CHECK_EQ(d.gamma, 1.0);
    CHECK_EQ(d.det_bracket, -2.0);

    // Spiral drift with a scalar input matrix: constant negative discriminant.
    Mat2 spiral{1.0, -2.0, 2.0, 1.0};
    DeltaQuadratic ds = delta_quadratic(spiral, Mat2::identity() * 3.0);
    CHECK_EQ(ds.alpha, 0.0);
    CHECK_EQ(ds.beta, 0.0);
    CHECK_EQ(ds.gamma, -16.0);
    for (double u : {-5.0, 0.0, 5.0}) CHECK_EQ(ds.eval(u), -16.0);
}

TEST_CASE("quadratic evaluates to the pointwise characteristic discriminant") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> du(-5.0, 5.0);
    for (int trial = 0; trial < 300; ++trial) {
        Mat2 a = oracle::random_mat(rng);
        Mat2 b = oracle::random_mat(rng);
        DeltaQuadratic d = delta_quadratic(a, b);
        double u = du(rng);
        double ref = char_discriminant(a + b * u);
        double scale = a.max_norm() + std::abs(u) * b.max_norm();
        CHECK(close(d.eval(u), ref, 1e-10 * (1 + scale * scale)));
    }
}

TEST_CASE("quadratic's own discriminant is -16 det([A,B])") {
    std::mt19937_64 rng(32);
    for (int trial = 0; trial < 300; ++trial) {
        Mat2 a = oracle::random_mat(rng);
        Mat2 b = oracle::random_mat(rng);
        DeltaQuadratic d = delta_quadratic(a, b);
        double lhs = d.beta * d.beta - 4.0 * d.alpha * d.gamma;
        double rhs = -16.0 * bracket(a, b).det();
        double scale = a.max_norm() * b.max_norm();
        CHECK(close(lhs, rhs, 1e-9 * (1 + scale * scale)));
        CHECK(close(d.det_bracket, bracket(a, b).det(), 1e-12 * (1 + scale * scale)));
    }
}

TEST_CASE("extremum location and value") {
    DeltaQuadratic d = delta_quadratic(kAe, kBe);
    auto ext = delta_extremum(d);
    REQUIRE(ext.has_value());
    CHECK_EQ(ext->first, doctest::Approx(0.5).epsilon(1e-14));
    CHECK_EQ(ext->second, doctest::Approx(2.0).epsilon(1e-14));

    // Value identity: extremum value = 4 det([A,B]) / alpha.
    std::mt19937_64 rng(33);
    for (int trial = 0; trial < 200; ++trial) {
        Mat2 a = oracle::random_mat(rng);
        Mat2 b = oracle::random_mat(rng);
        DeltaQuadratic q = delta_quadratic(a, b);
        auto e = delta_extremum(q);
        if (!e.has_value()) continue;
        double direct = q.eval(e->first);
        double scale = 1 + std::abs(q.gamma) + std::abs(q.beta) + std::abs(q.alpha);
        CHECK(close(e->second, direct, 1e-8 * scale));
        CHECK(close(e->second, 4.0 * q.det_bracket / q.alpha, 1e-8 * scale));
    }

    // No extremum when the quadratic degenerates to a line or constant.
    DeltaQuadratic lin{0.0, 2.0, 1.0, 0.0};
    CHECK_FALSE(delta_extremum(lin).has_value());
}

TEST_CASE("classification of the worked pair: quadratic with negative bracket") {
    DeltaQuadratic d = delta_quadratic(kAe, kBe);
    DeltaClassification c = classify_exists_negative(d);
    CHECK(c.label == DeltaCaseLabel::A2);
    CHECK(c.exists_negative);
    REQUIRE_EQ(c.negative_set.size(), 2);
    CHECK(std::isinf(c.negative_set[0].lo));
    CHECK_EQ(c.negative_set[0].hi, doctest::Approx((1.0 - std::sqrt(2.0)) / 2.0).epsilon(1e-12));
    CHECK_EQ(c.negative_set[1].lo, doctest::Approx((1.0 + std::sqrt(2.0)) / 2.0).epsilon(1e-12));
    CHECK(std::isinf(c.negative_set[1].hi));
    CHECK_GT(c.margin, 0.0);
}

TEST_CASE("classification of the constant-negative case") {
    Mat2 spiral{1.0, -2.0, 2.0, 1.0};
    DeltaQuadratic d = delta_quadratic(spiral, Mat2::identity() * 3.0);
    DeltaClassification c = classify_exists_negative(d);
    CHECK(c.label == DeltaCaseLabel::C1Neg);
    CHECK(c.exists_negative);
    REQUIRE_EQ(c.negative_set.size(), 1);
    CHECK(std::isinf(c.negative_set[0].lo));
    CHECK(std::isinf(c.negative_set[0].hi));
}

TEST_CASE("classification of the never-negative case") {
    Mat2 a{0.0, 1.0, 1.0, 0.0};
    Mat2 b{1.0, 0.0, 0.0, -1.0};
    DeltaQuadratic d = delta_quadratic(a, b);
    CHECK_EQ(d.alpha, 4.0);
    CHECK_EQ(d.beta, 0.0);
    CHECK_EQ(d.gamma, 4.0);
    CHECK_EQ(bracket(a, b).det(), 4.0);
    DeltaClassification c = classify_exists_negative(d);
    CHECK(c.label == DeltaCaseLabel::B2);
    CHECK_FALSE(c.exists_negative);
    CHECK(c.negative_set.empty());
    // Dense sampling confirms: never negative.
    for (int k = 0; k <= 1000; ++k) CHECK(d.eval(-20.0 + 0.04 * k) >= 0.0);
}

TEST_CASE("one-sided negative set when the leading coefficient vanishes") {
    // A strictly lower-triangular drift against a strictly upper-triangular
    // input: Delta(u) = 4u, negative exactly on the negative controls.
    Mat2 a{0.0, 0.0, 1.0, 0.0};
    Mat2 b{0.0, 1.0, 0.0, 0.0};
    DeltaQuadratic d = delta_quadratic(a, b);
    CHECK_EQ(d.alpha, 0.0);
    CHECK_EQ(d.beta, 4.0);
    CHECK_EQ(d.gamma, 0.0);
    CHECK_EQ(d.det_bracket, -1.0);
    DeltaClassification c = classify_exists_negative(d);
    CHECK(c.label == DeltaCaseLabel::A1);  // input matrix has a double eigenvalue
    CHECK(c.exists_negative);
    REQUIRE_EQ(c.negative_set.size(), 1);
    CHECK(std::isinf(c.negative_set[0].lo));
    CHECK_EQ(c.negative_set[0].hi, doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("punctured-line case from a repeated generator") {
    // B = A with complex eigenvalues: Delta(u) = (1+u)^2 disc(A), negative
    // everywhere except the double root u = -1.
    Mat2 j{0.0, 1.0, -1.0, 0.0};
    DeltaQuadratic d = delta_quadratic(j, j);
    CHECK_EQ(d.alpha, -4.0);
    CHECK_EQ(d.det_bracket, 0.0);
    DeltaClassification c = classify_exists_negative(d);
    CHECK(c.label == DeltaCaseLabel::C2Neg);
    CHECK(c.exists_negative);
    REQUIRE_EQ(c.negative_set.size(), 2);
    CHECK_EQ(c.negative_set[0].hi, doctest::Approx(-1.0).epsilon(1e-12));
    CHECK_EQ(c.negative_set[1].lo, doctest::Approx(-1.0).epsilon(1e-12));

    // B = A with real distinct eigenvalues: never negative, touching zero.
    Mat2 h{1.0, 0.0, 0.0, -1.0};
    DeltaClassification cp = classify_exists_negative(delta_quadratic(h, h));
    CHECK(cp.label == DeltaCaseLabel::C2Pos);
    CHECK_FALSE(cp.exists_negative);
}

TEST_CASE("constant nonnegative case") {
    // Scalar input against a drift with real eigenvalues: Delta is constant >= 0.
    Mat2 a{2.0, 1.0, 0.0, -1.0};
    DeltaClassification c = classify_exists_negative(delta_quadratic(a, Mat2::identity()));
    CHECK(c.label == DeltaCaseLabel::C1Nonneg);
    CHECK_FALSE(c.exists_negative);
    CHECK(c.negative_set.empty());
}

TEST_CASE("negative-set soundness on random systems") {
    std::mt19937_64 rng(34);
    std::uniform_real_distribution<double> du(-25.0, 25.0);
    for (int trial = 0; trial < 150; ++trial) {
        Mat2 a = oracle::random_mat(rng);
        Mat2 b = oracle::random_mat(rng);
        if (trial % 5 == 0) b = a;                       // punctured / degenerate family
        if (trial % 7 == 0) b = Mat2::identity() * 2.0;  // constant family
        DeltaQuadratic d = delta_quadratic(a, b);
        DeltaClassification c = classify_exists_negative(d);
        double scale = 1 + std::abs(d.alpha) * 625 + std::abs(d.beta) * 25 + std::abs(d.gamma);
        bool sampled_negative = false;
        for (int k = 0; k <= 1000; ++k) {
            double u = -25.0 + 0.05 * k;
            double val = d.eval(u);
            if (val < -1e-7 * scale) {
                sampled_negative = true;
                CHECK(in_negative_set(c, u));
            }
            if (val > 1e-7 * scale) CHECK_FALSE(in_negative_set(c, u));
        }
        if (sampled_negative) CHECK(c.exists_negative);
        // Membership is consistent both ways on a random control.
        double u = du(rng);
        if (in_negative_set(c, u)) CHECK(d.eval(u) < 1e-7 * scale);
        // Intervals are ordered and open.
        for (std::size_t i = 0; i + 1 < c.negative_set.size(); ++i)
            CHECK(c.negative_set[i].hi <= c.negative_set[i + 1].lo);
    }
}

TEST_CASE("exists_negative matches the label family") {
    std::mt19937_64 rng(35);
    for (int trial = 0; trial < 200; ++trial) {
        Mat2 a = oracle::random_mat(rng);
        Mat2 b = oracle::random_mat(rng);
        DeltaClassification c = classify_exists_negative(delta_quadratic(a, b));
        switch (c.label) {
            case DeltaCaseLabel::A1:
            case DeltaCaseLabel::A2:
            case DeltaCaseLabel::B1:
            case DeltaCaseLabel::C1Neg:
            case DeltaCaseLabel::C2Neg:
                CHECK(c.exists_negative);
                CHECK_FALSE(c.negative_set.empty());
                break;
            case DeltaCaseLabel::B2:
            case DeltaCaseLabel::C1Nonneg:
            case DeltaCaseLabel::C2Pos:
                CHECK_FALSE(c.exists_negative);
                CHECK(c.negative_set.empty());
                break;
        }
    }
}

TEST_CASE("case labels round-trip through their names") {
    for (DeltaCaseLabel l :
         {DeltaCaseLabel::A1, DeltaCaseLabel::A2, DeltaCaseLabel::B1, DeltaCaseLabel::B2,
          DeltaCaseLabel::C1Neg, DeltaCaseLabel::C1Nonneg, DeltaCaseLabel::C2Neg,
          DeltaCaseLabel::C2Pos}) {
        auto back = delta_case_from_string(to_string(l));
        REQUIRE(back.has_value());
        CHECK(*back == l);
    }
    CHECK_EQ(std::string(to_string(DeltaCaseLabel::C1Neg)), "C1_neg");
    CHECK_FALSE(delta_case_from_string("Z9").has_value());
}
