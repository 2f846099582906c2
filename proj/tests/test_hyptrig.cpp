#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "conesmooth/hyptrig.hpp"
#include "support/hyperboloid.hpp"

using namespace conesmooth;

TEST_CASE("leg_from_hyp_angle endpoints") {
    CHECK(leg_from_hyp_angle(3.7, kPi / 2.0) == Catch::Approx(3.7).epsilon(1e-14));
    CHECK(leg_from_hyp_angle(3.7, 0.0) == 0.0);
    CHECK_THROWS_AS(leg_from_hyp_angle(-1.0, 0.3), std::domain_error);
    CHECK_THROWS_AS(leg_from_hyp_angle(1.0, 2.0), std::domain_error);
}

TEST_CASE("leg_from_hyp_angle against hyperboloid construction") {
    // sinh r = 0.5 sinh 2; leg length measured in the model
    const double r = leg_from_hyp_angle(2.0, kPi / 6.0);
    CHECK(r == Catch::Approx(1.3569444900743065).epsilon(1e-12));  // frozen from the oracle

    // oracle re-derivation: binary search the leg r' so that the triangle
    // with hypotenuse 2.0 has angle pi/6 opposite r'
    auto angle_for = [](double rr) {
        const double tt = std::acosh(std::cosh(2.0) / std::cosh(rr));
        return oracle::RightTriangleModel::from_legs(rr, tt).angle_beta();
    };
    double lo = 0.0, hi = 2.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (angle_for(mid) < kPi / 6.0 ? lo : hi) = mid;
    }
    CHECK(r == Catch::Approx(0.5 * (lo + hi)).margin(1e-10));
}

TEST_CASE("adjacent_leg endpoints and derived value") {
    CHECK(adjacent_leg(2.5, 0.0) == Catch::Approx(2.5).epsilon(1e-14));
    CHECK(adjacent_leg(2.5, kPi / 2.0) == Catch::Approx(0.0).margin(1e-12));
    const double r = leg_from_hyp_angle(2.0, kPi / 6.0);
    const double t = adjacent_leg(2.0, kPi / 6.0);
    const auto m = oracle::RightTriangleModel::from_legs(r, t);
    CHECK(m.hyp() == Catch::Approx(2.0).margin(1e-10));
}

TEST_CASE("hypotenuse endpoints and oracle") {
    CHECK(hypotenuse(0.0, 1.3) == 1.3);
    CHECK(hypotenuse(1.3, 0.0) == 1.3);
    const auto m = oracle::RightTriangleModel::from_legs(1.0, 1.0);
    CHECK(hypotenuse(1.0, 1.0) == Catch::Approx(m.hyp()).margin(1e-12));
    CHECK(hypotenuse(1.0, 1.0) == Catch::Approx(std::acosh(std::cosh(1.0) * std::cosh(1.0))).margin(1e-13));
}

TEST_CASE("angle_from_legs endpoints and oracle") {
    CHECK(angle_from_legs(2.0, 2.0) == Catch::Approx(kPi / 2.0).margin(1e-14));
    CHECK(angle_from_legs(0.0, 2.0) == 0.0);
    CHECK_THROWS_AS(angle_from_legs(3.0, 2.0), std::domain_error);

    // (r, s) = (1, 2): the model triangle with legs (1, t), hypotenuse 2
    const double t = std::acosh(std::cosh(2.0) / std::cosh(1.0));
    const auto m = oracle::RightTriangleModel::from_legs(1.0, t);
    CHECK(angle_from_legs(1.0, 2.0) == Catch::Approx(m.angle_beta()).margin(1e-12));
    CHECK(angle_from_legs(1.0, 2.0) == Catch::Approx(std::asin(std::sinh(1.0) / std::sinh(2.0))).margin(1e-14));
}

TEST_CASE("polar_to_extension round trip and oracle point") {
    const auto [r0, t0] = polar_to_extension(4.0, kPi / 2.0 - 1e-9);
    CHECK(r0 == Catch::Approx(4.0).margin(1e-8));
    CHECK(t0 == Catch::Approx(0.0).margin(1e-4));

    const auto [r, t] = polar_to_extension(3.0, 0.3);
    const auto m = oracle::RightTriangleModel::from_legs(r, t);
    CHECK(m.hyp() == Catch::Approx(3.0).margin(1e-10));
    CHECK(m.angle_beta() == Catch::Approx(0.3).margin(1e-10));

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> S(0.1, 20.0), B(0.01, kPi / 2.0 - 0.01);
    for (int i = 0; i < 2000; ++i) {
        const double s = S(rng), beta = B(rng);
        const auto [rr, tt] = polar_to_extension(s, beta);
        CHECK(hypotenuse(rr, tt) == Catch::Approx(s).margin(1e-10));
        CHECK(angle_from_legs(rr, hypotenuse(rr, tt)) == Catch::Approx(beta).margin(1e-10));
    }
}

TEST_CASE("pythagoras holds in log domain over [0,20]^2") {
    for (int i = 0; i <= 40; ++i)
        for (int j = 0; j <= 40; ++j) {
            const double r = 0.5 * i, t = 0.5 * j;
            const auto T = RightTriangle::from_legs(r, t);
            CHECK(T.pythagoras_defect() < 1e-12);
            CHECK(T.s >= std::max(r, t) - 1e-14);
        }
}

TEST_CASE("law of sines and triangle invariants at large arguments") {
    // the constants routinely need r around 30-100; make sure 700 still works
    for (double s : {30.0, 100.0, 400.0, 700.0}) {
        const auto T = RightTriangle::from_hyp_angle(s, 0.4);
        CHECK(T.sine_law_defect() < 1e-12);
        CHECK(T.pythagoras_defect() < 1e-12);
        CHECK(T.beta >= 0.0);
        CHECK(T.beta <= kPi / 2.0);
        CHECK(T.r <= T.s);
        CHECK(T.t <= T.s);
        CHECK(std::isfinite(T.r));
        CHECK(std::isfinite(T.t));
    }
}

TEST_CASE("leg_from_hyp_angle is monotone in each argument") {
    double prev = 0.0;
    for (int i = 1; i <= 100; ++i) {
        const double v = leg_from_hyp_angle(0.2 * i, 0.7);
        CHECK(v > prev);
        prev = v;
    }
    prev = 0.0;
    for (int i = 1; i <= 100; ++i) {
        const double v = leg_from_hyp_angle(5.0, (kPi / 2.0) * i / 101.0);
        CHECK(v > prev);
        prev = v;
    }
}

TEST_CASE("reindexation lambda(s) and the asymptotic cut shift") {
    CHECK(reindex_extension_family(kPi / 2.0, 3.3) == Catch::Approx(3.3).epsilon(1e-14));
    CHECK(reindex_extension_family(0.4, 1e-8) == Catch::Approx(0.0).margin(1e-8));

    // lim (vartheta(lambda, beta, b) - lambda) = b + log(sin beta / sin beta0)
    const double beta0 = kPi / 6.0;
    for (double beta : {0.2, 0.5, 1.0}) {
        for (double b : {-1.0, 0.0, 0.7}) {
            const double lambda = 40.0;
            const double shift = reindex_cut_radius(lambda, beta, b, beta0) - lambda;
            const double expected = b + std::log(std::sin(beta) / std::sin(beta0));
            CHECK(shift == Catch::Approx(expected).margin(1e-6));
        }
    }
    // at beta = beta0 the shift is exactly b
    CHECK(reindex_cut_radius(40.0, beta0, 0.25, beta0) - 40.0 == Catch::Approx(0.25).margin(1e-6));
}

TEST_CASE("equation r = asinh(sinh t sin beta): distance to the axis") {
    for (double t : {0.5, 2.0, 8.0})
        for (double beta : {0.1, 0.7, 1.2}) {
            const double direct = oracle::dist_to_axis(t, beta);
            CHECK(leg_from_hyp_angle(t, beta) == Catch::Approx(direct).margin(1e-11));
        }
}
