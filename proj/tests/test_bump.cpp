#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "conesmooth/bump.hpp"
#include "conesmooth/fd.hpp"

using namespace conesmooth;

TEST_CASE("bump endpoint plateaus and monotonicity") {
    CHECK(bump(-1.0) == 0.0);
    CHECK(bump(0.0) == 0.0);
    CHECK(bump(1.0) == 1.0);
    CHECK(bump(5.0) == 1.0);
    double prev = -1.0;
    for (int i = 0; i <= 1000; ++i) {
        const double v = bump(i / 1000.0);
        CHECK(v >= prev);
        prev = v;
    }
}

TEST_CASE("closed-form derivatives match finite differences") {
    auto f = [](double t) { return bump(t); };
    auto f1 = [](double t) { return bump_d1(t); };
    for (double t : {0.15, 0.3, 0.5, 0.77, 0.9}) {
        CHECK(bump_d1(t) == Catch::Approx(fd::d1(f, t, 1e-4)).margin(1e-8));
        CHECK(bump_d2(t) == Catch::Approx(fd::d1(f1, t, 1e-4)).margin(1e-7));
    }
}

TEST_CASE("certified derivative bounds: |rho'| < 3, |rho''| < 12") {
    const auto b = certify_bump_bounds();
    CHECK(b.b1 < 3.0);
    CHECK(b.b2 < 12.0);
    CHECK(b.b1 > 1.0);  // sanity: the transition is genuine
}

TEST_CASE("scaled bump: plateaus and the 6/d, 48/d^2 bounds") {
    const double a = 3.0, d = 8.0;
    CHECK(bump_scaled(a, d, a) == 0.0);
    CHECK(bump_scaled(a, d, a - 2.0) == 0.0);
    CHECK(bump_scaled(a, d, a + d / 2.0) == 1.0);
    CHECK(bump_scaled(a, d, a + d) == 1.0);

    double m1 = 0.0, m2 = 0.0;
    for (int i = 0; i <= 20000; ++i) {
        const double t = a + (d / 2.0) * i / 20000.0;
        m1 = std::max(m1, std::abs(bump_scaled_d1(a, d, t)));
        m2 = std::max(m2, std::abs(bump_scaled_d2(a, d, t)));
    }
    CHECK(m1 < 6.0 / d);
    CHECK(m1 < 0.75);  // the d = 8 figure
    CHECK(m2 < 48.0 / (d * d));
}

TEST_CASE("bump_bar: reversed blend used by warp forcing") {
    CHECK(bump_bar(-1.0) == 1.0);
    CHECK(bump_bar(0.0) == 1.0);
    CHECK(bump_bar(0.5) == 0.0);
    CHECK(bump_bar(2.0) == 0.0);
    auto f = [](double t) { return bump_bar(t); };
    CHECK(bump_bar_d1(0.2) == Catch::Approx(fd::d1(f, 0.2, 1e-4)).margin(1e-8));
    CHECK(bump_bar_d2(0.2) == Catch::Approx(fd::d2(f, 0.2, 1e-4)).margin(1e-6));
}
