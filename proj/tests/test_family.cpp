#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "conesmooth/bump.hpp"
#include "conesmooth/constants.hpp"
#include "conesmooth/family.hpp"

using namespace conesmooth;

TEST_CASE("constant circle family: |sigma| = 1, det = 1, slow for every eps") {
    const auto fam = constant_family(round_sphere_metric(1), 0.0, 1.0);
    const auto m = boundedness_measure(fam);
    CHECK(m.component_c2 == Catch::Approx(1.0).margin(1e-9));
    CHECK(m.inv_det == Catch::Approx(1.0).margin(1e-9));
    CHECK(is_c_bounded(fam, 2.0));
    CHECK(slowness_measure(fam) < 1e-9);
}

TEST_CASE("k sigma_{S^1} with k = 100 is not 2-bounded") {
    const auto fam = constant_family(scaled_metric(round_sphere_metric(1), 100.0), 0.0, 1.0);
    CHECK_FALSE(is_c_bounded(fam, 2.0));
}

TEST_CASE("gnomonic sphere atlases: frozen boundedness constants hold") {
    for (int n : {2, 3}) {
        const auto fam = constant_family(round_sphere_metric(n), 0.0, 1.0);
        const auto m = boundedness_measure(fam, n == 3 ? 4 : 5);
        CHECK(m.required_c() < cst::c_sphere(n));
    }
}

TEST_CASE("linear interpolation toward a bounded target is c''-bounded") {
    // g_s = sigma + s (g_* - sigma), g_* = 4 sigma_{S^1}; the closed-form
    // bound is c'' = [n!(c_* + c')^{n+1}]^n with n = 1
    const auto sigma = round_sphere_metric(1);
    const auto gstar = scaled_metric(sigma, 4.0);
    const auto fam =
        interpolation_family(sigma, gstar, [](double s) { return s; }, 0.0, 1.0);
    const double c_star = 4.5, c_prime = cst::c_sphere(1);
    const double c2 = std::pow(std::tgamma(2.0) * std::pow(c_star + c_prime, 2.0), 1.0);
    CHECK(is_c_bounded(fam, c2));
}

TEST_CASE("reparametrized family slowness: (a + a^2) eps bound") {
    // base family g_t = (1 + 0.05 sin t) sigma on S^1
    MetricFamily base = constant_family(round_sphere_metric(1), 0.0, 3.0);
    base.eval = [](double t, int, const Vec&) {
        return ((1.0 + 0.05 * std::sin(t)) * Mat::Identity(1, 1)).eval();
    };
    const double eps = slowness_measure(base);

    const double a = 2.0;  // phi(s) = a s, |phi'|, |phi''| <= a
    MetricFamily re = base;
    re.t_lo = 0.0;
    re.t_hi = 1.5;
    re.eval = [a, base](double s, int c, const Vec& x) { return base(a * s, c, x); };
    const double eps_re = slowness_measure(re);
    CHECK(eps_re <= (a + a * a) * eps * (1.0 + 1e-6));
}

TEST_CASE("bump-driven interpolation is (12/d) eps0-slow") {
    const auto sigma = round_sphere_metric(1);
    const auto gstar = scaled_metric(sigma, 4.0);
    const auto linear =
        interpolation_family(sigma, gstar, [](double s) { return s; }, 0.0, 1.0);
    double eps0 = slowness_measure(linear);
    // the linear family of constant multiples is exactly constant-speed:
    // fall back to the derivative ratio sup |g'|/g = 3/(1+3s) at s = 0
    eps0 = std::max(eps0, 3.0);

    const double a = 10.0, d = 16.0;
    MetricFamily forced = constant_family(sigma, a - 1.0, a + d / 2.0 + 1.0);
    forced.eval = [a, d](double t, int, const Vec&) {
        const double s = bump_scaled(a, d, t);
        return ((1.0 + 3.0 * s) * Mat::Identity(1, 1)).eval();
    };
    forced.t_samples = 33;
    const double measured = slowness_measure(forced);
    CHECK(measured <= (12.0 / d) * eps0 * (1.0 + 1e-6));
}
