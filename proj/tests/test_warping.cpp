#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "conesmooth/constants.hpp"
#include "conesmooth/extension.hpp"
#include "conesmooth/panels.hpp"
#include "conesmooth/warping.hpp"

using namespace conesmooth;

namespace {
Vec pt1(double x) {
    Vec v(1);
    v << x;
    return v;
}
}  // namespace

TEST_CASE("hyperbolic forcing: exact regions") {
    const auto sigma = round_sphere_metric(1);
    const auto gstar = scaled_metric(sigma, 1.25);
    const double a = 40.0, d = 16.0;
    const auto forced = hyperbolic_forcing(gstar, a, d);

    // canonical polar hyperbolic on t <= a (identical code path)
    for (double t : {5.0, 20.0, a}) {
        const Mat got = forced(0, pt1(0.3), t);
        CHECK(got(0, 0) == sinh_sq(t));  // exactly sinh^2(t) sigma
    }
    // unwarped cut equals g_* exactly for t >= a + d/2
    for (double t : {a + d / 2.0, a + d, a + 20.0}) {
        const Mat cut = unwarped_cut(forced, t)(0, pt1(-0.2));
        CHECK(cut(0, 0) == Catch::Approx(1.25).epsilon(1e-14));
    }
    // forcing with g_* = sigma is polar hyperbolic everywhere
    const auto trivial = hyperbolic_forcing(sigma, a, d);
    for (double t : {10.0, 44.0, 60.0})
        CHECK(trivial(0, pt1(0.1), t)(0, 0) == Catch::Approx(sinh_sq(t)).epsilon(1e-14));

    CHECK_THROWS_AS(hyperbolic_forcing(gstar, 8.0, 16.0), std::domain_error);
}

TEST_CASE("hyperbolic forcing: measured hyperbolicity under the closed-form bound") {
    const auto gstar = scaled_metric(round_sphere_metric(1), 1.25);
    const double a = 40.0, d = 16.0, xi = 1.0;
    const auto forced = hyperbolic_forcing(gstar, a, d);

    // closed-form bound C1 (e^{-r} + (12/d) eps0) with c = c_* + c_{S^1}
    const double c = 1.25 + cst::c_sphere(1);
    const double r = a - (1.0 + xi);
    const double bound =
        std::exp(cst::C1(c, 1, xi).log_v) *
        (std::exp(-r) + (12.0 / d) * std::exp(cst::eps0(1.25, 1).log_v));

    std::vector<ChartCenter> centers;
    for (double t0 : {41.5, 44.0, 48.0, 55.0}) centers.push_back({0, pt1(0.0), t0});
    const auto rows = certify_charts(forced, centers, xi, bound);
    for (const auto& row : rows) CHECK(row.pass);

    // far above the band the metric is plainly sinh-warped: tiny deviation
    CHECK(rows.back().measured < 1e-6);

    // the in-band deviation scales like 1/d: enlarge d tenfold and remeasure
    const auto wide = hyperbolic_forcing(gstar, 12.0 * d, 10.0 * d);
    const auto mid = certify_charts(wide, {{0, pt1(0.0), 12.0 * d + 2.5 * d}}, xi, bound);
    const auto mid_narrow = certify_charts(forced, {{0, pt1(0.0), a + d / 4.0}}, xi, bound);
    CHECK(mid.front().measured < mid_narrow.front().measured / 4.0);
}

TEST_CASE("forcing family is c-bounded and (12/d) eps0-slow (measured)") {
    const auto gstar = scaled_metric(round_sphere_metric(1), 1.25);
    const double a = 40.0, d = 16.0;
    auto lin = interpolation_family(round_sphere_metric(1), gstar, [](double s) { return s; },
                                    0.0, 1.0);
    lin.t_samples = 17;
    const double eps0 = slowness_measure(lin);

    auto fam = forcing_family(gstar, a, d, a - 1.0, a + d / 2.0 + 1.0);
    fam.t_samples = 33;
    CHECK(slowness_measure(fam) <= (12.0 / d) * eps0 * (1.0 + 1e-9));
    CHECK(is_c_bounded(fam, 1.25 + cst::c_sphere(1)));
}

TEST_CASE("warp forcing: plateau code paths and sinh-warp inside") {
    // input: hyperbolically forced metric (nontrivial cuts)
    const auto gstar = scaled_metric(round_sphere_metric(1), 1.25);
    const auto g = hyperbolic_forcing(gstar, 12.0, 8.0);
    const double r0 = 14.0;
    const auto w = warp_forcing(g, r0);

    // outside B_{r0 + 1/2}: identical to the input
    for (double t : {r0 + 0.5, r0 + 1.0, r0 + 6.0})
        CHECK(w(0, pt1(0.2), t)(0, 0) == g(0, pt1(0.2), t)(0, 0));

    // inside B_{r0}: sinh-warped with the constant unwarped cut at r0
    const double cut0 = unwarped_cut(g, r0)(0, pt1(0.2))(0, 0);
    for (double t : {1.0, 7.0, r0}) {
        CHECK(w(0, pt1(0.2), t)(0, 0) ==
              Catch::Approx(sinh_sq(t) * cut0).epsilon(1e-13));
    }

    // a metric already sinh-warped with constant cut is fixed by W
    const auto plain = sinh_warped(scaled_metric(round_sphere_metric(1), 1.1));
    const auto fixed = warp_forcing(plain, 9.0);
    for (double t : {2.0, 8.9, 9.2, 9.6})
        CHECK(fixed(0, pt1(0.0), t)(0, 0) ==
              Catch::Approx(plain(0, pt1(0.0), t)(0, 0)).epsilon(1e-12));
}

TEST_CASE("warp forcing: measured hyperbolicity bound e^{18+6xi}(e^{-2r0}+eps)") {
    const double xi = 2.0;
    const auto gstar = scaled_metric(round_sphere_metric(1), 1.25);
    const auto g = hyperbolic_forcing(gstar, 20.0, 8.0);
    const double r0 = 30.0;
    const auto w = warp_forcing(g, r0);

    // measure eps of the input near the forcing band
    std::vector<ChartCenter> centers;
    for (double t0 : {r0 - 2.0, r0, r0 + 0.7, r0 + 2.0}) centers.push_back({0, pt1(0.0), t0});
    double eps_in = 0.0;
    for (const auto& row : certify_charts(g, centers, xi, 1.0))
        eps_in = std::max(eps_in, row.measured);

    const double bound = std::exp(18.0 + 6.0 * xi) * (std::exp(-2.0 * r0) + eps_in);
    for (const auto& row : certify_charts(w, centers, xi - 1.0, bound)) {
        CHECK(row.pass);
        CHECK(row.measured < 0.05);
    }
}

TEST_CASE("sinh reweighting: nu(0) = 1 and the C^2 distance bounds") {
    ModelChart chart(1, 1.0, 0.02);
    const auto sigma = reference_metric(chart);
    for (double t0 : {3.0, 5.0, 10.0}) {
        CHECK(sinh_reweight_factor(0.0, t0) == Catch::Approx(1.0).epsilon(1e-14));
        const auto sig_t0 = sinh_reference_metric(chart, t0);
        Vec p(2);
        p << 0.4, 0.0;
        CHECK(sig_t0(p)(0, 0) == Catch::Approx(sigma(p)(0, 0)).epsilon(1e-12));

        // |sigma - sigma_{t0}|_{C^2} <= 2^6 e^{2(1+xi)} e^{-2 t0}
        const double dist = ck_seminorm(sig_t0, sigma, 2, 9);
        CHECK(dist <= 64.0 * std::exp(2.0 * (1.0 + chart.xi)) * std::exp(-2.0 * t0));
    }
    CHECK_THROWS_AS(sinh_reweight(sigma, 1.5), std::domain_error);
}

TEST_CASE("sinh/exp estimate panel holds for t0 in {2,3,5,10}") {
    for (double t0 : {2.0, 3.0, 5.0, 10.0}) {
        const auto rows = sinh_exp_panel(t0, 50.0, 1e-2);
        for (const auto& r : rows) {
            INFO(r.name << " t0=" << t0 << " measured=" << r.measured << " bound=" << r.bound);
            CHECK(r.pass());
        }
    }
}

TEST_CASE("radial-coordinate C^2 chart estimate, r0 in {10, 15}, xi = 1") {
    for (double r0 : {10.0, 15.0}) {
        const auto res = rbar_c2_panel(r0, 1.0);
        INFO("r0=" << r0 << " measured=" << res.measured << " bound=" << res.bound);
        CHECK(res.pass());
        CHECK(res.measured > 0.0);
    }
    // a second center choice with the same extension radius
    const auto res2 = rbar_c2_panel(10.0, 1.0, 64, 2.5);
    CHECK(res2.pass());
}

TEST_CASE("sinh model chart is eps-hyperbolic at large centers") {
    // pullback of sinh^2(t) sigma_{S^1} + dt^2 at t0: the deviation decays
    // like e^{-2 t0}, far below the closed-form budget C1' e^{-T}
    const auto g = sinh_warped(round_sphere_metric(1));
    const double xi = 1.0;
    for (double t0 : {8.0, 15.0}) {
        const auto pull = warped_chart_pullback(g, {0, pt1(0.0), t0}, xi);
        const auto res = is_eps_hyperbolic(pull, 1.0, 7);
        CHECK(res.measured < 70.0 * std::exp(2.0 * (1.0 + xi)) * std::exp(-2.0 * t0));
        const double c1p = cst::C1_prime(2, xi).log_v;
        CHECK(res.measured < std::exp(c1p - (t0 - (1.0 + xi))));
    }
}

TEST_CASE("extracted fiber family of an eps-hyperbolic field is slow and 2-bounded") {
    // e^{2t} g_t + dt^2 with g_t = (1 + 0.001 sin(t)) sigma_{R^1}
    ModelChart chart(1, 0.5, 0.02);
    auto field = warped_variable_field(
        chart, [](double t) { return std::exp(t); },
        [](const Vec&, double t) {
            return ((1.0 + 0.001 * std::sin(t)) * Mat::Identity(1, 1)).eval();
        });
    const double eps = ck_seminorm(field, reference_metric(chart), 2, 9);

    MetricFamily fam;
    fam.t_lo = chart.t_min() + 0.2;
    fam.t_hi = chart.t_max() - 0.2;
    fam.t_samples = 9;
    fam.atlas = ball_atlas(1, 0.9);
    fam.eval = [field](double t, int, const Vec& x) {
        Vec p(2);
        p << x[0], t;
        return (std::exp(-2.0 * t) * field(p).topLeftCorner(1, 1)).eval();
    };
    const double slow = slowness_measure(fam);
    const double a_prime = std::exp(cst::slow_a_prime(1, chart.xi).log_v);
    CHECK(slow <= a_prime * eps);
    CHECK(is_c_bounded(fam, 2.0));
}

TEST_CASE("warp descriptor: profile/family form matches the forcing operator") {
    const auto gstar = scaled_metric(round_sphere_metric(1), 1.25);
    const double a = 20.0, d = 8.0;
    const auto desc = hyperbolic_forcing_descriptor(gstar, a, d, 40.0);
    const auto op = hyperbolic_forcing(gstar, a, d);
    for (double t : {5.0, 21.0, 23.5, 30.0}) {
        CHECK(desc.cut(0, pt1(0.2), t)(0, 0) ==
              Catch::Approx(op(0, pt1(0.2), t)(0, 0)).epsilon(1e-14));
    }
    // descriptor positivity on its domain
    for (double t : {1.0, 10.0, 39.0}) CHECK(desc.profile(t) > 0.0);
    // its radial view feeds the cut operators unchanged
    CHECK(unwarped_cut(desc, a + d)(0, pt1(0.0))(0, 0) == Catch::Approx(1.25).epsilon(1e-13));
}

TEST_CASE("extension charts of reduced excess stay inside the radial slab") {
    // with kappa the measured sup of |rbar - (t + r0)|, any excess
    // xi' < xi - kappa keeps rbar within [r0 - (1+xi), r0 + (1+xi)] on the
    // narrower chart
    const double xi = 1.0;
    for (double r0 : {10.0, 15.0}) {
        const double t0 = r0 + 1.0;
        const double theta0 = std::asin(std::sinh(r0) / std::sinh(t0));
        auto rbar = [&](double x, double t) {
            return leg_from_hyp_angle(t0 + t, theta0 + x / std::sinh(t0));
        };
        const double kappa = rbar_c2_panel(r0, xi).measured;
        const double xi_p = xi - kappa - 0.01;
        REQUIRE(xi_p > 0.0);
        double worst = 0.0;
        for (int i = 0; i <= 40; ++i)
            for (int j = 0; j <= 40; ++j) {
                const double x = -1.0 + 2.0 * i / 40.0;
                const double t = (1.0 + xi_p) * (-1.0 + 2.0 * j / 40.0);
                worst = std::max(worst, std::abs(rbar(x, t) - r0) - std::abs(t));
            }
        CHECK(worst <= (1.0 + xi) - (1.0 + xi_p) + kappa + 1e-12);
        // and the image indeed stays inside the slab
        for (int i = 0; i <= 40; ++i)
            for (int j = 0; j <= 40; ++j) {
                const double x = -1.0 + 2.0 * i / 40.0;
                const double t = (1.0 + xi_p) * (-1.0 + 2.0 * j / 40.0);
                CHECK(std::abs(rbar(x, t) - r0) <= 1.0 + xi);
            }
    }
}
