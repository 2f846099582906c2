#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "conesmooth/atlas.hpp"
#include "conesmooth/curvature.hpp"
#include "conesmooth/metricfield.hpp"

using namespace conesmooth;

namespace {

// sinh^2(t) sigma_{S^{n}} + dt^2 in a gnomonic fiber chart, shifted so the
// chart coordinate t covers [t0 - 1, t0 + 1].
MetricFn polar_model(int n, double t0, Profile w) {
    return [n, t0, w](const Vec& p) {
        const double t = t0 + p[n];
        Mat g = Mat::Zero(n + 1, n + 1);
        const double ww = w(t) * w(t);
        if (n == 1)
            g(0, 0) = ww;
        else
            g.topLeftCorner(n, n) = ww * gnomonic_round_metric(p.head(n));
        g(n, n) = 1.0;
        return g;
    };
}

MetricFn flat_metric(int d) {
    return [d](const Vec&) { return Mat::Identity(d, d).eval(); };
}

MetricFn poincare_extension(int k, double t0) {
    // cosh^2(t) sigma_{H^k} + dt^2, H^k in the Poincare ball chart
    return [k, t0](const Vec& p) {
        const double t = t0 + p[k];
        Mat g = Mat::Zero(k + 1, k + 1);
        const double q = 1.0 - p.head(k).squaredNorm();
        const double conf = 4.0 / (q * q);
        g.topLeftCorner(k, k) = std::cosh(t) * std::cosh(t) * conf * Mat::Identity(k, k);
        g(k, k) = 1.0;
        return g;
    };
}

MetricFn round_sphere_polar(int n) {
    // sin^2(r) sigma_{S^{n-1}} + dr^2 around r ~ 1
    return [n](const Vec& p) {
        const double r = 1.0 + p[n - 1];
        Mat g = Mat::Zero(n, n);
        const double s2 = std::sin(r) * std::sin(r);
        if (n == 2)
            g(0, 0) = s2;
        else
            g.topLeftCorner(n - 1, n - 1) = s2 * gnomonic_round_metric(p.head(n - 1));
        g(n - 1, n - 1) = 1.0;
        return g;
    };
}

}  // namespace

TEST_CASE("flat space: all Riemann components vanish") {
    Vec p = Vec::Zero(3);
    const auto R = riemann_curvature(flat_metric(3), p, 0.01);
    double worst = 0.0;
    for (double v : R.comp) worst = std::max(worst, std::abs(v));
    CHECK(worst < 1e-8);
}

TEST_CASE("hyperbolic model e^{2t}: constant curvature -1") {
    ModelChart chart(2, 0.5, 0.01);
    const auto sigma = reference_metric(chart);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> U(-0.5, 0.5);
    for (int i = 0; i < 10; ++i) {
        PlaneSpec pl;
        pl.point = Vec(3);
        pl.point << U(rng), U(rng), U(rng);
        pl.u = Vec(3);
        pl.v = Vec(3);
        pl.u << U(rng) + 1.0, U(rng), U(rng);
        pl.v << U(rng), U(rng) + 1.0, U(rng);
        CHECK(sectional_curvature(sigma, pl) == Catch::Approx(-1.0).margin(1e-4));
    }
    const auto R = riemann_curvature(sigma, Vec::Zero(3));
    CHECK(antisymmetry_defect(R) < 1e-6);
}

TEST_CASE("round sphere: curvature +1") {
    Vec p(2);
    p << 0.1, 0.05;
    PlaneSpec pl{p, Vec::Unit(2, 0), Vec::Unit(2, 1)};
    CHECK(sectional_curvature(round_sphere_polar(2), pl, 0.01) == Catch::Approx(1.0).margin(1e-4));

    Vec p3(3);
    p3 << 0.1, -0.2, 0.07;
    PlaneSpec pl3{p3, Vec::Unit(3, 0), Vec::Unit(3, 2)};
    CHECK(sectional_curvature(round_sphere_polar(3), pl3, 0.01) == Catch::Approx(1.0).margin(1e-4));
}

TEST_CASE("sinh polar model: curvature -1 including mixed planes") {
    const auto g = polar_model(2, 2.0, sinh_profile());
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> U(-0.4, 0.4);
    for (int i = 0; i < 8; ++i) {
        PlaneSpec pl;
        pl.point = Vec(3);
        pl.point << U(rng), U(rng), U(rng);
        pl.u = Vec(3);
        pl.v = Vec(3);
        for (int a = 0; a < 3; ++a) {
            pl.u[a] = U(rng);
            pl.v[a] = U(rng);
        }
        pl.u[0] += 1.0;
        pl.v[2] += 1.0;
        CHECK(sectional_curvature(g, pl, 0.01) == Catch::Approx(-1.0).margin(1e-4));
    }
}

TEST_CASE("cosh extension of H^1 and H^2: curvature -1") {
    Vec p(2);
    p << 0.2, 0.1;
    PlaneSpec pl{p, Vec::Unit(2, 0), Vec::Unit(2, 1)};
    CHECK(sectional_curvature(poincare_extension(1, 1.0), pl, 0.01) == Catch::Approx(-1.0).margin(1e-4));

    Vec p3(3);
    p3 << 0.1, 0.15, -0.2;
    PlaneSpec m{p3, Vec::Unit(3, 0) + 0.3 * Vec::Unit(3, 2), Vec::Unit(3, 1)};
    CHECK(sectional_curvature(poincare_extension(2, 0.7), m, 0.01) == Catch::Approx(-1.0).margin(1e-4));
}

TEST_CASE("warped_sectional: the classical profiles give (-1, -1)") {
    for (double t : {0.5, 1.5, 3.0}) {
        const auto a = warped_sectional(sinh_profile(), +1.0, t);
        CHECK(a.radial == Catch::Approx(-1.0).margin(1e-12));
        CHECK(a.fiber == Catch::Approx(-1.0).margin(1e-12));
        const auto b = warped_sectional(exp_profile(), 0.0, t);
        CHECK(b.radial == Catch::Approx(-1.0).margin(1e-12));
        CHECK(b.fiber == Catch::Approx(-1.0).margin(1e-12));
        const auto c = warped_sectional(cosh_profile(), -1.0, t);
        CHECK(c.radial == Catch::Approx(-1.0).margin(1e-12));
        CHECK(c.fiber == Catch::Approx(-1.0).margin(1e-12));
    }
}

TEST_CASE("warped_sectional agrees with the finite-difference path") {
    // cross-validation of the two curvature routes on a generic warp
    Profile w{[](double t) { return 1.0 + 0.3 * std::exp(0.5 * t); },
              [](double t) { return 0.15 * std::exp(0.5 * t); },
              [](double t) { return 0.075 * std::exp(0.5 * t); }};
    const int n = 1;
    auto g = [&](const Vec& p) {
        const double t = 1.0 + p[n];
        Mat m = Mat::Zero(n + 1, n + 1);
        m(0, 0) = w(t) * w(t);
        m(n, n) = 1.0;
        return m;
    };
    for (double tt : {-0.3, 0.0, 0.4}) {
        Vec p(2);
        p << 0.0, tt;
        PlaneSpec pl{p, Vec::Unit(2, 0), Vec::Unit(2, 1)};
        const double fd_k = sectional_curvature(g, pl, 0.005);
        const double an_k = warped_sectional(w, 0.0, 1.0 + tt).radial;
        CHECK(fd_k == Catch::Approx(an_k).margin(1e-3));
    }
}

TEST_CASE("3D sectional range: eigenvalue form against known spaces") {
    // hyperbolic: range collapses to {-1}
    ModelChart chart(2, 0.5, 0.01);
    const auto sigma = reference_metric(chart);
    const auto r = sectional_range_3d(sigma.eval, Vec::Zero(3), 0.01);
    CHECK(r.min == Catch::Approx(-1.0).margin(1e-4));
    CHECK(r.max == Catch::Approx(-1.0).margin(1e-4));

    // doubly warped cosh/sinh product with distinct coordinate curvatures:
    // dr^2 + cosh^2(r) dt^2 + f(r)^2 dl^2 with f = sinh(r) * (1 + 0.05 sin r)
    auto f = [](double rr) { return std::sinh(rr) * (1.0 + 0.05 * std::sin(rr)); };
    auto fd1 = [&](double rr) { return fd::d1(f, rr, 1e-4); };
    auto g = [&](const Vec& p) {
        const double rr = 2.0 + p[0];
        Mat m = Mat::Zero(3, 3);
        m(0, 0) = 1.0;
        m(1, 1) = std::cosh(rr) * std::cosh(rr);
        m(2, 2) = f(rr) * f(rr);
        return m;
    };
    const double rr = 2.0;
    const double k_rt = -1.0;
    const double k_rl = -fd::d2(f, rr, 1e-4) / f(rr);
    const double k_tl = -std::tanh(rr) * fd1(rr) / f(rr);
    const auto range = sectional_range_3d(g, Vec::Zero(3), 0.005);
    CHECK(range.min == Catch::Approx(std::min({k_rt, k_rl, k_tl})).margin(2e-4));
    CHECK(range.max == Catch::Approx(std::max({k_rt, k_rl, k_tl})).margin(2e-4));
}
