#pragma once

// One-parameter families of fiber metrics, with the c-bounded and eps-slow
// measurements taken against the family's fixed atlas:
//   c-bounded:  |g_t|_{C^2} < c on every chart and |det g_t| > 1/c everywhere,
//   eps-slow:   |d^k/dt^k g_t(u,u)|      < eps g_t(u,u)                (k = 1, 2)
//               |d/dt v g_t(u,u)|        < eps ( g(u,u) g^{1/2}(v,v)
//                                                + g^{1/2}(u,u) |nabla_v u|_g ).
// Test vectors are the chart frame plus seeded random combinations.

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "conesmooth/atlas.hpp"
#include "conesmooth/fd.hpp"

namespace conesmooth {

struct MetricFamily {
    double t_lo = 0.0, t_hi = 1.0;
    int t_samples = 9;
    double t_step = 1e-3;  // step for t-derivatives; members must evaluate on
                           // [t_lo - 2 t_step, t_hi + 2 t_step]
    Atlas atlas;
    std::function<Mat(double, int, const Vec&)> eval;  // (t, chart, x) -> components

    Mat operator()(double t, int chart, const Vec& x) const { return eval(t, chart, x); }

    FiberMetric at(double t) const {
        FiberMetric f;
        f.atlas = atlas;
        f.eval = [self = *this, t](int c, const Vec& x) { return self(t, c, x); };
        return f;
    }
};

inline MetricFamily constant_family(const FiberMetric& g, double t_lo, double t_hi) {
    MetricFamily fam;
    fam.t_lo = t_lo;
    fam.t_hi = t_hi;
    fam.atlas = g.atlas;
    fam.eval = [g](double, int c, const Vec& x) { return g(c, x); };
    return fam;
}

// g_t = base + coeff(t) * (target - base); the interpolation pattern behind
// both hyperbolic forcing and the linear families of the boundedness estimates.
inline MetricFamily interpolation_family(const FiberMetric& base, const FiberMetric& target,
                                         std::function<double(double)> coeff, double t_lo,
                                         double t_hi) {
    MetricFamily fam;
    fam.t_lo = t_lo;
    fam.t_hi = t_hi;
    fam.atlas = base.atlas;
    fam.eval = [base, target, coeff](double t, int c, const Vec& x) {
        const double s = coeff(t);
        return ((1.0 - s) * base(c, x) + s * target(c, x)).eval();
    };
    return fam;
}

struct BoundednessMeasure {
    double component_c2 = 0.0;  // max over charts of |g_t|_{C^2}
    double inv_det = 0.0;       // max over points of 1/|det g_t|

    double required_c() const { return std::max(component_c2, inv_det); }
};

inline BoundednessMeasure boundedness_measure(const MetricFamily& fam, int per_axis = 5) {
    BoundednessMeasure out;
    const double h = fam.atlas.fd_step;
    for (int it = 0; it < fam.t_samples; ++it) {
        const double t =
            fam.t_lo + (fam.t_hi - fam.t_lo) * (fam.t_samples == 1 ? 0.5 : double(it) / (fam.t_samples - 1));
        for (int c = 0; c < int(fam.atlas.charts.size()); ++c) {
            auto g = [&](const Vec& x) { return fam(t, c, x); };
            for (const Vec& x : chart_points(fam.atlas.charts[c], h, per_axis)) {
                const Mat g0 = g(x);
                out.component_c2 = std::max(out.component_c2, g0.cwiseAbs().maxCoeff());
                out.inv_det = std::max(out.inv_det, 1.0 / std::abs(g0.determinant()));
                for (int a = 0; a < fam.atlas.dim; ++a) {
                    out.component_c2 =
                        std::max(out.component_c2, fd::partial(g, x, a, h).cwiseAbs().maxCoeff());
                    for (int b = a; b < fam.atlas.dim; ++b)
                        out.component_c2 = std::max(
                            out.component_c2, fd::partial2(g, x, a, b, h).cwiseAbs().maxCoeff());
                }
            }
        }
    }
    return out;
}

inline bool is_c_bounded(const MetricFamily& fam, double c, int per_axis = 5) {
    if (c <= 1.0) return false;
    const auto m = boundedness_measure(fam, per_axis);
    return m.component_c2 < c && m.inv_det < c;
}

// Largest ratio LHS/RHS over the slowness inequalities; the family is
// eps-slow when the measure is below eps (up to the finite-difference budget).
inline double slowness_measure(const MetricFamily& fam, int per_axis = 4, int random_vectors = 3,
                               unsigned seed = 12345u) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    const int d = fam.atlas.dim;
    const double ht = fam.t_step;
    const double hx = fam.atlas.fd_step;

    std::vector<Vec> test_vectors;
    for (int a = 0; a < d; ++a) test_vectors.push_back(Vec::Unit(d, a));
    for (int k = 0; k < random_vectors; ++k) {
        Vec u(d);
        for (int a = 0; a < d; ++a) u[a] = unif(rng);
        if (u.norm() < 1e-3) u = Vec::Unit(d, 0);
        test_vectors.push_back(u.normalized());
    }

    double worst = 0.0;
    for (int it = 0; it < fam.t_samples; ++it) {
        const double t =
            fam.t_lo + (fam.t_hi - fam.t_lo) * (fam.t_samples == 1 ? 0.5 : double(it) / (fam.t_samples - 1));
        for (int c = 0; c < int(fam.atlas.charts.size()); ++c) {
            for (const Vec& x : chart_points(fam.atlas.charts[c], hx, per_axis)) {
                auto g_at = [&](double tt) { return fam(tt, c, x); };
                const Mat g0 = g_at(t);
                const Mat dg = fd::d1(g_at, t, ht);
                const Mat d2g = fd::d2(g_at, t, ht);

                // Christoffel symbols of g_t at x (spatial derivatives)
                auto gx = [&](const Vec& y) { return fam(t, c, y); };
                const Mat ginv = g0.inverse();
                std::vector<Mat> dgx(d);
                for (int a = 0; a < d; ++a) dgx[a] = fd::partial(gx, x, a, hx);

                for (const Vec& u : test_vectors) {
                    const double guu = u.dot(g0 * u);
                    worst = std::max(worst, std::abs(u.dot(dg * u)) / guu);
                    worst = std::max(worst, std::abs(u.dot(d2g * u)) / guu);

                    for (const Vec& v : test_vectors) {
                        // d/dt of the directional derivative v( g_t(u,u) )
                        auto dir = [&](double tt) {
                            auto gxt = [&](const Vec& y) { return fam(tt, c, y); };
                            double s = 0.0;
                            for (int a = 0; a < d; ++a)
                                s += v[a] * u.dot(fd::partial(gxt, x, a, hx) * u);
                            return s;
                        };
                        const double lhs = std::abs(fd::d1(dir, t, ht));

                        // nabla_v u for the constant field u
                        Vec cov = Vec::Zero(d);
                        for (int k2 = 0; k2 < d; ++k2) {
                            double s = 0.0;
                            for (int l = 0; l < d; ++l)
                                for (int i = 0; i < d; ++i) {
                                    double gam = 0.0;
                                    for (int m = 0; m < d; ++m)
                                        gam += ginv(k2, m) *
                                               (dgx[l](m, i) + dgx[i](m, l) - dgx[m](l, i));
                                    s += 0.5 * gam * v[l] * u[i];
                                }
                            cov[k2] = s;
                        }
                        const double rhs = guu * std::sqrt(v.dot(g0 * v)) +
                                           std::sqrt(guu) * std::sqrt(cov.dot(g0 * cov));
                        worst = std::max(worst, lhs / rhs);
                    }
                }
            }
        }
    }
    return worst;
}

inline bool is_eps_slow(const MetricFamily& fam, double eps, int per_axis = 4) {
    return slowness_measure(fam, per_axis) < eps;
}

}  // namespace conesmooth
