#pragma once

// Hyperbolic extension E_k(h) = cosh^2(r) sigma_{H^k} + h of a radial metric,
// in two concrete forms:
//  - product coordinates (w, t, u, r): polar coordinates (w, t) on H^k, the
//    fiber chart point u and the fiber radius r; used for composing
//    extensions and for assembling cone patches,
//  - spherical-cut (Xi) coordinates: the cut of the extension at radius s is
//      sinh^2(s) cos^2(beta) sigma_{S^{k-1}} + h_{r(s,beta)} + sinh^2(s) dbeta^2,
//    r(s, beta) = asinh(sin(beta) sinh(s)), yielding again a radial metric
//    over the joined fiber S^{k-1} x F x (0, pi/2).

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

#include "conesmooth/atlas.hpp"
#include "conesmooth/hyptrig.hpp"
#include "conesmooth/warping.hpp"

namespace conesmooth {

// Components of E_k(h) in product coordinates, ordered (w, t, u, r).
// w lives in a chart of S^{k-1} (absent for k = 1), u in a fiber chart of h.
inline Mat extension_product_eval(const RadialMetric& h, int k, int sphere_chart, const Vec& w,
                                  double t, int fiber_chart, const Vec& u, double r) {
    if (k < 1) throw std::domain_error("extension_product_eval: k >= 1");
    const int kw = k - 1;
    const int nf = h.atlas.dim;
    const int d = kw + 1 + nf + 1;
    Mat g = Mat::Zero(d, d);
    const double ch2 = std::exp(2.0 * detail::log_cosh(r));
    if (kw > 0) {
        (void)sphere_chart;
        g.topLeftCorner(kw, kw) = (ch2 * sinh_sq(t)) * gnomonic_round_metric(w);
    }
    g(kw, kw) = ch2;  // dt^2 scaled by cosh^2(r)
    g.block(kw + 1, kw + 1, nf, nf) = h(fiber_chart, u, r);
    g(d - 1, d - 1) = 1.0;  // dr^2
    return g;
}

// Atlas of the joined fiber S^{k-1} x F x (0, pi/2): one chart per
// (sphere chart) x (fiber chart), coordinates [w, u, beta].
inline Atlas join_atlas(int k, const Atlas& fiber) {
    Atlas a;
    a.dim = (k - 1) + fiber.dim + 1;
    a.fd_step = fiber.fd_step;
    a.name = "join";
    const int sphere_charts = (k >= 2) ? 2 * k : 1;
    const double R = (k >= 2) ? 1.05 * std::sqrt(double(k - 1)) : 0.0;
    for (int sc = 0; sc < sphere_charts; ++sc) {
        for (const Chart& fc : fiber.charts) {
            Chart c;
            c.lo = Vec(a.dim);
            c.hi = Vec(a.dim);
            for (int i = 0; i < k - 1; ++i) {
                c.lo[i] = -R;
                c.hi[i] = R;
            }
            c.lo.segment(k - 1, fiber.dim) = fc.lo;
            c.hi.segment(k - 1, fiber.dim) = fc.hi;
            c.lo[a.dim - 1] = 0.05;
            c.hi[a.dim - 1] = kPi / 2.0 - 0.05;
            a.charts.push_back(c);
        }
    }
    return a;
}

// E_k(h) as a radial metric over the joined fiber; chart index encodes
// (sphere chart, fiber chart) pairs in row-major order.
inline RadialMetric hyperbolic_extension(const RadialMetric& h, int k) {
    if (k < 1) throw std::domain_error("hyperbolic_extension: k >= 1");
    RadialMetric out;
    out.atlas = join_atlas(k, h.atlas);
    out.r_min = h.r_min;  // the joined cut at s samples h at r <= s
    const int kw = k - 1;
    const int nf = h.atlas.dim;
    const int fiber_charts = int(h.atlas.charts.size());
    out.cut = [h, kw, nf, fiber_charts](int chart, const Vec& x, double s) {
        const int fiber_chart = chart % fiber_charts;
        const double beta = x[kw + nf];
        const double r = leg_from_hyp_angle(s, beta);
        const double s2 = sinh_sq(s);
        const int d = kw + nf + 1;
        Mat g = Mat::Zero(d, d);
        if (kw > 0) {
            const double cb = std::cos(beta);
            g.topLeftCorner(kw, kw) = (s2 * cb * cb) * gnomonic_round_metric(x.head(kw));
        }
        g.block(kw, kw, nf, nf) = h(fiber_chart, x.segment(kw, nf), r);
        g(d - 1, d - 1) = s2;  // sinh^2(s) dbeta^2
        return g;
    };
    return out;
}

}  // namespace conesmooth
