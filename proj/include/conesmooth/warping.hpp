#pragma once

// Radial metrics g = g_r + dr^2 over a fiber with a fixed atlas, and the
// deformation operators acting on them:
//   hyperbolic forcing   H_{a,d} g  = sinh^2(t) [sigma_0 + rho_{a,d}(t)(g_* - sigma_0)] + dt^2
//   spherical cut        h_r,  unwarped cut  h_r / sinh^2(r)
//   warp forcing         W_{r0} g   = rho_bar(t - r0) gbar_{r0} + (1 - rho_bar(t - r0)) g
//   sinh reweighting     g_nu,  nu(t) = e^{-2t} (sinh(t + t0)/sinh(t0))^2
// plus the warped charts of excess xi used to certify eps-hyperbolicity.

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "conesmooth/atlas.hpp"
#include "conesmooth/bump.hpp"
#include "conesmooth/family.hpp"
#include "conesmooth/hyptrig.hpp"
#include "conesmooth/metricfield.hpp"

namespace conesmooth {

// sinh^2(r), evaluated as exp of logs so large radii stay finite as long as
// the result itself is representable.
inline double sinh_sq(double r) { return std::exp(2.0 * detail::log_sinh(r)); }

struct RadialMetric {
    Atlas atlas;
    double r_min = 0.0;  // cuts defined for r > r_min
    std::function<Mat(int, const Vec&, double)> cut;  // warped cut components at radius r

    Mat operator()(int chart, const Vec& x, double r) const {
        if (r <= r_min) throw std::domain_error("RadialMetric: below the defined region");
        return cut(chart, x, r);
    }

    FiberMetric cut_at(double r) const {
        FiberMetric f;
        f.atlas = atlas;
        f.eval = [self = *this, r](int c, const Vec& x) { return self(c, x, r); };
        return f;
    }

    FiberMetric unwarped_cut_at(double r) const {
        FiberMetric f;
        f.atlas = atlas;
        const double scale = 1.0 / sinh_sq(r);
        f.eval = [self = *this, r, scale](int c, const Vec& x) {
            return (scale * self(c, x, r)).eval();
        };
        return f;
    }
};

// A radially warped variable metric w(t)^2 g_t + dt^2 given by a warping
// profile and a fiber family on an interval.
struct WarpDescriptor {
    std::function<double(double)> profile;  // w(t) > 0 on the domain
    MetricFamily family;                    // g_t
    double t_lo = 0.0, t_hi = 1.0;

    Mat cut(int chart, const Vec& x, double t) const {
        const double w = profile(t);
        return ((w * w) * family(t, chart, x)).eval();
    }

    RadialMetric as_radial() const {
        RadialMetric g;
        g.atlas = family.atlas;
        g.cut = [self = *this](int c, const Vec& x, double t) { return self.cut(c, x, t); };
        return g;
    }
};

// sinh^2(r) * hhat: the warped metric with constant unwarped cut hhat.
inline RadialMetric sinh_warped(const FiberMetric& hhat) {
    RadialMetric g;
    g.atlas = hhat.atlas;
    g.cut = [hhat](int c, const Vec& x, double r) { return (sinh_sq(r) * hhat(c, x)).eval(); };
    return g;
}

// Forced partially hyperbolic metric: canonical polar hyperbolic for t <= a,
// sinh-warped g_* from t >= a + d/2 on.
inline RadialMetric hyperbolic_forcing(const FiberMetric& g_star, double a, double d) {
    if (a <= d) throw std::domain_error("hyperbolic_forcing: need a > d");
    const FiberMetric sigma0 = round_sphere_metric(g_star.atlas.dim);
    RadialMetric g;
    g.atlas = g_star.atlas;
    g.cut = [g_star, sigma0, a, d](int c, const Vec& x, double t) {
        const double rho = bump_scaled(a, d, t);
        Mat fiber = sigma0(c, x);
        if (rho > 0.0) fiber += rho * (g_star(c, x) - sigma0(c, x)).eval();
        return (sinh_sq(t) * fiber).eval();
    };
    return g;
}

// The fiber family g_t = sigma_0 + rho_{a,d}(t)(g_* - sigma_0) behind the
// forcing, for slowness/boundedness measurements.
inline MetricFamily forcing_family(const FiberMetric& g_star, double a, double d, double t_lo,
                                   double t_hi) {
    const FiberMetric sigma0 = round_sphere_metric(g_star.atlas.dim);
    return interpolation_family(sigma0, g_star, [a, d](double t) { return bump_scaled(a, d, t); },
                                t_lo, t_hi);
}

inline FiberMetric spherical_cut(const RadialMetric& g, double r) { return g.cut_at(r); }
inline FiberMetric unwarped_cut(const RadialMetric& g, double r) { return g.unwarped_cut_at(r); }
inline FiberMetric spherical_cut(const WarpDescriptor& g, double r) {
    return g.as_radial().cut_at(r);
}
inline FiberMetric unwarped_cut(const WarpDescriptor& g, double r) {
    return g.as_radial().unwarped_cut_at(r);
}

// The forcing as a descriptor: profile sinh, family sigma_0 + rho (g_* - sigma_0).
inline WarpDescriptor hyperbolic_forcing_descriptor(const FiberMetric& g_star, double a,
                                                    double d, double t_hi) {
    if (a <= d) throw std::domain_error("hyperbolic_forcing_descriptor: need a > d");
    WarpDescriptor w;
    w.profile = [](double t) { return std::sinh(t); };
    w.family = forcing_family(g_star, a, d, 1e-3, t_hi);
    w.t_lo = 1e-3;
    w.t_hi = t_hi;
    return w;
}

// W_{r0} g: sinh-warped from the unwarped cut at r0 inside B_{r0}, untouched
// outside B_{r0 + 1/2}. The two plateau regions are the identical code paths.
inline RadialMetric warp_forcing(const RadialMetric& g, double r0) {
    if (r0 <= g.r_min - 1.0)
        throw std::domain_error("warp_forcing: r0 too deep inside the undefined region");
    const double inv = 1.0 / sinh_sq(r0);
    RadialMetric out;
    out.atlas = g.atlas;
    out.r_min = 0.0;
    out.cut = [g, r0, inv](int c, const Vec& x, double t) -> Mat {
        if (t >= r0 + 0.5) return g(c, x, t);
        const Mat warped = (sinh_sq(t) * inv) * g(c, x, r0);
        if (t <= r0) return warped;
        const double rho = bump_bar(t - r0);
        return (rho * warped + (1.0 - rho) * g(c, x, t)).eval();
    };
    return out;
}

// nu(t) = e^{-2t} (sinh(t + t0)/sinh(t0))^2 and its reweighting action on a
// variable metric field on T_xi (fiber block scaled, dt^2 untouched).
inline double sinh_reweight_factor(double t, double t0) {
    const double q = std::exp(detail::log_sinh(t + t0) - detail::log_sinh(t0) - t);
    return q * q;
}

inline MetricField sinh_reweight(const MetricField& g, double t0) {
    if (t0 <= 2.0) throw std::domain_error("sinh_reweight: need t0 > 2");
    const int n = g.chart.n;
    MetricField out = g;
    out.eval = [n, t0, base = g.eval](const Vec& p) {
        Mat m = base(p);
        m.topLeftCorner(n, n) *= sinh_reweight_factor(p[n], t0);
        return m;
    };
    return out;
}

// The sinh-warped reference sigma_{t0} = (sinh(t+t0)/sinh(t0))^2 sigma_{R^n} + dt^2.
inline MetricField sinh_reference_metric(const ModelChart& chart, double t0) {
    return sinh_reweight(reference_metric(chart), t0);
}

// ---------------------------------------------------------------------------
// Warped charts of excess xi.
//
// For a radial metric with fiber cuts g_t (so h = e^{2t} g_t + dt^2 with
// g_t = e^{-2t} cut_t), the chart centered at (x0, t0) in fiber chart c is
//   phi(x, t) = ( x0 + e^{-t0} A x , t + t0 ),   A = F^{-1},  g_{t0}(x0) = F^T F,
// and the pullback is the metric field measured against sigma on T_xi.

struct ChartCenter {
    int chart = 0;
    Vec x0;
    double t0 = 0.0;
};

inline MetricField warped_chart_pullback(const RadialMetric& g, const ChartCenter& center,
                                         double xi, double grid_step = 0.02) {
    const int n = g.atlas.dim;
    const Mat g_t0 = (std::exp(-2.0 * center.t0) * g(center.chart, center.x0, center.t0)).eval();
    Eigen::LLT<Mat> llt(g_t0);
    if (llt.info() != Eigen::Success)
        throw std::domain_error("warped_chart_pullback: cut not positive definite");
    const Mat F = llt.matrixU();  // g_t0 = F^T F
    const Mat A = F.inverse();
    const double scale = std::exp(-center.t0);

    MetricField f;
    f.chart = ModelChart(n, xi, grid_step);
    f.kind = FieldKind::WarpedVariable;
    f.eval = [g, center, A, scale, n](const Vec& p) {
        const Vec x = center.x0 + scale * (A * p.head(n));
        const double t = center.t0 + p[n];
        const Mat cut = g(center.chart, x, t);
        Mat out = Mat::Zero(n + 1, n + 1);
        out.topLeftCorner(n, n) = (scale * scale) * (A.transpose() * cut * A);
        out(n, n) = 1.0;
        return out;
    };
    return f;
}

struct CertificationRow {
    ChartCenter center;
    double measured;  // |phi^* g - sigma|_{C^2}
    double bound;
    bool pass;
};

// Measure eps-hyperbolicity of a radial metric at a list of chart centers
// against a declared bound.
inline std::vector<CertificationRow> certify_charts(const RadialMetric& g,
                                                    const std::vector<ChartCenter>& centers,
                                                    double xi, double bound, int per_axis = 7,
                                                    double grid_step = 0.02) {
    std::vector<CertificationRow> rows;
    rows.reserve(centers.size());
    for (const auto& c : centers) {
        const auto field = warped_chart_pullback(g, c, xi, grid_step);
        const double m = ck_seminorm(field, reference_metric(field.chart), 2, per_axis);
        rows.push_back({c, m, bound, m <= bound});
    }
    return rows;
}

}  // namespace conesmooth
