#pragma once

// Fixed finite atlases for the fiber manifolds. Boundedness and slowness of
// metric families are always measured against one of these, so the numbers
// are reproducible:
//  - the circle keeps its canonical arc-length charts (4 of them),
//  - S^n, n >= 2, gets the 2(n+1) hemispherical gnomonic charts,
//  - balls and flat tori get a single linear chart.

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "conesmooth/fd.hpp"

namespace conesmooth {

struct Chart {
    Vec lo, hi;
    double ball_radius = 0.0;  // if > 0, restrict the box to |x| <= ball_radius
};

struct Atlas {
    int dim = 1;
    std::vector<Chart> charts;
    double fd_step = 1e-3;
    std::string name;
};

// Metric on a fiber manifold, as matrix components per chart.
struct FiberMetric {
    Atlas atlas;
    std::function<Mat(int, const Vec&)> eval;  // (chart index, chart coords) -> dim x dim

    Mat operator()(int chart, const Vec& x) const { return eval(chart, x); }
};

inline Chart box_chart(int dim, double half_width, double ball_radius = 0.0) {
    Chart c;
    c.lo = Vec::Constant(dim, -half_width);
    c.hi = Vec::Constant(dim, half_width);
    c.ball_radius = ball_radius;
    return c;
}

// S^1 with 4 overlapping unit-speed charts |x| <= 1 around angles k*pi/2.
inline Atlas circle_atlas() {
    Atlas a;
    a.dim = 1;
    a.name = "S1-arclength";
    for (int k = 0; k < 4; ++k) a.charts.push_back(box_chart(1, 1.0));
    return a;
}

// S^n (n >= 2) with 2(n+1) gnomonic charts of radius 1.05*sqrt(n) around +-e_i.
inline Atlas sphere_gnomonic_atlas(int n) {
    Atlas a;
    a.dim = n;
    a.name = "Sn-gnomonic";
    const double R = 1.05 * std::sqrt(double(n));
    for (int k = 0; k < 2 * (n + 1); ++k) a.charts.push_back(box_chart(n, R, R));
    return a;
}

inline Atlas ball_atlas(int n, double half_width = 1.0) {
    Atlas a;
    a.dim = n;
    a.name = "Bn";
    a.charts.push_back(box_chart(n, half_width));
    return a;
}

// Round metric components in a gnomonic chart:
// g_ij(x) = ((1 + |x|^2) delta_ij - x_i x_j) / (1 + |x|^2)^2.
inline Mat gnomonic_round_metric(const Vec& x) {
    const int n = int(x.size());
    const double q = 1.0 + x.squaredNorm();
    return ((q * Mat::Identity(n, n) - x * x.transpose()) / (q * q)).eval();
}

// Canonical metric sigma on S^n expressed in the fixed atlas above.
inline FiberMetric round_sphere_metric(int n) {
    FiberMetric f;
    if (n == 1) {
        f.atlas = circle_atlas();
        f.eval = [](int, const Vec&) { return Mat::Identity(1, 1); };
    } else {
        f.atlas = sphere_gnomonic_atlas(n);
        f.eval = [](int, const Vec& x) { return gnomonic_round_metric(x); };
    }
    return f;
}

inline FiberMetric scaled_metric(const FiberMetric& g, double factor) {
    FiberMetric f;
    f.atlas = g.atlas;
    f.eval = [g, factor](int c, const Vec& x) { return (factor * g(c, x)).eval(); };
    return f;
}

inline FiberMetric constant_metric(const Atlas& atlas, const Mat& components) {
    FiberMetric f;
    f.atlas = atlas;
    f.eval = [components](int, const Vec&) { return components; };
    return f;
}

// Interior lattice of a chart, respecting the stencil margin.
inline std::vector<Vec> chart_points(const Chart& c, double step, int per_axis = 5) {
    const int d = int(c.lo.size());
    const double margin = 2.5 * step;
    std::vector<Vec> pts;
    std::vector<int> idx(d, 0);
    for (;;) {
        Vec p(d);
        for (int a = 0; a < d; ++a) {
            const double lo = c.lo[a] + margin, hi = c.hi[a] - margin;
            p[a] = lo + (hi - lo) * (per_axis == 1 ? 0.5 : double(idx[a]) / (per_axis - 1));
        }
        if (c.ball_radius <= 0.0 || p.norm() <= c.ball_radius - margin) pts.push_back(p);
        int a = 0;
        while (a < d && ++idx[a] == per_axis) idx[a++] = 0;
        if (a == d) break;
    }
    return pts;
}

}  // namespace conesmooth
