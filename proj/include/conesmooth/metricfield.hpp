#pragma once

// Metric fields on the model charts T_xi = B^n x I_xi, I_xi = (-(1+xi), 1+xi),
// with the reference hyperbolic metric sigma = e^{2t} sigma_{R^n} + dt^2.
// C^k seminorms are measured as the max over a sampling lattice of all
// coordinate partials (order <= k) of the component difference, by
// fourth-order central differences.

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "conesmooth/fd.hpp"

namespace conesmooth {

struct ModelChart {
    int n = 1;              // fiber dimension; chart lives in R^{n+1}
    double xi = 1.0;        // excess
    double grid_step = 0.05;

    ModelChart() = default;
    ModelChart(int n_, double xi_, double step) : n(n_), xi(xi_), grid_step(step) {
        if (n < 1 || xi <= 0.0 || grid_step <= 0.0)
            throw std::invalid_argument("ModelChart: bad parameters");
        if (4.0 * grid_step > 1.0 || 4.0 * grid_step > 1.0 + xi)
            throw std::invalid_argument("ModelChart: fewer than 4 grid layers per axis");
    }

    int dim() const { return n + 1; }
    double t_min() const { return -(1.0 + xi); }
    double t_max() const { return 1.0 + xi; }
};

enum class FieldKind { WarpedVariable, Callable, Tabulated };

struct MetricField {
    ModelChart chart;
    std::function<Mat(const Vec&)> eval;  // point in B^n x I_xi -> (n+1)x(n+1)
    FieldKind kind = FieldKind::Callable;

    Mat operator()(const Vec& p) const { return eval(p); }
};

// The reference metric sigma = e^{2t} sigma_{R^n} + dt^2 on a chart.
inline MetricField reference_metric(const ModelChart& chart) {
    const int n = chart.n;
    MetricField f;
    f.chart = chart;
    f.kind = FieldKind::WarpedVariable;
    f.eval = [n](const Vec& p) {
        Mat g = Mat::Zero(n + 1, n + 1);
        const double w = std::exp(2.0 * p[n]);
        for (int i = 0; i < n; ++i) g(i, i) = w;
        g(n, n) = 1.0;
        return g;
    };
    return f;
}

// A warped variable field w(t)^2 g_t + dt^2 from a profile and a fiber family
// given in chart coordinates.
inline MetricField warped_variable_field(const ModelChart& chart,
                                         std::function<double(double)> profile,
                                         std::function<Mat(const Vec&, double)> family) {
    const int n = chart.n;
    MetricField f;
    f.chart = chart;
    f.kind = FieldKind::WarpedVariable;
    f.eval = [n, profile = std::move(profile), family = std::move(family)](const Vec& p) {
        Mat g = Mat::Zero(n + 1, n + 1);
        const double t = p[n];
        const double w = profile(t);
        g.topLeftCorner(n, n) = (w * w) * family(p.head(n), t);
        g(n, n) = 1.0;
        return g;
    };
    return f;
}

// Lattice of interior sample points on which seminorms are evaluated. Points
// keep a 2*step margin on every side so the widest stencil stays inside.
inline std::vector<Vec> chart_lattice(const ModelChart& chart, int per_axis = 9) {
    const int d = chart.dim();
    const double margin = 2.5 * chart.grid_step;
    std::vector<double> lo(d, -1.0 + margin), hi(d, 1.0 - margin);
    lo[d - 1] = chart.t_min() + margin;
    hi[d - 1] = chart.t_max() - margin;
    std::vector<Vec> pts;
    std::vector<int> idx(d, 0);
    for (;;) {
        Vec p(d);
        for (int a = 0; a < d; ++a)
            p[a] = lo[a] + (hi[a] - lo[a]) * (per_axis == 1 ? 0.5 : double(idx[a]) / (per_axis - 1));
        pts.push_back(p);
        int a = 0;
        while (a < d && ++idx[a] == per_axis) idx[a++] = 0;
        if (a == d) break;
    }
    return pts;
}

// Sampled tabulation of a field on the chart lattice of a given resolution,
// evaluated back by multilinear interpolation. Kept mainly so that closed-form
// and tabulated representations can be cross-checked.
struct TabulatedField {
    ModelChart chart;
    int per_axis = 17;
    std::vector<Mat> samples;
    std::vector<double> lo, hi;

    static TabulatedField from(const MetricField& f, int per_axis = 17) {
        TabulatedField t;
        t.chart = f.chart;
        t.per_axis = per_axis;
        const int d = f.chart.dim();
        t.lo.assign(d, -1.0);
        t.hi.assign(d, 1.0);
        t.lo[d - 1] = f.chart.t_min();
        t.hi[d - 1] = f.chart.t_max();
        std::vector<int> idx(d, 0);
        for (;;) {
            Vec p(d);
            for (int a = 0; a < d; ++a)
                p[a] = t.lo[a] + (t.hi[a] - t.lo[a]) * double(idx[a]) / (per_axis - 1);
            t.samples.push_back(f(p));
            int a = 0;
            while (a < d && ++idx[a] == per_axis) idx[a++] = 0;
            if (a == d) break;
        }
        return t;
    }

    Mat operator()(const Vec& p) const {
        const int d = chart.dim();
        std::vector<int> base(d);
        std::vector<double> w(d);
        for (int a = 0; a < d; ++a) {
            double u = (p[a] - lo[a]) / (hi[a] - lo[a]) * (per_axis - 1);
            int i = std::max(0, std::min(per_axis - 2, int(std::floor(u))));
            base[a] = i;
            w[a] = u - i;
        }
        Mat acc;
        for (int corner = 0; corner < (1 << d); ++corner) {
            double weight = 1.0;
            long flat = 0, stride = 1;
            for (int a = 0; a < d; ++a) {
                const int bit = (corner >> a) & 1;
                weight *= bit ? w[a] : 1.0 - w[a];
                flat += stride * (base[a] + bit);
                stride *= per_axis;
            }
            if (corner == 0)
                acc = weight * samples[flat];
            else
                acc += weight * samples[flat];
        }
        return acc;
    }

    MetricField as_field() const {
        MetricField f;
        f.chart = chart;
        f.kind = FieldKind::Tabulated;
        f.eval = [t = *this](const Vec& p) { return t(p); };
        return f;
    }
};

// Max over the lattice of |partial^J (f - g)_{ij}| for all |J| <= k.
inline double ck_seminorm(const MetricField& f, const MetricField& g, int k, int per_axis = 9) {
    if (k < 0 || k > 2) throw std::invalid_argument("ck_seminorm: k must be 0, 1 or 2");
    if (f.chart.n != g.chart.n) throw std::invalid_argument("ck_seminorm: chart mismatch");
    const int d = f.chart.dim();
    const double h = f.chart.grid_step;
    auto diff = [&](const Vec& p) -> Mat { return f(p) - g(p); };
    double best = 0.0;
    for (const Vec& p : chart_lattice(f.chart, per_axis)) {
        best = std::max(best, diff(p).cwiseAbs().maxCoeff());
        if (k >= 1)
            for (int a = 0; a < d; ++a)
                best = std::max(best, fd::partial(diff, p, a, h).cwiseAbs().maxCoeff());
        if (k >= 2)
            for (int a = 0; a < d; ++a)
                for (int b = a; b < d; ++b)
                    best = std::max(best, fd::partial2(diff, p, a, b, h).cwiseAbs().maxCoeff());
    }
    return best;
}

struct HyperbolicityResult {
    bool is_hyperbolic;
    double measured;  // |f - sigma|_{C^2} on the lattice
};

inline HyperbolicityResult is_eps_hyperbolic(const MetricField& f, double eps, int per_axis = 9) {
    const double m = ck_seminorm(f, reference_metric(f.chart), 2, per_axis);
    return {m < eps, m};
}

// Positive definiteness at every lattice point, by LLT.
inline bool is_positive_definite(const MetricField& f, int per_axis = 9) {
    for (const Vec& p : chart_lattice(f.chart, per_axis)) {
        Eigen::LLT<Mat> llt(f(p));
        if (llt.info() != Eigen::Success) return false;
    }
    return true;
}

}  // namespace conesmooth
