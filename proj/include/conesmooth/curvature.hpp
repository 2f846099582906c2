#pragma once

// Coordinate Riemann tensor by finite-difference Christoffel symbols,
// sectional curvatures, and the Bishop-O'Neill formulas for warped products.

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "conesmooth/fd.hpp"
#include "conesmooth/metricfield.hpp"

namespace conesmooth {

struct PlaneSpec {
    Vec point;
    Vec u;
    Vec v;
};

using MetricFn = std::function<Mat(const Vec&)>;

// Christoffel symbols Gamma^l_{ij} at p.
inline std::vector<Mat> christoffel(const MetricFn& g, const Vec& p, double h) {
    const int d = int(p.size());
    const Mat g0 = g(p);
    const Mat ginv = g0.inverse();
    std::vector<Mat> dg(d);  // dg[a](i,j) = partial_a g_ij
    for (int a = 0; a < d; ++a) dg[a] = fd::partial(g, p, a, h);
    std::vector<Mat> gamma(d, Mat::Zero(d, d));
    for (int l = 0; l < d; ++l)
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                double s = 0.0;
                for (int m = 0; m < d; ++m)
                    s += ginv(l, m) * (dg[i](m, j) + dg[j](m, i) - dg[m](i, j));
                gamma[l](i, j) = 0.5 * s;
            }
    return gamma;
}

// Riemann tensor with all indices lowered: R(i,j,k,l) = g( R(e_i,e_j) e_k , e_l ).
// Convention: (R(X,Y)Z)^l = X^i Y^j Z^k ( d_i Gamma^l_{jk} - d_j Gamma^l_{ik}
//                                       + Gamma^m_{jk} Gamma^l_{im} - Gamma^m_{ik} Gamma^l_{jm} ).
struct RiemannTensor {
    int d;
    std::vector<double> comp;  // lowered, index (((i*d+j)*d+k)*d+l)

    double operator()(int i, int j, int k, int l) const { return comp[((i * d + j) * d + k) * d + l]; }
};

inline RiemannTensor riemann_curvature(const MetricFn& g, const Vec& p, double h) {
    const int d = int(p.size());
    const Mat g0 = g(p);
    const auto gamma0 = christoffel(g, p, h);

    // derivatives of the Christoffel symbols, each entry via the 4-point stencil
    std::vector<std::vector<Mat>> dgamma(d);
    for (int a = 0; a < d; ++a) {
        std::vector<Mat> acc(d, Mat::Zero(d, d));
        const double c[4] = {-1.0, 8.0, -8.0, 1.0};
        const double off[4] = {2.0, 1.0, -1.0, -2.0};
        for (int s = 0; s < 4; ++s) {
            Vec q = p;
            q[a] += off[s] * h;
            const auto gs = christoffel(g, q, h);
            for (int l = 0; l < d; ++l) acc[l] += (c[s] / (12.0 * h)) * gs[l];
        }
        dgamma[a] = std::move(acc);
    }

    RiemannTensor R;
    R.d = d;
    R.comp.assign(size_t(d) * d * d * d, 0.0);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k) {
                Vec up = Vec::Zero(d);
                for (int l = 0; l < d; ++l) {
                    double s = dgamma[i][l](j, k) - dgamma[j][l](i, k);
                    for (int m = 0; m < d; ++m)
                        s += gamma0[l](i, m) * gamma0[m](j, k) - gamma0[l](j, m) * gamma0[m](i, k);
                    up[l] = s;
                }
                const Vec low = g0 * up;
                for (int l = 0; l < d; ++l) R.comp[((i * d + j) * d + k) * d + l] = low[l];
            }
    return R;
}

inline RiemannTensor riemann_curvature(const MetricField& f, const Vec& p) {
    const double margin = 2.0 * f.chart.grid_step;
    if (p[f.chart.dim() - 1] < f.chart.t_min() + margin ||
        p[f.chart.dim() - 1] > f.chart.t_max() - margin)
        throw std::domain_error("riemann_curvature: point too close to chart boundary");
    return riemann_curvature(f.eval, p, f.chart.grid_step);
}

// Largest antisymmetry violation |R_{ijkl} + R_{jikl}|, a consistency measure.
inline double antisymmetry_defect(const RiemannTensor& R) {
    double worst = 0.0;
    for (int i = 0; i < R.d; ++i)
        for (int j = 0; j < R.d; ++j)
            for (int k = 0; k < R.d; ++k)
                for (int l = 0; l < R.d; ++l)
                    worst = std::max(worst, std::abs(R(i, j, k, l) + R(j, i, k, l)));
    return worst;
}

inline double sectional_curvature(const MetricFn& g, const PlaneSpec& plane, double h) {
    const Vec& p = plane.point;
    const Mat g0 = g(p);
    const auto R = riemann_curvature(g, p, h);
    const int d = int(p.size());
    double num = 0.0;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k)
                for (int l = 0; l < d; ++l)
                    num += R(i, j, k, l) * plane.u[i] * plane.v[j] * plane.v[k] * plane.u[l];
    const double uu = plane.u.dot(g0 * plane.u);
    const double vv = plane.v.dot(g0 * plane.v);
    const double uv = plane.u.dot(g0 * plane.v);
    const double den = uu * vv - uv * uv;
    if (den < 1e-12) throw std::domain_error("sectional_curvature: degenerate plane");
    return num / den;
}

inline double sectional_curvature(const MetricField& f, const PlaneSpec& plane) {
    return sectional_curvature(f.eval, plane, f.chart.grid_step);
}

// In dimension 3 every 2-plane is the kernel of a unit covector, and the
// sectional curvature is a quadratic form in that normal: K(span perp n) =
// n^T M n with M_ab = R(a', a'', b'', b') in a g-orthonormal frame (indices
// cyclic). The eigenvalue range of M is the exact range of sectional
// curvatures at the point.
struct SectionalRange {
    double min, max;
};

inline SectionalRange sectional_range_3d(const MetricFn& g, const Vec& p, double h) {
    if (p.size() != 3) throw std::invalid_argument("sectional_range_3d: dimension 3 only");
    const Mat g0 = g(p);
    Eigen::LLT<Mat> llt(g0);
    if (llt.info() != Eigen::Success)
        throw std::domain_error("sectional_range_3d: metric not positive definite");
    const Mat L = llt.matrixL();
    const Mat E = L.transpose().inverse();  // columns: g-orthonormal frame

    const auto R = riemann_curvature(g, p, h);
    auto r_frame = [&](int a, int b, int c, int d) {
        double s = 0.0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k)
                    for (int l = 0; l < 3; ++l)
                        s += R(i, j, k, l) * E(i, a) * E(j, b) * E(k, c) * E(l, d);
        return s;
    };
    const int cyc[3][2] = {{1, 2}, {2, 0}, {0, 1}};
    Mat M = Mat::Zero(3, 3);
    for (int a = 0; a < 3; ++a)
        for (int b = a; b < 3; ++b) {
            const double v = r_frame(cyc[a][0], cyc[a][1], cyc[b][1], cyc[b][0]);
            const double w = r_frame(cyc[b][0], cyc[b][1], cyc[a][1], cyc[a][0]);
            M(a, b) = M(b, a) = 0.5 * (v + w);
        }
    Eigen::SelfAdjointEigenSolver<Mat> es(M);
    return {es.eigenvalues().minCoeff(), es.eigenvalues().maxCoeff()};
}

// A 1-dimensional warping profile with derivatives; closed forms where we
// have them, fourth-order differences otherwise.
struct Profile {
    std::function<double(double)> w;
    std::function<double(double)> dw;   // may be empty
    std::function<double(double)> d2w;  // may be empty
    double fd_step = 1e-4;

    double operator()(double t) const { return w(t); }
    double d1(double t) const { return dw ? dw(t) : fd::d1(w, t, fd_step); }
    double d2(double t) const { return d2w ? d2w(t) : fd::d2(w, t, fd_step); }
};

inline Profile sinh_profile() {
    return {[](double t) { return std::sinh(t); }, [](double t) { return std::cosh(t); },
            [](double t) { return std::sinh(t); }};
}
inline Profile cosh_profile() {
    return {[](double t) { return std::cosh(t); }, [](double t) { return std::sinh(t); },
            [](double t) { return std::cosh(t); }};
}
inline Profile exp_profile() {
    auto e = [](double t) { return std::exp(t); };
    return {e, e, e};
}
inline Profile sin_profile() {
    return {[](double t) { return std::sin(t); }, [](double t) { return std::cos(t); },
            [](double t) { return -std::sin(t); }};
}

struct WarpedCurvatures {
    double radial;  // plane containing d/dt
    double fiber;   // plane tangent to the fiber
};

// Bishop-O'Neill for w(t)^2 h + dt^2 with fiber of constant curvature K_h:
//   K_radial = -w''/w,     K_fiber = (K_h - w'^2) / w^2.
inline WarpedCurvatures warped_sectional(const Profile& w, double fiber_curvature, double t) {
    const double wt = w(t);
    if (wt <= 0.0) throw std::domain_error("warped_sectional: profile not positive");
    const double d1 = w.d1(t), d2 = w.d2(t);
    return {-d2 / wt, (fiber_curvature - d1 * d1) / (wt * wt)};
}

// Sectional curvatures of a diagonal multiply warped metric
//   dt^2 + sum_i f_i(t)^2 dx_i^2
// at coordinate planes: K(dt, dx_i) = -f_i''/f_i and
// K(dx_i, dx_j) = -(f_i' f_j')/(f_i f_j). In dimension 3 every section lies
// between the min and max of the three coordinate values.
struct DiagonalWarpCurvatures {
    double k_rt;   // (t, x_i)
    double k_rs;   // (t, x_j)
    double k_ts;   // (x_i, x_j)
    double min() const { return std::min(k_rt, std::min(k_rs, k_ts)); }
    double max() const { return std::max(k_rt, std::max(k_rs, k_ts)); }
};

inline DiagonalWarpCurvatures double_warp_curvatures(const Profile& f1, const Profile& f2,
                                                     double t) {
    const double a = f1(t), b = f2(t);
    return {-f1.d2(t) / a, -f2.d2(t) / b, -(f1.d1(t) * f2.d1(t)) / (a * b)};
}

}  // namespace conesmooth
