#pragma once

// The recursive smoothed cone metrics:
//  - dimension one: G = sinh^2(t) mu(t) sigma_{S^1} + dt^2 with
//    mu(t) = 1 + (k-1) rho((t - r + d2)/d2), k = k'/4,
//  - continuation C_d(g_lambda): warp forcing at lambda followed by
//    hyperbolic forcing on the ball, reproduced branch-exactly,
//  - smoothing cones over manifold fibers: exponential-cusp warp glued to the
//    warp-forced cut,
//  - numeric cut-limit extrapolation for indexed families.

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "conesmooth/atlas.hpp"
#include "conesmooth/bump.hpp"
#include "conesmooth/curvature.hpp"
#include "conesmooth/hyptrig.hpp"
#include "conesmooth/warping.hpp"
#include "conesmooth/widths.hpp"

namespace conesmooth {

// Parameter tuple steering the recursion, with the admissibility constraints
// xi > 0, d_i > 4 + xi, r > 2 d_i, c varsigma < e^{-(4+xi)}.
struct SmoothingParams {
    double xi = 0.5;
    std::vector<double> d;  // d[0] = d_2, d[1] = d_3, ...
    double r = 40.0;
    double c = 1.1;
    double varsigma = 0.005;

    double d_sub(int i) const {  // d_i with the displayed subscript, i >= 2
        return d.at(size_t(i - 2));
    }

    void validate() const {
        if (xi <= 0.0) throw std::domain_error("SmoothingParams: xi <= 0");
        for (double di : d) {
            if (di <= 4.0 + xi) throw std::domain_error("SmoothingParams: d_i <= 4 + xi");
            if (r <= 2.0 * di) throw std::domain_error("SmoothingParams: r <= 2 d_i");
        }
        if (!(c > 1.0) || !(varsigma > 0.0) || !(c * varsigma < std::exp(-(4.0 + xi))))
            throw std::domain_error("SmoothingParams: need c > 1 and c varsigma < e^{-(4+xi)}");
    }
};

// --- dimension one ----------------------------------------------------------

// mu_{d2,r,k}(t) and derivatives; the transition band is [r - d2, r].
struct MuProfile {
    double k, r, d2;

    double operator()(double t) const { return 1.0 + (k - 1.0) * bump((t - r + d2) / d2); }
    double d1(double t) const { return (k - 1.0) * bump_d1((t - r + d2) / d2) / d2; }
    double d2v(double t) const { return (k - 1.0) * bump_d2((t - r + d2) / d2) / (d2 * d2); }
};

// G(P^1, r) for the circle complex of k' segments: sinh^2(t) mu(t) sigma_{S^1} + dt^2.
struct Dim1Metric {
    int k_prime;
    double r, d2;
    MuProfile mu;

    Dim1Metric(int k_prime_, double r_, double d2_)
        : k_prime(k_prime_), r(r_), d2(d2_), mu{k_prime_ / 4.0, r_, d2_} {
        if (!(r > d2) || !(d2 > 0.0)) throw std::domain_error("Dim1Metric: need r > d2 > 0");
        if (k_prime < 3) throw std::domain_error("Dim1Metric: k' >= 3");
    }

    // coefficient of sigma_{S^1}
    double fiber(double t) const { return sinh_sq(t) * mu(t); }

    // radial sectional curvature K = -f''/f, f = sinh(t) sqrt(mu(t)), via the
    // closed-form derivatives of mu
    double curvature(double t) const {
        const double m = mu(t), m1 = mu.d1(t), m2 = mu.d2v(t);
        // f''/f = 1 + coth(t) m'/m + m''/(2m) - m'^2/(4 m^2)
        const double coth = 1.0 / std::tanh(t);
        return -(1.0 + coth * m1 / m + m2 / (2.0 * m) - (m1 * m1) / (4.0 * m * m));
    }

    // unwarped cut coefficient: mu(r + b), independent of r once written in b
    double cut_limit(double b) const { return 1.0 + (mu.k - 1.0) * bump(1.0 + b / d2); }

    RadialMetric as_radial() const {
        RadialMetric g;
        g.atlas = circle_atlas();
        g.cut = [self = *this](int, const Vec&, double t) {
            return (self.fiber(t) * Mat::Identity(1, 1)).eval();
        };
        return g;
    }
};

inline Dim1Metric g_dim1(int k_prime, double r, double d2) { return Dim1Metric(k_prime, r, d2); }

// --- continuation -----------------------------------------------------------

// An indexed family of radial metrics: lambda -> g_lambda, each defined (at
// least) for r > lambda - (2 + xi).
struct RadialFamily {
    Atlas atlas;
    std::function<RadialMetric(double)> at;
};

// C_d(g_lambda): the four-branch continuation of one family member.
//   r >= lambda + 1/2            : g_lambda
//   lambda <= r <= lambda + 1/2  : rho_bar(r - lambda) blend with the
//                                  sinh-warp of the unwarped cut at lambda
//   lambda - d <= r <= lambda    : sinh^2(r) [rho((r - lambda + d)/d) ghat +
//                                  (1 - rho) sigma]
//   r <= lambda - d              : sinh^2(r) sigma
// The forcing blend runs over the full band [lambda - d, lambda], so the cut
// limits on [-d, 0] are exactly rho(1 + b/d) ghat_inf + (1 - rho) sigma.
inline RadialMetric continuation(const RadialMetric& g, double lambda, double d) {
    if (!(lambda > d)) throw std::domain_error("continuation: need lambda > d");
    const FiberMetric sigma = round_sphere_metric(g.atlas.dim);
    const FiberMetric ghat = g.unwarped_cut_at(lambda);
    RadialMetric out;
    out.atlas = g.atlas;
    out.cut = [g, sigma, ghat, lambda, d](int c, const Vec& x, double r) -> Mat {
        if (r >= lambda + 0.5) return g(c, x, r);
        if (r >= lambda) {
            const double rho = bump_bar(r - lambda);
            return (rho * sinh_sq(r) * ghat(c, x) + (1.0 - rho) * g(c, x, r)).eval();
        }
        if (r >= lambda - d) {
            const double rho = bump((r - lambda + d) / d);
            return (sinh_sq(r) * (rho * ghat(c, x) + (1.0 - rho) * sigma(c, x))).eval();
        }
        return (sinh_sq(r) * sigma(c, x)).eval();
    };
    return out;
}

// The cut-limit formula of the continued family on [-d, 0]:
// rho(1 + b/d) ghat_inf + (1 - rho(1 + b/d)) sigma.
inline Mat continued_cut_limit(const FiberMetric& ghat_inf, double b, double d, int chart,
                               const Vec& x) {
    const FiberMetric sigma = round_sphere_metric(ghat_inf.atlas.dim);
    if (b >= 0.0) return ghat_inf(chart, x);
    if (b <= -d) return sigma(chart, x);
    const double rho = bump(1.0 + b / d);
    return (rho * ghat_inf(chart, x) + (1.0 - rho) * sigma(chart, x)).eval();
}

// --- smoothing cones over manifold fibers (no global smoothing available) ---

// Warp function mu(t) = (e^t - rho_{a,d}(t) e^{-t}) / 2 with a = r_{m-2} - 2 d_{m+1}:
// exactly e^t/2 for t <= a, exactly sinh(t) from t >= a + d/2 on.
struct CuspWarp {
    double a, d;

    double operator()(double t) const {
        return 0.5 * (std::exp(t) - bump_scaled(a, d, t) * std::exp(-t));
    }
    double d1(double t) const {
        return 0.5 * (std::exp(t) - bump_scaled_d1(a, d, t) * std::exp(-t) +
                      bump_scaled(a, d, t) * std::exp(-t));
    }
    double d2v(double t) const {
        return 0.5 * (std::exp(t) - bump_scaled_d2(a, d, t) * std::exp(-t) +
                      2.0 * bump_scaled_d1(a, d, t) * std::exp(-t) -
                      bump_scaled(a, d, t) * std::exp(-t));
    }
};

// G(P, h, r) on P x R for a fiber with metric h and a warp-forced cut g_hat:
//   t <= r_{m-2} - 2 d_{m+1}            : (e^t/2)^2 h + dt^2
//   up to r_{m-2} - 1/2                 : mu(t)^2 [h + rho (g_hat - h)] + dt^2
//   at r_{m-2} - 1/2                    : sinh^2(t) g_hat + dt^2 (the warp-forced branch)
struct ManifoldConeMetric {
    FiberMetric h, g_hat;
    double r_m2, d_next;
    CuspWarp warp;

    ManifoldConeMetric(FiberMetric h_, FiberMetric g_hat_, double r_m2_, double d_next_)
        : h(std::move(h_)),
          g_hat(std::move(g_hat_)),
          r_m2(r_m2_),
          d_next(d_next_),
          warp{r_m2_ - 2.0 * d_next_, d_next_} {
        if (r_m2 - 2.0 * d_next <= 0.0)
            throw std::domain_error("ManifoldConeMetric: r_{m-2} - 2 d_{m+1} <= 0");
    }

    double blend(double t) const { return bump_scaled(r_m2 - d_next, d_next - 0.5, t); }

    Mat fiber_at(int chart, const Vec& x, double t) const {
        const double rho = blend(t);
        const double w2 = warp(t) * warp(t);
        if (rho == 0.0) return (w2 * h(chart, x)).eval();
        return (w2 * (h(chart, x) + rho * (g_hat(chart, x) - h(chart, x)))).eval();
    }

    // radial curvature of the 2D reduction along a fiber direction u:
    // K = -F''/F with F(t) = warp(t) sqrt(q(t)), q(t) = blend coefficient on u
    double reduction_curvature(int chart, const Vec& x, const Vec& u, double t,
                               double fd_step = 1e-3) const {
        auto F = [&](double tt) {
            const double q = u.dot(fiber_at(chart, x, tt) * u);
            return std::sqrt(q);
        };
        return -fd::d2(F, t, fd_step) / F(t);
    }
};

// --- cut limits -------------------------------------------------------------

struct CutLimitReport {
    std::vector<double> lambdas;
    std::vector<double> cauchy;       // max component distance of consecutive cuts
    bool converged = false;           // decreasing Cauchy differences, or at the floor
    bool at_floor = false;            // differences below the roundoff floor
    double floor = 1e-12;
    Mat extrapolated;                 // Richardson-extrapolated limit at the probe point
    double formula_deviation = -1.0;  // set when a closed-form limit is supplied
};

inline CutLimitReport cut_limit_estimate(
    const RadialFamily& fam, double b, const std::vector<double>& lambdas, int chart,
    const Vec& probe, const std::function<Mat(int, const Vec&)>& closed_form = nullptr) {
    if (lambdas.size() < 3) throw std::invalid_argument("cut_limit_estimate: need >= 3 indices");
    CutLimitReport rep;
    rep.lambdas = lambdas;
    std::vector<Mat> cuts;
    for (double lam : lambdas)
        cuts.push_back(fam.at(lam).unwarped_cut_at(lam + b)(chart, probe));
    for (size_t i = 1; i < cuts.size(); ++i)
        rep.cauchy.push_back((cuts[i] - cuts[i - 1]).cwiseAbs().maxCoeff());
    rep.converged = true;
    rep.at_floor = true;
    for (double dq : rep.cauchy)
        if (dq > rep.floor) rep.at_floor = false;
    for (size_t i = 1; i < rep.cauchy.size(); ++i)
        if (!(rep.cauchy[i] < rep.cauchy[i - 1] || rep.cauchy[i] < rep.floor))
            rep.converged = false;

    const Mat last = cuts.back();
    const Mat prev = cuts[cuts.size() - 2];
    const double d1 = rep.cauchy[rep.cauchy.size() - 2], d2 = rep.cauchy.back();
    if (d1 > 0.0 && d2 > 0.0 && d2 < d1) {
        const double q = d2 / d1;
        rep.extrapolated = last + (last - prev) * (q / (1.0 - q));
    } else {
        rep.extrapolated = last;
    }
    if (closed_form) rep.formula_deviation = (rep.extrapolated - closed_form(chart, probe)).cwiseAbs().maxCoeff();
    return rep;
}

}  // namespace conesmooth
