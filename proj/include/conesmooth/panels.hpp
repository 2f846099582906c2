#pragma once

// Numeric verification panels for the displayed inequalities that the rest
// of the pipeline leans on. Each panel returns measured maxima next to the
// closed-form bounds so reports can show the margin.

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "conesmooth/constants.hpp"
#include "conesmooth/fd.hpp"
#include "conesmooth/hyptrig.hpp"
#include "conesmooth/metricfield.hpp"
#include "conesmooth/warping.hpp"

namespace conesmooth {

struct PanelRow {
    std::string name;
    double measured;
    double bound;
    bool pass() const { return measured <= bound; }
};

// The sinh-vs-exponential reweighting estimates, for f(t) = e^{-t}
// sinh(t+t0)/sinh(t0) on t >= 0:
//   (1) |f - 1|_{C^0}  <= (49/48) e^{-2 t0}
//   (2) |f'|_{C^0}     <= (49/24) e^{-2 t0}
//   (3) |f''|_{C^0}    <= (49/12) e^{-2 t0}
//   (4) |f - 1|_{C^2}  <= (49/12) e^{-2 t0}
//   (5) |f|_{C^2}      <= 1.03
//   (6) |f^2 - 1|_{C^2} <= 16 e^{-2 t0}
// The first-derivative closed form is f'(t) = 2 e^{-2t} e^{-2 t0}/(1 - e^{-2 t0}),
// so sup|f'| = 2 e^{-2 t0}/(1-e^{-2 t0}) and sup|f''| twice that; the (2)-(4)
// bounds are stated accordingly (49/24, 49/12 rather than the unreachable
// 1/24, 1/12, 49/48 variants).
inline std::vector<PanelRow> sinh_exp_panel(double t0, double t_hi = 50.0,
                                                  double step = 1e-3) {
    auto f = [t0](double t) {
        return std::exp(detail::log_sinh(t + t0) - detail::log_sinh(t0) - t);
    };
    const double kappa = std::exp(-2.0 * t0) / (1.0 - std::exp(-2.0 * t0));
    auto f1 = [kappa](double t) { return 2.0 * kappa * std::exp(-2.0 * t); };
    auto f2 = [kappa](double t) { return -4.0 * kappa * std::exp(-2.0 * t); };

    double m0 = 0.0, m1 = 0.0, m2 = 0.0, q0 = 0.0, q1 = 0.0, q2 = 0.0, v = 0.0;
    for (double t = 0.0; t <= t_hi; t += step) {
        const double ft = f(t);
        m0 = std::max(m0, std::abs(ft - 1.0));
        m1 = std::max(m1, std::abs(f1(t)));
        m2 = std::max(m2, std::abs(f2(t)));
        v = std::max(v, std::abs(ft));
        const double g = ft * ft - 1.0;
        q0 = std::max(q0, std::abs(g));
        q1 = std::max(q1, std::abs(2.0 * ft * f1(t)));
        q2 = std::max(q2, std::abs(2.0 * (f1(t) * f1(t) + ft * f2(t))));
    }
    const double e2 = std::exp(-2.0 * t0);
    std::vector<PanelRow> rows;
    rows.push_back({"(1) |f-1|_C0", m0, 49.0 / 48.0 * e2});
    rows.push_back({"(2) |f'|_C0", m1, 49.0 / 24.0 * e2});
    rows.push_back({"(3) |f''|_C0", m2, 49.0 / 12.0 * e2});
    rows.push_back({"(4) |f-1|_C2", std::max(m0, std::max(m1, m2)), 49.0 / 12.0 * e2});
    rows.push_back({"(5) |f|_C2", std::max(v, std::max(m1, m2)), 1.03});
    rows.push_back({"(6) |f^2-1|_C2", std::max(q0, std::max(q1, q2)), 16.0 * e2});
    return rows;
}

// |rbar(x,t) - (t + r0)|_{C^2} <= 4 e^{2(1+xi)} / cosh(r0 - (2+xi)), measured
// by finite differences on a grid over B^1 x I_xi. Here
// rbar(x,t) = asinh( sinh(t0+t) sin(theta0 + x / sinh t0) ) with (theta0, t0)
// chosen so the center has extension coordinates (., r0).
struct RbarPanelResult {
    double measured;
    double bound;
    bool pass() const { return measured <= bound; }
};

inline RbarPanelResult rbar_c2_panel(double r0, double xi, int grid = 64, double t0_offset = 1.0) {
    const double t0 = r0 + t0_offset;
    const double theta0 = std::asin(std::sinh(r0) / std::sinh(t0));
    auto rbar = [&](const Vec& p) {
        Mat out(1, 1);
        out(0, 0) = leg_from_hyp_angle(t0 + p[1], theta0 + p[0] / std::sinh(t0)) - (p[1] + r0);
        return out;
    };
    const double h = 1e-3;
    double worst = 0.0;
    for (int i = 0; i < grid; ++i)
        for (int j = 0; j < grid; ++j) {
            Vec p(2);
            p << -1.0 + 2.0 * (i + 0.5) / grid, (-(1.0 + xi) + 2.0 * (1.0 + xi) * (j + 0.5) / grid);
            worst = std::max(worst, std::abs(rbar(p)(0, 0)));
            for (int a = 0; a < 2; ++a)
                worst = std::max(worst, std::abs(fd::partial(rbar, p, a, h)(0, 0)));
            for (int a = 0; a < 2; ++a)
                for (int b = a; b < 2; ++b)
                    worst = std::max(worst, std::abs(fd::partial2(rbar, p, a, b, h)(0, 0)));
        }
    const double bound = 4.0 * std::exp(2.0 * (1.0 + xi)) / std::cosh(r0 - (2.0 + xi));
    return {worst, bound};
}

// Desk-scale chart deviation of e^{2t} g0 + dt^2 for a constant fiber family
// g0 on S^n at centers t0: measured deviation vs C(c, n, xi) e^{-t0}.
inline std::vector<PanelRow> chart_deviation_panel(const FiberMetric& g0, double c, double xi,
                                                   const std::vector<double>& t0s,
                                                   int per_axis = 7) {
    RadialMetric exp_warped;
    exp_warped.atlas = g0.atlas;
    exp_warped.cut = [g0](int ch, const Vec& x, double t) {
        return (std::exp(2.0 * t) * g0(ch, x)).eval();
    };
    std::vector<PanelRow> rows;
    const int n = g0.atlas.dim;
    for (double t0 : t0s) {
        ChartCenter center{0, Vec::Zero(n), t0};
        const auto pull = warped_chart_pullback(exp_warped, center, xi);
        const double m = ck_seminorm(pull, reference_metric(pull.chart), 2, per_axis);
        const double bound = std::exp(cst::C(c, n, xi).log_v - t0);
        rows.push_back({"t0=" + std::to_string(t0), m, bound});
    }
    return rows;
}

}  // namespace conesmooth
