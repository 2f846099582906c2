#pragma once

// The C^infty transition function rho: 0 on (-inf, 0], 1 on [1, inf),
// built from exp(-1/x) mollification, together with its first two
// derivatives in closed form and certified sup bounds b1 >= sup|rho'|,
// b2 >= sup|rho''| (b1 < 3, b2 < 12). All gluing functions in the pipeline
// are reparametrizations of this one function.

#include <algorithm>
#include <cmath>

namespace conesmooth {

namespace detail {

inline double moll(double x) { return (x > 0.0) ? std::exp(-1.0 / x) : 0.0; }
inline double moll1(double x) {
    if (x <= 0.0) return 0.0;
    return std::exp(-1.0 / x) / (x * x);
}
inline double moll2(double x) {
    if (x <= 0.0) return 0.0;
    return std::exp(-1.0 / x) * (1.0 - 2.0 * x) / (x * x * x * x);
}

}  // namespace detail

inline double bump(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    const double a = detail::moll(t);
    const double b = detail::moll(1.0 - t);
    return a / (a + b);
}

inline double bump_d1(double t) {
    if (t <= 0.0 || t >= 1.0) return 0.0;
    const double a = detail::moll(t), b = detail::moll(1.0 - t);
    const double a1 = detail::moll1(t), b1 = detail::moll1(1.0 - t);
    const double D = a + b;
    return (a1 * b + a * b1) / (D * D);
}

inline double bump_d2(double t) {
    if (t <= 0.0 || t >= 1.0) return 0.0;
    const double a = detail::moll(t), b = detail::moll(1.0 - t);
    const double a1 = detail::moll1(t), b1 = detail::moll1(1.0 - t);
    const double a2 = detail::moll2(t), b2 = detail::moll2(1.0 - t);
    const double D = a + b;
    const double N = a1 * b + a * b1;
    const double N1 = a2 * b - a * b2;  // d/dt (a1 b + a b1), cross terms cancel
    const double D1 = a1 - b1;
    return (N1 * D - 2.0 * N * D1) / (D * D * D);
}

struct BumpBounds {
    double b1;  // certified sup |rho'|
    double b2;  // certified sup |rho''|
};

// Dense sampling plus a Lipschitz-style pad. The pad uses a crude bound on
// the next derivative observed on the same grid.
inline BumpBounds certify_bump_bounds(int samples = 200000) {
    double m1 = 0.0, m2 = 0.0, m3 = 0.0;
    const double h = 1.0 / samples;
    double prev2 = bump_d2(0.0);
    for (int i = 0; i <= samples; ++i) {
        const double t = i * h;
        m1 = std::max(m1, std::abs(bump_d1(t)));
        const double d2 = bump_d2(t);
        m2 = std::max(m2, std::abs(d2));
        if (i > 0) m3 = std::max(m3, std::abs(d2 - prev2) / h);
        prev2 = d2;
    }
    return {m1 + 0.5 * m2 * h, m2 + 0.5 * m3 * h};
}

// rho_{a,d}(t) = rho(2 (t-a)/d): 0 for t <= a, 1 for t >= a + d/2,
// |rho_{a,d}'| < 6/d, |rho_{a,d}''| < 48/d^2.
inline double bump_scaled(double a, double d, double t) { return bump(2.0 * (t - a) / d); }
inline double bump_scaled_d1(double a, double d, double t) {
    return bump_d1(2.0 * (t - a) / d) * (2.0 / d);
}
inline double bump_scaled_d2(double a, double d, double t) {
    return bump_d2(2.0 * (t - a) / d) * (4.0 / (d * d));
}

// rho_bar(t) = rho(1 - 2t): 1 for t <= 0, 0 for t >= 1/2. Shifted version
// rho_bar(t - s) is the blend used by warp forcing at radius s.
inline double bump_bar(double t) { return bump(1.0 - 2.0 * t); }
inline double bump_bar_d1(double t) { return -2.0 * bump_d1(1.0 - 2.0 * t); }
inline double bump_bar_d2(double t) { return 4.0 * bump_d2(1.0 - 2.0 * t); }

}  // namespace conesmooth
