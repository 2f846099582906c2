#pragma once

// Fourth-order central finite-difference stencils. Every derivative taken in
// the project goes through these, so the error budget is uniform: O(h^4) per
// first/second derivative plus roundoff O(eps/h) resp. O(eps/h^2).

#include <Eigen/Dense>

#include <array>
#include <functional>

namespace conesmooth {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

namespace fd {

// f'(x): (-f(x+2h) + 8 f(x+h) - 8 f(x-h) + f(x-2h)) / (12 h)
template <class F>
auto d1(const F& f, double x, double h) -> decltype(f(x)) {
    return (-f(x + 2 * h) + 8.0 * f(x + h) - 8.0 * f(x - h) + f(x - 2 * h)) / (12.0 * h);
}

// f''(x): (-f(x+2h) + 16 f(x+h) - 30 f(x) + 16 f(x-h) - f(x-2h)) / (12 h^2)
template <class F>
auto d2(const F& f, double x, double h) -> decltype(f(x)) {
    return (-f(x + 2 * h) + 16.0 * f(x + h) - 30.0 * f(x) + 16.0 * f(x - h) - f(x - 2 * h)) /
           (12.0 * h * h);
}

template <class F>
auto partial(const F& f, const Vec& x, int axis, double h) -> decltype(f(x)) {
    Vec p = x;
    auto eval = [&](double v) {
        p[axis] = x[axis] + v;
        return f(p);
    };
    return (-eval(2 * h) + 8.0 * eval(h) - 8.0 * eval(-h) + eval(-2 * h)) / (12.0 * h);
}

template <class F>
auto partial2(const F& f, const Vec& x, int axis_a, int axis_b, double h) -> decltype(f(x)) {
    if (axis_a == axis_b) {
        Vec p = x;
        auto eval = [&](double v) {
            p[axis_a] = x[axis_a] + v;
            return f(p);
        };
        return (-eval(2 * h) + 16.0 * eval(h) - 30.0 * eval(0.0) + 16.0 * eval(-h) - eval(-2 * h)) /
               (12.0 * h * h);
    }
    auto g = [&](const Vec& p) { return partial(f, p, axis_b, h); };
    return partial(g, x, axis_a, h);
}

}  // namespace fd
}  // namespace conesmooth
