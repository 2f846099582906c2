#pragma once

// Stable evaluation of hyperbolic right-triangle relations (curvature -1,
// lengths dimensionless, angles in radians). All identities are the classical
// ones for a geodesic triangle with legs r, t, hypotenuse s and right angle
// between the legs:
//
//   cosh(s) = cosh(r) cosh(t)          (law of cosines)
//   sinh(r) = sin(beta) sinh(s)        (law of sines, beta opposite r)
//
// Arguments up to ~700 are routine here; intermediate sinh/cosh values are
// kept in the log domain so nothing overflows before the final result.

#include <cmath>
#include <limits>
#include <stdexcept>

namespace conesmooth {

constexpr double kPi = 3.14159265358979323846264338327950288;

namespace detail {

// log(sinh x) for x > 0 without overflow.
inline double log_sinh(double x) {
    if (x < 1e-3) return std::log(std::sinh(x));
    if (x < 20.0) return std::log(std::sinh(x));
    return x + std::log1p(-std::exp(-2.0 * x)) - std::log(2.0);
}

// log(cosh x) for any x.
inline double log_cosh(double x) {
    const double a = std::abs(x);
    if (a < 20.0) return std::log(std::cosh(a));
    return a + std::log1p(std::exp(-2.0 * a)) - std::log(2.0);
}

// asinh(exp(L)).
inline double asinh_exp(double L) {
    if (L < 15.0) return std::asinh(std::exp(L));
    return L + std::log1p(std::sqrt(1.0 + std::exp(-2.0 * L)));
}

// acosh(exp(L)), L >= 0.
inline double acosh_exp(double L) {
    if (L < 0.0) L = 0.0;  // clamp rounding noise below cosh = 1
    if (L < 15.0) return std::acosh(std::exp(L));
    return L + std::log1p(std::sqrt(1.0 - std::exp(-2.0 * L)));
}

// log(cosh y) given A = log(sinh y), via cosh^2 = 1 + sinh^2.
inline double log_cosh_from_log_sinh(double A) {
    if (A > 15.0) return A + 0.5 * std::log1p(std::exp(-2.0 * A));
    return 0.5 * std::log1p(std::exp(2.0 * A));
}

}  // namespace detail

// r with sinh(r) = sin(beta) sinh(s).
inline double leg_from_hyp_angle(double s, double beta) {
    if (s < 0.0) throw std::domain_error("leg_from_hyp_angle: s < 0");
    if (beta < 0.0 || beta > kPi / 2.0)
        throw std::domain_error("leg_from_hyp_angle: beta outside [0, pi/2]");
    if (s == 0.0 || beta == 0.0) return 0.0;
    if (beta == kPi / 2.0) return s;
    const double L = std::log(std::sin(beta)) + detail::log_sinh(s);
    return detail::asinh_exp(L);
}

// t with cosh(s) = cosh(r) cosh(t), r = leg_from_hyp_angle(s, beta).
// Evaluated through sinh(t) = sinh(s) cos(beta) / cosh(r), which stays
// accurate when t degenerates (beta near pi/2), unlike the acosh route.
inline double adjacent_leg(double s, double beta) {
    if (s < 0.0) throw std::domain_error("adjacent_leg: s < 0");
    if (beta < 0.0 || beta > kPi / 2.0)
        throw std::domain_error("adjacent_leg: beta outside [0, pi/2]");
    if (beta == 0.0) return s;
    if (s == 0.0 || beta == kPi / 2.0) return 0.0;
    const double log_sinh_r = std::log(std::sin(beta)) + detail::log_sinh(s);
    const double log_cosh_r = detail::log_cosh_from_log_sinh(log_sinh_r);
    return detail::asinh_exp(detail::log_sinh(s) + std::log(std::cos(beta)) - log_cosh_r);
}

// s with cosh(s) = cosh(r) cosh(t).
inline double hypotenuse(double r, double t) {
    if (r < 0.0 || t < 0.0) throw std::domain_error("hypotenuse: negative leg");
    if (r == 0.0) return t;
    if (t == 0.0) return r;
    return detail::acosh_exp(detail::log_cosh(r) + detail::log_cosh(t));
}

// beta = asin(sinh r / sinh s), the angle opposite the leg of length r.
inline double angle_from_legs(double r, double s) {
    if (s <= 0.0) throw std::domain_error("angle_from_legs: s <= 0");
    if (r < 0.0 || r > s) throw std::domain_error("angle_from_legs: need 0 <= r <= s");
    if (r == 0.0) return 0.0;
    if (r == s) return kPi / 2.0;
    const double ratio = std::exp(detail::log_sinh(r) - detail::log_sinh(s));
    return std::asin(std::min(1.0, ratio));
}

struct LegPair {
    double r;  // leg opposite beta
    double t;  // leg adjacent to beta
};

// Both legs of the right triangle with hypotenuse s and angle beta.
inline LegPair polar_to_extension(double s, double beta) {
    return {leg_from_hyp_angle(s, beta), adjacent_leg(s, beta)};
}

// A solved right triangle. beta sits at the vertex opposite the leg of
// length r, alpha at the vertex opposite the leg of length t.
struct RightTriangle {
    double s = 0.0;
    double r = 0.0;
    double t = 0.0;
    double alpha = 0.0;
    double beta = 0.0;

    static RightTriangle from_hyp_angle(double s, double beta) {
        RightTriangle T;
        T.s = s;
        T.beta = beta;
        T.r = leg_from_hyp_angle(s, beta);
        T.t = adjacent_leg(s, beta);
        T.alpha = (s > 0.0) ? angle_from_legs(T.t, s) : 0.0;
        return T;
    }

    static RightTriangle from_legs(double r, double t) {
        RightTriangle T;
        T.r = r;
        T.t = t;
        T.s = hypotenuse(r, t);
        T.beta = (T.s > 0.0) ? angle_from_legs(r, T.s) : 0.0;
        T.alpha = (T.s > 0.0) ? angle_from_legs(t, T.s) : 0.0;
        return T;
    }

    // Relative defect of cosh(s) = cosh(r) cosh(t), evaluated in log domain.
    double pythagoras_defect() const {
        const double lhs = detail::log_cosh(s);
        const double rhs = detail::log_cosh(r) + detail::log_cosh(t);
        return std::abs(lhs - rhs);
    }

    // Defect of the law of sines sinh(r) = sin(beta) sinh(s).
    double sine_law_defect() const {
        if (s == 0.0) return 0.0;
        const double lhs = detail::log_sinh(std::max(r, 1e-300));
        const double rhs = std::log(std::sin(beta)) + detail::log_sinh(s);
        return std::abs(lhs - rhs);
    }
};

// lambda(s) = asinh(sinh(s) sin(beta0)): reindexation of an extension family
// by the radius at which cuts of the extended metric are taken.
inline double reindex_extension_family(double beta0, double s) {
    if (beta0 <= 0.0 || beta0 >= kPi / 2.0 + 1e-15)
        throw std::domain_error("reindex_extension_family: beta0 outside (0, pi/2]");
    return leg_from_hyp_angle(s, beta0);
}

// vartheta(lambda, beta, b) = asinh( sinh( b + asinh(sinh(lambda)/sin(beta0)) ) sin(beta) ):
// the fiber radius at which the cut of the reindexed extension samples the
// base family. vartheta - lambda tends to b + log(sin beta / sin beta0).
inline double reindex_cut_radius(double lambda, double beta, double b, double beta0) {
    const double s = detail::asinh_exp(detail::log_sinh(lambda) - std::log(std::sin(beta0)));
    return leg_from_hyp_angle(s + b, beta);
}

}  // namespace conesmooth
