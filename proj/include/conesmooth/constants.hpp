#pragma once

// The explicit constants of the certification pipeline, evaluated in the log
// domain so that the larger entries (which overflow double) keep exact
// logarithms. Every entry is a closed arithmetic form in (n, xi, c, c_*, eps).
//
// Subscript conventions follow the source formulas: a_sub(nu) etc. take the
// DISPLAYED subscript nu and use fiber dimension nu-1 internally.

#include <cmath>
#include <stdexcept>

namespace conesmooth {

// A positive quantity carried by its natural logarithm.
struct LogValue {
    double log_v;

    double value() const { return std::exp(log_v); }
    static LogValue from_value(double v) { return {std::log(v)}; }
    static LogValue from_log(double l) { return {l}; }

    LogValue operator*(const LogValue& o) const { return {log_v + o.log_v}; }
    LogValue operator/(const LogValue& o) const { return {log_v - o.log_v}; }
    LogValue operator+(const LogValue& o) const {  // log-sum-exp
        const double a = std::max(log_v, o.log_v), b = std::min(log_v, o.log_v);
        return {a + std::log1p(std::exp(b - a))};
    }
    bool operator<(const LogValue& o) const { return log_v < o.log_v; }
};

namespace cst {

inline double log_factorial(int n) { return std::lgamma(double(n) + 1.0); }

// Boundedness constant of the canonical sphere metric in the fixed atlas
// (arc-length charts for S^1, gnomonic charts for S^n, n >= 2). The values
// are certified by measurement in the test suite and frozen here.
inline double c_sphere(int n) {
    switch (n) {
        case 1: return 2.0;
        case 2: return 40.0;
        case 3: return 400.0;
        case 4: return 5000.0;
        default: throw std::domain_error("c_sphere: tabulated only for n <= 4");
    }
}

// c4(c, n) = sqrt( n n! c^{n+1} )
inline LogValue c4(double c, int n) {
    return LogValue::from_log(0.5 * (std::log(double(n)) + log_factorial(n) + (n + 1) * std::log(c)));
}

// c3(c, n) = 4 c^{3/2} + (27/4) (n!)^2 c^{(4n+11)/2}
inline LogValue c3(double c, int n) {
    const LogValue first = LogValue::from_log(std::log(4.0) + 1.5 * std::log(c));
    const LogValue second = LogValue::from_log(std::log(27.0 / 4.0) + 2.0 * log_factorial(n) +
                                               0.5 * (4 * n + 11) * std::log(c));
    return first + second;
}

// C(c, n, xi) = 2 e^{2(1+xi)} n^3 c4^3 c3
inline LogValue C(double c, int n, double xi) {
    return LogValue::from_log(std::log(2.0) + 2.0 * (1.0 + xi) + 3.0 * std::log(double(n))) *
           LogValue::from_log(3.0 * c4(c, n).log_v) * c3(c, n);
}

// C1(c, n, xi) = 128 C(2^{4n} c, n, xi)
inline LogValue C1(double c, int n, double xi) {
    return LogValue::from_value(128.0) * C(std::exp2(4.0 * n) * c, n, xi);
}

// C1'(m, xi) = C1(c_{S^{m-1}}, m-1, xi)
inline LogValue C1_prime(int m, double xi) { return C1(c_sphere(m - 1), m - 1, xi); }

// Linear coefficients of the slowness bound eps3 = a eps1 + b eps2:
//   c14 = (3/2) n^{3/2} n! c^{n+2}
//   a   = 2 c14 n^2 (n! c^{n+1})^3,   b = n^3 (n! c^{n+1})^3
inline LogValue slow_a(int n, double c) {
    const double log_c14 =
        std::log(1.5) + 1.5 * std::log(double(n)) + log_factorial(n) + (n + 2) * std::log(c);
    const double log_cube = 3.0 * (log_factorial(n) + (n + 1) * std::log(c));
    return LogValue::from_log(std::log(2.0) + log_c14 + 2.0 * std::log(double(n)) + log_cube);
}
inline LogValue slow_b(int n, double c) {
    const double log_cube = 3.0 * (log_factorial(n) + (n + 1) * std::log(c));
    return LogValue::from_log(3.0 * std::log(double(n)) + log_cube);
}

// Slowness factor of the fiber family extracted from an eps-hyperbolic
// variable field: a'(n, xi) = 9 e^{2(1+xi)} (n + 2 c4(2,n)) n^2 (n! 2^{n+1})^3.
inline LogValue slow_a_prime(int n, double xi) {
    const double c4_2 = std::sqrt(double(n) * std::exp(log_factorial(n)) * std::exp2(n + 1));
    return LogValue::from_log(std::log(9.0) + 2.0 * (1.0 + xi) + std::log(double(n) + 2.0 * c4_2) +
                              2.0 * std::log(double(n)) +
                              3.0 * (log_factorial(n) + (n + 1) * std::log(2.0)));
}

// C2(n, x) = x ( a(n, x') + b(n, x') ), x' = [ n! x^{n+1} ]^n
inline LogValue C2(int n, double x) {
    const double log_xp = double(n) * (log_factorial(n) + (n + 1) * std::log(x));
    const LogValue a = LogValue::from_log(std::log(2.0) +
                                          (std::log(1.5) + 1.5 * std::log(double(n)) +
                                           log_factorial(n) + (n + 2) * log_xp) +
                                          2.0 * std::log(double(n)) +
                                          3.0 * (log_factorial(n) + (n + 1) * log_xp));
    const LogValue b =
        LogValue::from_log(3.0 * std::log(double(n)) + 3.0 * (log_factorial(n) + (n + 1) * log_xp));
    return LogValue::from_log(std::log(x)) * (a + b);
}

// eps0(c_*) = C2(n, c_* + c_{S^n})
inline LogValue eps0(double c_star, int n) { return C2(n, c_star + c_sphere(n)); }

// a_sub(nu; eps, xi) = log( C1(c_{S^{nu-1}}, nu-1, xi) / eps )
inline double a_sub(int nu, double eps, double xi) {
    return C1_prime(nu, xi).log_v - std::log(eps);
}

// a'_sub(nu; c_*, eps, xi) = log( C1(c_{S^{nu-1}} + c_*, nu-1, xi) / eps ) + (2 + 2 xi)
inline double a_prime_sub(int nu, double c_star, double eps, double xi) {
    return C1(c_sphere(nu - 1) + c_star, nu - 1, xi).log_v - std::log(eps) + (2.0 + 2.0 * xi);
}

// d_sub(nu; c_*, eps, xi) = 12 eps0(c_*) C1(c_*, nu-1, xi) / eps + (2 + 4 xi)
inline LogValue d_sub(int nu, double c_star, double eps, double xi) {
    const LogValue main = LogValue::from_value(12.0) * eps0(c_star, nu - 1) *
                          C1(c_star, nu - 1, xi) / LogValue::from_value(eps);
    return main + LogValue::from_value(2.0 + 4.0 * xi);
}

// C4(k, xi) = C1(c_{S^k}, k, xi),   C3(k, xi) = e^{11+4 xi} + C4(k, xi)
inline LogValue C4_ext(int k, double xi) { return C1(c_sphere(k), k, xi); }
inline LogValue C3_ext(int k, double xi) {
    return LogValue::from_log(11.0 + 4.0 * xi) + C4_ext(k, xi);
}

// C3'(n, k, xi) = C1'(n+k, xi) + C3(k, xi)
inline LogValue C3_prime(int n, int k, double xi) { return C1_prime(n + k, xi) + C3_ext(k, xi); }

// C6(xi) = e^{18 + 6 xi}
inline LogValue C6(double xi) { return LogValue::from_log(18.0 + 6.0 * xi); }

// lambda_sub(nu; c_*, eps, eps', xi) = a'_sub(nu; c_*, eps', xi) + (1/2) log( C6(xi) / eps )
inline double lambda_sub(int nu, double c_star, double eps, double eps_prime, double xi) {
    return a_prime_sub(nu, c_star, eps_prime, xi) + 0.5 * (C6(xi).log_v - std::log(eps));
}

// R_{n,k}(eps, xi) = log(1/eps) + a_sub(n) + a_sub(n+k, C3' eps) + 18 + 8 xi
inline double R_nk(int n, int k, double eps, double xi) {
    const double eps2 = std::exp(C3_prime(n, k, xi).log_v + std::log(eps));
    return -std::log(eps) + a_sub(n, eps, xi) + a_sub(n + k, eps2, xi) + 18.0 + 8.0 * xi;
}

}  // namespace cst

struct ConstantsTable {
    int n;
    double xi, c, c_star, eps;
    int k;
    double c_sphere_n;

    LogValue C, C1, C2, C3, C3p, C4, C6, eps0, d_n;
    double a_n, a_prime_n, lambda_n, R_nk;
};

inline ConstantsTable constants(int n, double xi, double c, double c_star, double eps, int k = 1) {
    if (n < 1 || xi <= 0.0 || c <= 1.0 || c_star <= 1.0 || eps <= 0.0)
        throw std::domain_error("constants: need n >= 1, xi > 0, c > 1, c_* > 1, eps > 0");
    ConstantsTable T;
    T.n = n;
    T.xi = xi;
    T.c = c;
    T.c_star = c_star;
    T.eps = eps;
    T.k = k;
    T.c_sphere_n = cst::c_sphere(n);
    T.C = cst::C(c, n, xi);
    T.C1 = cst::C1(c, n, xi);
    T.C2 = cst::C2(n, c_star + cst::c_sphere(n));
    T.C3 = cst::C3_ext(k, xi);
    T.C3p = cst::C3_prime(n, k, xi);
    T.C4 = cst::C4_ext(k, xi);
    T.C6 = cst::C6(xi);
    T.eps0 = cst::eps0(c_star, n);
    T.d_n = cst::d_sub(n + 1, c_star, eps, xi);
    T.a_n = cst::a_sub(n + 1, eps, xi);
    T.a_prime_n = cst::a_prime_sub(n + 1, c_star, eps, xi);
    T.lambda_n = cst::lambda_sub(n + 1, c_star, eps, eps, xi);
    T.R_nk = cst::R_nk(n + 1, k, eps, xi);
    return T;
}

}  // namespace conesmooth
