#pragma once

// Sets of widths B(varsigma; c): angular widths beta_k with
// sin(beta_k) = c varsigma^{k+1}, the disjoint-neighborhood criterion
// sin(beta_k)/sin(alpha_{k-1}) <= sqrt(2)/2, induced link widths, and the
// radius/angle schedule driving the patch systems.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "conesmooth/hyptrig.hpp"

namespace conesmooth {

// Widths are computed lazily from (varsigma, c); sin(beta_k) underflows for
// large k, so indices are capped.
struct WidthSet {
    double varsigma;
    double c;
    static constexpr int kMaxIndex = 64;

    WidthSet(double varsigma_, double c_ = 1.0) : varsigma(varsigma_), c(c_) {
        if (!(varsigma > 0.0) || !(varsigma < std::sqrt(2.0) / 2.0))
            throw std::domain_error("WidthSet: varsigma outside (0, sqrt(2)/2)");
        if (c < 1.0) throw std::domain_error("WidthSet: c < 1");
        if (!(c * varsigma < std::sqrt(2.0) / 2.0))
            throw std::domain_error("WidthSet: c*varsigma >= sqrt(2)/2, beta_0 not a width");
    }

    double sin_beta(int k) const {
        if (k < 0 || k > kMaxIndex) throw std::out_of_range("WidthSet: index capped at 64");
        return c * std::pow(varsigma, double(k + 1));
    }
    double beta(int k) const { return std::asin(sin_beta(k)); }

    bool is_natural() const { return c == 1.0; }
};

// DNP criterion for the ordered pair (B, A): sin(beta_k)/sin(alpha_{k-1})
// <= sqrt(2)/2 for every k >= 1 up to the materialized length. The raw form
// also answers for parameter pairs that fail the width-set invariants
// (there the criterion is false outright when any ratio exceeds sqrt(2)/2,
// including the k = 0 ratio against the conventional alpha_{-1} = pi/2).
inline bool dnp_check_raw(double varsigma_b, double c_b, double varsigma_a, double c_a,
                          int length = WidthSet::kMaxIndex) {
    const double limit = std::sqrt(2.0) / 2.0;
    if (c_b * varsigma_b > limit) return false;  // beta_0 against alpha_{-1} = pi/2
    for (int k = 1; k <= length; ++k) {
        const double ratio =
            c_b * std::pow(varsigma_b, double(k + 1)) / (c_a * std::pow(varsigma_a, double(k)));
        if (ratio > limit) return false;
    }
    return true;
}

inline bool dnp_check(const WidthSet& B, const WidthSet& A, int length = WidthSet::kMaxIndex) {
    return dnp_check_raw(B.varsigma, B.c, A.varsigma, A.c, length);
}

inline bool is_natural(const WidthSet& B) { return B.is_natural(); }

// Widths induced on the (rescaled) link of a k-simplex:
// sin(beta''_j) = sin(beta_{k+j+1}) / sin(beta_k). For B(varsigma; c) this is
// the natural set B(varsigma) for every k, so induction is idempotent exactly
// on natural sets.
inline std::vector<double> induced_link_widths(const WidthSet& B, int k, int count) {
    if (k < 0 || k + count + 1 > WidthSet::kMaxIndex)
        throw std::out_of_range("induced_link_widths: not enough materialized terms");
    std::vector<double> out;
    out.reserve(count);
    for (int j = 0; j < count; ++j)
        out.push_back(std::asin(B.sin_beta(k + j + 1) / B.sin_beta(k)));
    return out;
}

// The radius schedule of a cone patch system:
//   r_k      = asinh( sinh(r) / sin(alpha_k) ),  r_{-1} = r
//   s_{m,k}  = asinh( sinh(r_{m-2}) sin(beta_k) )   (k <= m-1; the k = m-1
//              entry extends the closed form past the usual range)
//   r_{m,k}  = r_{m-k-3}
struct RadiusSchedule {
    double r;
    int m;
    WidthSet alpha;  // B(varsigma)
    WidthSet beta;   // B(varsigma; c)

    RadiusSchedule(double r_, int m_, double varsigma, double c)
        : r(r_), m(m_), alpha(varsigma, 1.0), beta(varsigma, c) {
        if (m < 1) throw std::domain_error("RadiusSchedule: m < 1");
        if (r <= 0.0) throw std::domain_error("RadiusSchedule: r <= 0");
    }

    double r_k(int k) const {
        if (k == -1) return r;
        // asinh( sinh(r) / varsigma^{k+1} ), stable for large r
        const double L = detail::log_sinh(r) - std::log(alpha.sin_beta(k));
        return detail::asinh_exp(L);
    }

    double s_mk(int k) const {
        if (k > m - 1) throw std::out_of_range("RadiusSchedule: s_{m,k} needs k <= m-1");
        const double L = detail::log_sinh(r_k(m - 2)) + std::log(beta.sin_beta(k));
        return detail::asinh_exp(L);
    }

    double r_mk(int k) const { return r_k(m - k - 3); }

    // sin(theta_{m,k}(t)) = c'' sin(alpha_k), c'' = sinh(r_{m-2})/sinh(t):
    // the angular width of the radius-r_{m,k} cone neighborhood on the
    // sphere of radius t.
    double sin_theta_mk(int k, double t) const {
        const double c2 = std::exp(detail::log_sinh(r_k(m - 2)) - detail::log_sinh(t));
        return c2 * alpha.sin_beta(k);
    }
    double sin_phi_mk(int k, double t) const {
        const double c2 = std::exp(detail::log_sinh(r_k(m - 2)) - detail::log_sinh(t));
        return c2 * beta.sin_beta(k);
    }
};

inline RadiusSchedule radius_schedule(double r, int m, double varsigma, double c) {
    return RadiusSchedule(r, m, varsigma, c);
}

}  // namespace conesmooth
