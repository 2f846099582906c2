#pragma once

// Points of the infinite hyperbolic cone over an all-right spherical complex,
// cone neighborhoods via the law-of-sines reduction
//   dist((x, s), C Delta) = asinh( sin(gamma) sinh(s) ),  gamma = d_P(x, Delta),
// the Y/X patch systems driven by a radius schedule, and the radial
// (in)stability trichotomy for rays R_{x,b}(s) = (s + b) x.

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "conesmooth/complex.hpp"
#include "conesmooth/hyptrig.hpp"
#include "conesmooth/widths.hpp"

namespace conesmooth {

struct ConePoint {
    SpherePoint x;
    double s = 0.0;  // radius; s = 0 is the cone vertex regardless of x
};

// distance from (x, s) to the cone over delta; pi/2-far points are unreachable
// by any neighborhood of width < s
inline double cone_distance(const AllRightComplex& P, const ConePoint& p, const VertexList& delta) {
    const double gamma = angular_distance_or_far(P, p.x, delta);
    return leg_from_hyp_angle(p.s, gamma);
}

inline bool in_cone_nbhd(const AllRightComplex& P, const ConePoint& p, const VertexList& delta,
                         double width) {
    if (width <= 0.0) return false;
    return cone_distance(P, p, delta) <= width;
}

// strict-interior test used for the open neighborhoods in the patch system
inline bool in_open_cone_nbhd(const AllRightComplex& P, const ConePoint& p,
                              const VertexList& delta, double width) {
    return cone_distance(P, p, delta) < width;
}

struct PatchLabel {
    enum Kind { YSimplex, YTop, XSimplex, XTop, Ball } kind;
    int simplex = -1;  // id for the Y/X simplex variants

    bool operator==(const PatchLabel& o) const { return kind == o.kind && simplex == o.simplex; }
};

// All patch labels containing p, per the schedule:
//   Y(P, Delta^k, r) = open N_{s_{m,k}}(C Delta^k) minus the closed
//       N_{r_{m,j}}(C Delta^j), j < k, minus the ball B_{r_{m-2}-(2+xi)},
//   Y(P, r) = C P minus all N_{r_{m,j}}(C Delta^j), j <= m-2, minus the ball,
//   X variants subtract B_{r_{m-2}} instead.
inline std::vector<PatchLabel> classify_patch(const AllRightComplex& P, const ConePoint& p,
                                              const RadiusSchedule& sched, double xi) {
    const int m = P.dim();
    if (sched.m != m) throw std::invalid_argument("classify_patch: schedule dimension mismatch");
    std::vector<PatchLabel> labels;
    const double ball = sched.r_k(m - 2) - (2.0 + xi);
    const double ball_x = sched.r_k(m - 2);
    if (p.s < ball) {
        labels.push_back({PatchLabel::Ball, -1});
        return labels;
    }

    // closed lower-skeleton memberships per dimension
    std::vector<std::vector<int>> in_closed(size_t(m - 1));
    for (int k = 0; k <= m - 2; ++k)
        for (int id : P.simplices_of_dim(k))
            if (in_cone_nbhd(P, p, P.verts(id), sched.r_mk(k))) in_closed[size_t(k)].push_back(id);

    bool in_any_lower = false;
    for (int k = 0; k <= m - 2 && !in_any_lower; ++k) in_any_lower = !in_closed[size_t(k)].empty();

    for (int k = 0; k <= m - 2; ++k) {
        bool lower_blocked = false;
        for (int j = 0; j < k && !lower_blocked; ++j) lower_blocked = !in_closed[size_t(j)].empty();
        if (lower_blocked) continue;
        for (int id : P.simplices_of_dim(k)) {
            if (!in_open_cone_nbhd(P, p, P.verts(id), sched.s_mk(k))) continue;
            labels.push_back({PatchLabel::YSimplex, id});
            if (p.s > ball_x) labels.push_back({PatchLabel::XSimplex, id});
        }
    }
    if (!in_any_lower) {
        labels.push_back({PatchLabel::YTop, -1});
        if (p.s > ball_x) labels.push_back({PatchLabel::XTop, -1});
    }
    return labels;
}

// --- radial stability -------------------------------------------------------

enum class RayStatus { Eventually, StablyDisjoint, UnstablyDisjoint };

struct RayClassification {
    RayStatus status;
    double s0;  // for Eventually: membership for all s >= s0
};

// Membership of R_{x,b}(s) = (s+b) x in the scheduled neighborhood whose
// width a(s) keeps sinh(a(s)) = kappa sinh(s): membership at radius s reads
// sin(gamma) sinh(s+b) <= kappa sinh(s), and sinh(s+b)/sinh(s) tends
// monotonely to e^b, so the limit comparison e^b sin(gamma) vs kappa decides.
// s0 reports from which radius on the limiting status holds; crossings solve
// coth(s0) = (kappa/sin(gamma) - cosh b)/sinh b.
inline RayClassification ray_classify(const AllRightComplex& P, const SpherePoint& x, double b,
                                      const VertexList& delta, double kappa,
                                      double tie_tol = 1e-13) {
    const double gamma = angular_distance_or_far(P, x, delta);
    const double lhs = std::exp(b) * std::sin(gamma);
    if (std::abs(lhs - kappa) <= tie_tol * std::max(1.0, kappa))
        return {RayStatus::UnstablyDisjoint, 0.0};
    if (lhs < kappa) {
        if (gamma == 0.0 || b == 0.0) return {RayStatus::Eventually, 0.0};
        if (b < 0.0) return {RayStatus::Eventually, -b};  // member wherever defined
        const double q = (kappa / std::sin(gamma) - std::cosh(b)) / std::sinh(b);  // q > 1
        return {RayStatus::Eventually, std::atanh(1.0 / q)};
    }
    if (b < 0.0) {  // member only near the vertex; exits at the crossing
        const double q = (kappa / std::sin(gamma) - std::cosh(b)) / std::sinh(b);  // q > 1
        return {RayStatus::StablyDisjoint, std::atanh(1.0 / q)};
    }
    return {RayStatus::StablyDisjoint, 0.0};
}

struct AbsorptionResult {
    PatchLabel label;      // YSimplex with the absorbing simplex, or YTop
    double r_threshold;    // R_{x,b}(r_{m-2}) carries the label for r_{m-2} > this
};

// Geometric disjoint-neighborhood Monte Carlo: for sampled points, whenever x
// lies in the beta_k- and beta_l-neighborhoods of two simplices neither of
// which contains the other, it must lie in the alpha_j-neighborhood of their
// common face. Distances to all simplices are cached per sample.
struct DnpStats {
    long pair_hits = 0;
    long violations = 0;
};

inline DnpStats dnp_violations(const AllRightComplex& P, const WidthSet& B, const WidthSet& A,
                               long samples, unsigned seed) {
    struct PairInfo {
        int a, b, meet;  // simplex ids; meet = -1 for empty intersection
        int ka, kb, kj;
    };
    std::vector<PairInfo> pairs;
    const int n_simplices = int(P.simplices.size());
    for (int a = 0; a < n_simplices; ++a)
        for (int b = a + 1; b < n_simplices; ++b) {
            const auto& va = P.verts(a);
            const auto& vb = P.verts(b);
            VertexList meet;
            std::set_intersection(va.begin(), va.end(), vb.begin(), vb.end(),
                                  std::back_inserter(meet));
            if (meet.size() == va.size() || meet.size() == vb.size()) continue;
            pairs.push_back({a, b, meet.empty() ? -1 : P.id_of(meet), int(va.size()) - 1,
                             int(vb.size()) - 1, int(meet.size()) - 1});
        }

    std::mt19937_64 rng(seed);
    const auto tops = P.top_simplices();
    DnpStats stats;
    std::vector<double> dist;
    dist.resize(size_t(n_simplices));
    for (long i = 0; i < samples; ++i) {
        const auto x = sample_in_simplex(P, tops[size_t(i) % tops.size()], rng);
        for (int sdx = 0; sdx < n_simplices; ++sdx)
            dist[size_t(sdx)] = angular_distance_or_far(P, x, P.verts(sdx));
        for (const auto& pr : pairs) {
            if (dist[size_t(pr.a)] > B.beta(pr.ka)) continue;
            if (dist[size_t(pr.b)] > B.beta(pr.kb)) continue;
            ++stats.pair_hits;
            const bool inside = pr.meet >= 0 && dist[size_t(pr.meet)] <= A.beta(pr.kj);
            if (!inside) ++stats.violations;
        }
    }
    return stats;
}

// The inductive absorption of rays into the patch system: scan skeleton
// dimensions upward; the first eventual or unstable hit wins (an unstable hit
// falls into the wider s_{m,k}-neighborhood of the same simplex). The
// schedule keeps sinh(r_{m,k})/sinh(r_{m-2}) = sin(alpha_k) and
// sinh(s_{m,k})/sinh(r_{m-2}) = sin(beta_k) exactly, for every r.
inline AbsorptionResult ray_absorption(const AllRightComplex& P, const SpherePoint& x, double b,
                                       const RadiusSchedule& sched, double xi = 0.0) {
    const int m = P.dim();
    double threshold = 0.0;
    for (int k = 0; k <= m - 2; ++k) {
        const double kappa_r = sched.alpha.sin_beta(k);
        const double kappa_s = sched.beta.sin_beta(k);
        for (int id : P.simplices_of_dim(k)) {
            const auto cls = ray_classify(P, x, b, P.verts(id), kappa_r);
            if (cls.status == RayStatus::Eventually)
                return {{PatchLabel::YSimplex, id}, std::max(threshold, cls.s0)};
            if (cls.status == RayStatus::UnstablyDisjoint) {
                const auto wide = ray_classify(P, x, b, P.verts(id), kappa_s);
                return {{PatchLabel::YSimplex, id}, std::max(threshold, wide.s0)};
            }
            threshold = std::max(threshold, cls.s0);  // exit radius when b < 0
        }
    }
    (void)xi;
    return {{PatchLabel::YTop, -1}, threshold};
}

}  // namespace conesmooth
