#pragma once

// Patched and smoothed cone metrics over 2-dimensional all-right spherical
// complexes (links are circles, so the recursion bottoms out in the
// dimension-one construction).
//
// Geometry conventions. A point is (x, s) with x in a model triangle. All
// metric values are reported as 3x3 bilinear forms in the orthonormal-at-x
// frame {d/ds, E1, E2}, where E1, E2 is a deterministic orthonormal basis of
// the model tangent plane; the canonical cone metric is then
// diag(1, sinh^2 s, sinh^2 s).
//
// Around a vertex v with link length l = L(v) pi/2 the open star develops
// isometrically onto polar coordinates (gamma, lambda), gamma in (0, pi/2),
// lambda in R/(l Z), with sigma_P = dgamma^2 + sin^2(gamma) dlambda^2. The
// vertex patch carries
//   dr'^2 + cosh^2(r') dt^2 + F(r')^2 dlambda^2,
//   F(r') = sinh(r') sqrt(nu(r')),
//   nu: (2 pi / l)^2 -> 1 over the band [r - d2, r],
// which by the right-triangle identity sinh^2(s) dgamma^2 + ds^2 =
// cosh^2(r') dt^2 + dr'^2 (r' = asinh(sin gamma sinh s)) reads, in the
// (s, gamma, lambda) coordinates,
//   ds^2 + sinh^2(s) dgamma^2 + (F(r')^2 / sin^2 gamma) dlambda^2.
// For nu = 1 this is exactly the canonical cone metric, which is why the
// patches agree on overlaps.

#include <Eigen/Dense>

#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

#include "conesmooth/bump.hpp"
#include "conesmooth/cone.hpp"
#include "conesmooth/complex.hpp"
#include "conesmooth/curvature.hpp"
#include "conesmooth/smoothing.hpp"
#include "conesmooth/widths.hpp"

namespace conesmooth {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Mat2 = Eigen::Matrix2d;

// Piecewise parameterization P -> S^2: target positions per complex vertex;
// per simplex the map is x -> normalize(sum_i coords_i target_i).
struct GlobalSmoothing {
    std::vector<Vec3> target;
};

inline GlobalSmoothing octahedron_smoothing() {
    GlobalSmoothing phi;
    for (int axis = 0; axis < 3; ++axis)
        for (int sign = 0; sign < 2; ++sign) {
            Vec3 t = Vec3::Zero();
            t[axis] = sign ? -1.0 : 1.0;
            phi.target.push_back(t);
        }
    return phi;
}

inline GlobalSmoothing bipyramid_smoothing(int L) {
    GlobalSmoothing phi;
    phi.target.push_back(Vec3(0, 0, 1));
    phi.target.push_back(Vec3(0, 0, -1));
    for (int i = 0; i < L; ++i)
        phi.target.push_back(Vec3(std::cos(2.0 * kPi * i / L), std::sin(2.0 * kPi * i / L), 0.0));
    return phi;
}

// cyclic star of a vertex in a closed surface complex:
// triangle i spans (v, link[i], link[i+1 mod L])
struct VertexStar {
    int v = -1;
    std::vector<int> link;

    int L() const { return int(link.size()); }
    double length() const { return L() * kPi / 2.0; }
};

inline VertexStar vertex_star(const AllRightComplex& P, int v) {
    VertexStar st;
    st.v = v;
    std::map<int, std::vector<int>> adj;  // link vertex -> neighbors within the link
    for (int id : P.simplices_of_dim(2)) {
        const auto& t = P.verts(id);
        if (!std::binary_search(t.begin(), t.end(), v)) continue;
        VertexList rest = opposite_face(t, {v});
        adj[rest[0]].push_back(rest[1]);
        adj[rest[1]].push_back(rest[0]);
    }
    if (adj.empty()) throw std::domain_error("vertex_star: vertex not in any triangle");
    int cur = adj.begin()->first, prev = -1;
    for (size_t i = 0; i < adj.size(); ++i) {
        st.link.push_back(cur);
        const auto& nb = adj[cur];
        const int nxt = (nb[0] == prev) ? nb[1] : nb[0];
        prev = cur;
        cur = nxt;
    }
    return st;
}

class Cone2D {
  public:
    AllRightComplex P;
    SmoothingParams params;
    GlobalSmoothing phi;
    RadiusSchedule sched;

    Cone2D(AllRightComplex P_, SmoothingParams params_, GlobalSmoothing phi_)
        : P(std::move(P_)),
          params(params_),
          phi(std::move(phi_)),
          sched(params_.r, 2, params_.varsigma, params_.c) {
        params.validate();
        if (P.dim() != 2) throw std::domain_error("Cone2D: complex must be 2-dimensional");
        if (sched.r_k(0) > 340.0)
            throw std::domain_error("Cone2D: schedule radius exceeds the representable warp range");
        if (int(phi.target.size()) != P.num_vertices)
            throw std::domain_error("Cone2D: smoothing targets mismatch vertices");
        for (int v : P.simplices_of_dim(0)) stars_[P.verts(v)[0]] = vertex_star(P, P.verts(v)[0]);
    }

    double r0() const { return sched.r_k(0); }
    double ball_radius(double xi) const { return r0() - (2.0 + xi); }
    double lambda_star() const { return r0() - 0.5; }
    double forcing_width() const { return params.d_sub(3) - 0.5; }

    // link reweighting nu and F = sinh sqrt(nu) for the vertex patch
    double nu(int v, double t) const {
        const double l = stars_.at(v).length();
        const double base = (2.0 * kPi / l) * (2.0 * kPi / l);
        return base + (1.0 - base) * bump((t - (params.r - params.d_sub(2))) / params.d_sub(2));
    }
    double nu_d1(int v, double t) const {
        const double l = stars_.at(v).length();
        const double base = (2.0 * kPi / l) * (2.0 * kPi / l);
        const double d2 = params.d_sub(2);
        return (1.0 - base) * bump_d1((t - (params.r - d2)) / d2) / d2;
    }
    double nu_d2(int v, double t) const {
        const double l = stars_.at(v).length();
        const double base = (2.0 * kPi / l) * (2.0 * kPi / l);
        const double d2 = params.d_sub(2);
        return (1.0 - base) * bump_d2((t - (params.r - d2)) / d2) / (d2 * d2);
    }
    double F(int v, double t) const { return std::sqrt(sinh_sq(t) * nu(v, t)); }

    // deterministic tangent frame at the model point
    static void frame(const Vec& c, Vec3& E1, Vec3& E2) {
        const Vec3 x(c[0], c[1], c[2]);
        int a = 0;
        for (int i = 1; i < 3; ++i)
            if (std::abs(x[i]) < std::abs(x[a])) a = i;
        Vec3 e = Vec3::Zero();
        e[a] = 1.0;
        E1 = (e - x[a] * x).normalized();
        E2 = x.cross(E1);
    }

    // --- fiber forms in the frame {E1, E2} -----------------------------------

    Mat2 sigma_fiber() const { return Mat2::Identity(); }

    // pullback of the round metric under the piecewise smoothing map
    Mat2 round_pullback_fiber(const SpherePoint& x) const {
        const auto& tv = P.verts(x.carrier);
        if (tv.size() != 3) throw std::domain_error("round_pullback_fiber: need a triangle carrier");
        Eigen::Matrix3d M;
        for (int i = 0; i < 3; ++i) M.col(i) = phi.target[size_t(tv[size_t(i)])];
        const Vec3 c(x.coords[0], x.coords[1], x.coords[2]);
        const Vec3 y = M * c;
        const double n = y.norm();
        const Vec3 yh = y / n;
        Vec3 E1, E2;
        frame(x.coords, E1, E2);
        const Vec3 J1 = (M * E1 - yh * (yh.dot(M * E1))) / n;
        const Vec3 J2 = (M * E2 - yh * (yh.dot(M * E2))) / n;
        Mat2 g;
        g << J1.dot(J1), J1.dot(J2), J1.dot(J2), J2.dot(J2);
        return g;
    }

    // the vertex-patch metric at (x, s), as a full 3x3 in {d/ds, E1, E2}
    Mat3 vertex_patch_eval(int v, const SpherePoint& x, double s) const {
        const auto& tv = P.verts(x.carrier);
        int pos = -1;
        for (int i = 0; i < int(tv.size()); ++i)
            if (tv[size_t(i)] == v) pos = i;
        if (pos < 0) throw std::domain_error("vertex_patch_eval: carrier not in the star");
        const Vec3 c(x.coords[0], x.coords[1], x.coords[2]);
        const double cg = std::min(1.0, std::max(-1.0, c[pos]));
        const double gamma = std::acos(cg);
        if (gamma < 1e-12) {
            // on the cone ray itself the fiber directions are all lambda-like
            const double rp = 0.0;
            (void)rp;
            throw std::domain_error("vertex_patch_eval: on the cone edge");
        }
        const double rp = leg_from_hyp_angle(s, gamma);
        const double Fv = F(v, rp);
        const double g_gamma = sinh_sq(s);
        const double g_lambda = (Fv * Fv) / (std::sin(gamma) * std::sin(gamma));

        Vec3 ev = Vec3::Zero();
        ev[pos] = 1.0;
        const Vec3 e_gamma = -(ev - cg * c).normalized();
        const Vec3 e_lambda = c.cross(e_gamma);
        Vec3 E1, E2;
        frame(x.coords, E1, E2);
        Eigen::Matrix2d B;  // rows: E_i in the (e_gamma, e_lambda) basis
        B << E1.dot(e_gamma), E1.dot(e_lambda), E2.dot(e_gamma), E2.dot(e_lambda);
        Mat2 D = Mat2::Zero();
        D(0, 0) = g_gamma;
        D(1, 1) = g_lambda;
        const Mat2 fiber = B * D * B.transpose();
        Mat3 out = Mat3::Zero();
        out(0, 0) = 1.0;
        out.bottomRightCorner(2, 2) = fiber;
        return out;
    }

    Mat3 canonical_eval(double s) const {
        Mat3 out = Mat3::Zero();
        out(0, 0) = 1.0;
        out(1, 1) = out(2, 2) = sinh_sq(s);
        return out;
    }

    // --- the patched metric ---------------------------------------------------

    // evaluation by patch label; the label choice is immaterial on overlaps
    Mat3 patched_eval(const ConePoint& p) const {
        const auto labels = classify_patch(P, p, sched, params.xi);
        for (const auto& l : labels)
            if (l.kind == PatchLabel::Ball)
                throw std::domain_error("patched_eval: undefined inside the ball");
        for (const auto& l : labels)
            if (l.kind == PatchLabel::YSimplex)
                return vertex_patch_eval(P.verts(l.simplex)[0], p.x, p.s);
        return canonical_eval(p.s);
    }

    // both evaluations on a Y(vertex) / Y(top) overlap, for consistency checks
    struct OverlapPair {
        Mat3 via_vertex, via_top;
    };
    OverlapPair overlap_eval(int v, const ConePoint& p) const {
        return {vertex_patch_eval(v, p.x, p.s), canonical_eval(p.s)};
    }

    // --- the smoothed metric --------------------------------------------------

    Mat2 patched_fiber(const SpherePoint& x, double s) const {
        const Mat3 full = patched_eval({x, s});
        return full.bottomRightCorner(2, 2);
    }

    Mat2 patched_unwarped_cut(const SpherePoint& x) const {
        const double ls = lambda_star();
        return patched_fiber(x, ls) / sinh_sq(ls);
    }

    Mat3 smoothed_eval(const ConePoint& p) const {
        const double t = p.s;
        const double ls = lambda_star();
        const double dprime = forcing_width();
        Mat3 out = Mat3::Zero();
        out(0, 0) = 1.0;
        if (t >= ls + 0.5) return patched_eval(p);
        if (t >= ls) {
            const double rho = bump_bar(t - ls);
            out.bottomRightCorner(2, 2) = rho * sinh_sq(t) * patched_unwarped_cut(p.x) +
                                          (1.0 - rho) * patched_fiber(p.x, t);
            return out;
        }
        if (t >= ls - dprime) {
            const double rho = bump((t - ls + dprime) / dprime);
            out.bottomRightCorner(2, 2) =
                sinh_sq(t) * (rho * patched_unwarped_cut(p.x) +
                              (1.0 - rho) * round_pullback_fiber(p.x));
            return out;
        }
        out.bottomRightCorner(2, 2) = sinh_sq(t) * round_pullback_fiber(p.x);
        return out;
    }

    // --- coordinate charts for curvature sampling ----------------------------

    // polar chart around a vertex: q = (q1, q2, q3) -> point with
    // gamma = gamma0 + scale q1, lambda = lambda0 + scale q2, t = t0 + q3
    struct PolarChart {
        const Cone2D* owner;
        int v;
        double gamma0, lambda0, t0, scale;

        SpherePoint point(double gamma, double lambda) const {
            const auto& st = owner->stars_.at(v);
            const double l = st.length();
            double lam = std::fmod(lambda, l);
            if (lam < 0.0) lam += l;
            int tri = int(lam / (kPi / 2.0));
            if (tri >= st.L()) tri = st.L() - 1;
            const double a = lam - tri * (kPi / 2.0);
            const int w0 = st.link[size_t(tri)], w1 = st.link[size_t((tri + 1) % st.L())];
            VertexList tvs{v, w0, w1};
            std::sort(tvs.begin(), tvs.end());
            const int id = owner->P.id_of(tvs);
            if (id < 0) throw std::domain_error("PolarChart: missing star triangle");
            Vec coords = Vec::Zero(3);
            auto put = [&](int vertex, double val) {
                for (int i = 0; i < 3; ++i)
                    if (tvs[size_t(i)] == vertex) coords[i] = val;
            };
            put(v, std::cos(gamma));
            put(w0, std::sin(gamma) * std::cos(a));
            put(w1, std::sin(gamma) * std::sin(a));
            return SpherePoint{id, coords};
        }

        // tangent pushforwards d(point)/dgamma, d(point)/dlambda in the frame
        void tangents(double gamma, double lambda, const SpherePoint& x, Vec3& tg, Vec3& tl) const {
            const auto& st = owner->stars_.at(v);
            const double l = st.length();
            double lam = std::fmod(lambda, l);
            if (lam < 0.0) lam += l;
            int tri = int(lam / (kPi / 2.0));
            if (tri >= st.L()) tri = st.L() - 1;
            const double a = lam - tri * (kPi / 2.0);
            const auto& tvs = owner->P.verts(x.carrier);
            Vec3 dv = Vec3::Zero(), d0 = Vec3::Zero(), d1 = Vec3::Zero();
            const int w0 = st.link[size_t(tri)], w1 = st.link[size_t((tri + 1) % st.L())];
            for (int i = 0; i < 3; ++i) {
                if (tvs[size_t(i)] == v) dv[i] = 1.0;
                if (tvs[size_t(i)] == w0) d0[i] = 1.0;
                if (tvs[size_t(i)] == w1) d1[i] = 1.0;
            }
            tg = -std::sin(gamma) * dv + std::cos(gamma) * (std::cos(a) * d0 + std::sin(a) * d1);
            tl = std::sin(gamma) * (-std::sin(a) * d0 + std::cos(a) * d1);
        }

        // metric components of the smoothed (or patched) metric in (q1,q2,q3)
        Mat operator()(const Vec& q) const {
            const double gamma = gamma0 + scale * q[0];
            const double lambda = lambda0 + scale * q[1];
            const double t = t0 + q[2];
            const SpherePoint x = point(gamma, lambda);
            const Mat3 G = owner->smoothed_eval({x, t});
            Vec3 tg, tl, E1, E2;
            tangents(gamma, lambda, x, tg, tl);
            frame(x.coords, E1, E2);
            const Mat2 fib = G.bottomRightCorner(2, 2);
            Eigen::Vector2d cg(tg.dot(E1), tg.dot(E2)), cl(tl.dot(E1), tl.dot(E2));
            Mat out = Mat::Zero(3, 3);
            out(0, 0) = scale * scale * cg.dot(fib * cg);
            out(0, 1) = out(1, 0) = scale * scale * cg.dot(fib * cl);
            out(1, 1) = scale * scale * cl.dot(fib * cl);
            out(2, 2) = G(0, 0);
            return out;
        }
    };

    PolarChart polar_chart(int v, double gamma0, double lambda0, double t0) const {
        return PolarChart{this, v, gamma0, lambda0, t0, 1.0 / std::sinh(std::min(t0, 350.0))};
    }

    // interior chart within one triangle around x0 (normal-ish coordinates)
    struct InteriorChart {
        const Cone2D* owner;
        SpherePoint x0;
        Vec3 E1, E2;
        double t0, scale;

        SpherePoint point(double q1, double q2) const {
            const Vec3 c0(x0.coords[0], x0.coords[1], x0.coords[2]);
            const Vec3 y = c0 + scale * (q1 * E1 + q2 * E2);
            const Vec3 x = y.normalized();
            SpherePoint p;
            p.carrier = x0.carrier;
            p.coords = Vec(3);
            p.coords << x[0], x[1], x[2];
            if (p.coords.minCoeff() < 0.0)
                throw std::domain_error("InteriorChart: left the carrier triangle");
            return p;
        }

        Mat operator()(const Vec& q) const {
            const SpherePoint x = point(q[0], q[1]);
            const double t = t0 + q[2];
            const Mat3 G = owner->smoothed_eval({x, t});
            const Vec3 c0(x0.coords[0], x0.coords[1], x0.coords[2]);
            const Vec3 y = c0 + scale * (q[0] * E1 + q[1] * E2);
            const double n = y.norm();
            const Vec3 xh = y / n;
            const Vec3 J1 = scale * (E1 - xh * xh.dot(E1)) / n;
            const Vec3 J2 = scale * (E2 - xh * xh.dot(E2)) / n;
            Vec3 F1, F2;
            frame(x.coords, F1, F2);
            const Mat2 fib = G.bottomRightCorner(2, 2);
            Eigen::Vector2d a(J1.dot(F1), J1.dot(F2)), b(J2.dot(F1), J2.dot(F2));
            Mat out = Mat::Zero(3, 3);
            out(0, 0) = a.dot(fib * a);
            out(0, 1) = out(1, 0) = a.dot(fib * b);
            out(1, 1) = b.dot(fib * b);
            out(2, 2) = G(0, 0);
            return out;
        }
    };

    InteriorChart interior_chart(const SpherePoint& x0, double t0) const {
        InteriorChart ch;
        ch.owner = this;
        ch.x0 = x0;
        frame(x0.coords, ch.E1, ch.E2);
        ch.t0 = t0;
        ch.scale = 1.0 / std::sinh(std::min(t0, 350.0));
        return ch;
    }

    // analytic sectional-curvature range of a vertex patch at fiber radius r':
    // the coordinate-plane curvatures of dr'^2 + cosh^2 dt^2 + F^2 dlambda^2,
    // with F = sinh sqrt(nu) expanded so nothing overflows:
    //   F''/F = 1 + coth nu'/nu + nu''/(2 nu) - nu'^2/(4 nu^2)
    //   (cosh' F')/(cosh F) = tanh (coth + nu'/(2 nu))
    DiagonalWarpCurvatures vertex_patch_curvatures(int v, double rp) const {
        const double n0 = nu(v, rp), n1 = nu_d1(v, rp), n2 = nu_d2(v, rp);
        const double coth = 1.0 / std::tanh(rp), tanh_r = std::tanh(rp);
        const double k_rl =
            -(1.0 + coth * n1 / n0 + n2 / (2.0 * n0) - (n1 * n1) / (4.0 * n0 * n0));
        const double k_tl = -tanh_r * (coth + n1 / (2.0 * n0));
        return {-1.0, k_rl, k_tl};
    }

    const std::map<int, VertexStar>& stars() const { return stars_; }

  private:
    std::map<int, VertexStar> stars_;
};

}  // namespace conesmooth
