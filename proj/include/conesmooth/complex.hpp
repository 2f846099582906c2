#pragma once

// All-right spherical complexes with the intersection condition, their
// simplicial links, and spherical distances inside a common star. Points are
// stored per carrier simplex as nonnegative unit coordinates in the model
// simplex Delta_{S^m} (vertices at unit coordinate vectors), so every edge
// has length pi/2 by construction.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "conesmooth/fd.hpp"
#include "conesmooth/hyptrig.hpp"

namespace conesmooth {

using VertexList = std::vector<int>;  // sorted

struct AllRightComplex {
    int num_vertices = 0;
    std::vector<VertexList> simplices;      // all faces, sorted lists
    std::map<VertexList, int> index;        // vertex list -> simplex id

    int dim() const {
        int d = -1;
        for (const auto& s : simplices) d = std::max(d, int(s.size()) - 1);
        return d;
    }

    int id_of(const VertexList& v) const {
        auto it = index.find(v);
        return it == index.end() ? -1 : it->second;
    }

    bool contains(const VertexList& v) const { return index.count(v) > 0; }

    const VertexList& verts(int id) const { return simplices[size_t(id)]; }

    std::vector<int> simplices_of_dim(int k) const {
        std::vector<int> out;
        for (int i = 0; i < int(simplices.size()); ++i)
            if (int(simplices[i].size()) == k + 1) out.push_back(i);
        return out;
    }

    std::vector<int> top_simplices() const { return simplices_of_dim(dim()); }

    // closure under faces from a list of maximal simplices
    static AllRightComplex from_top(int num_vertices, std::vector<VertexList> top) {
        AllRightComplex P;
        P.num_vertices = num_vertices;
        std::set<VertexList> faces;
        for (auto s : top) {
            std::sort(s.begin(), s.end());
            const int n = int(s.size());
            for (int mask = 1; mask < (1 << n); ++mask) {
                VertexList f;
                for (int i = 0; i < n; ++i)
                    if (mask & (1 << i)) f.push_back(s[i]);
                faces.insert(f);
            }
        }
        for (const auto& f : faces) {
            P.index[f] = int(P.simplices.size());
            P.simplices.push_back(f);
        }
        return P;
    }

    // raw list, no closure performed; validate() reports what is missing
    static AllRightComplex from_list(int num_vertices, std::vector<VertexList> list) {
        AllRightComplex P;
        P.num_vertices = num_vertices;
        for (auto s : list) {
            std::sort(s.begin(), s.end());
            if (!P.index.count(s)) {
                P.index[s] = int(P.simplices.size());
                P.simplices.push_back(s);
            }
        }
        return P;
    }
};

struct Violation {
    std::string what;
    VertexList a, b;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

inline ValidationReport validate(const AllRightComplex& P) {
    ValidationReport rep;
    for (const auto& s : P.simplices) {
        for (int v : s)
            if (v < 0 || v >= P.num_vertices)
                rep.violations.push_back({"vertex id out of range", s, {}});
        if (std::adjacent_find(s.begin(), s.end()) != s.end())
            rep.violations.push_back({"repeated vertex in simplex", s, {}});
        // face closure
        const int n = int(s.size());
        for (int mask = 1; mask < (1 << n) - 1; ++mask) {
            VertexList f;
            for (int i = 0; i < n; ++i)
                if (mask & (1 << i)) f.push_back(s[i]);
            if (!P.contains(f)) rep.violations.push_back({"missing face", s, f});
        }
    }
    // intersection condition: any two simplices meet in a common face
    for (int i = 0; i < int(P.simplices.size()); ++i)
        for (int j = i + 1; j < int(P.simplices.size()); ++j) {
            VertexList common;
            std::set_intersection(P.simplices[i].begin(), P.simplices[i].end(),
                                  P.simplices[j].begin(), P.simplices[j].end(),
                                  std::back_inserter(common));
            if (!common.empty() && !P.contains(common))
                rep.violations.push_back(
                    {"intersection is not a common face", P.simplices[i], P.simplices[j]});
        }
    return rep;
}

// All edges of the model realization have length pi/2 (distinct unit
// coordinate vectors); exposed for completeness of the validation report.
inline bool edges_all_right(const AllRightComplex& P) {
    for (const auto& s : P.simplices)
        if (s.size() == 2 && s[0] == s[1]) return false;
    return true;
}

// simplicial link: simplices disjoint from Delta that span a simplex with it
inline AllRightComplex simplicial_link(const AllRightComplex& P, const VertexList& delta) {
    std::vector<VertexList> faces;
    for (const auto& s : P.simplices) {
        VertexList common;
        std::set_intersection(s.begin(), s.end(), delta.begin(), delta.end(),
                              std::back_inserter(common));
        if (!common.empty()) continue;
        VertexList join;
        std::set_union(s.begin(), s.end(), delta.begin(), delta.end(), std::back_inserter(join));
        if (P.contains(join)) faces.push_back(s);
    }
    AllRightComplex L = AllRightComplex::from_list(P.num_vertices, faces);
    return L;
}

// opposite face of delta in sigma (the simplicial link within one simplex)
inline VertexList opposite_face(const VertexList& sigma, const VertexList& delta) {
    VertexList out;
    std::set_difference(sigma.begin(), sigma.end(), delta.begin(), delta.end(),
                        std::back_inserter(out));
    return out;
}

// --- points ---------------------------------------------------------------

struct SpherePoint {
    int carrier = -1;  // simplex id
    Vec coords;        // nonnegative, |coords| = 1, indexed by carrier vertex order
};

// smallest simplex of P actually containing the point (strictly positive coords)
inline SpherePoint canonical_carrier(const AllRightComplex& P, const SpherePoint& x) {
    const auto& cv = P.verts(x.carrier);
    VertexList support;
    std::vector<double> vals;
    for (int i = 0; i < int(cv.size()); ++i)
        if (x.coords[i] > 1e-15) {
            support.push_back(cv[i]);
            vals.push_back(x.coords[i]);
        }
    SpherePoint out;
    out.carrier = P.id_of(support);
    out.coords = Eigen::Map<Vec>(vals.data(), long(vals.size()));
    return out;
}

// spherical star membership: carrier and delta span a simplex of P
inline bool in_star(const AllRightComplex& P, const SpherePoint& x, const VertexList& delta) {
    VertexList join;
    const auto& cv = P.verts(x.carrier);
    std::set_union(cv.begin(), cv.end(), delta.begin(), delta.end(), std::back_inserter(join));
    return P.contains(join);
}

// spherical distance from x to the subsphere spanned by delta, valid inside
// the star of delta: asin of the norm of the component away from delta.
inline double angular_distance(const AllRightComplex& P, const SpherePoint& x,
                               const VertexList& delta) {
    if (!in_star(P, x, delta))
        throw std::domain_error("angular_distance: point not in the star of the simplex");
    const auto& cv = P.verts(x.carrier);
    double away = 0.0;
    for (int i = 0; i < int(cv.size()); ++i)
        if (!std::binary_search(delta.begin(), delta.end(), cv[i]))
            away += x.coords[i] * x.coords[i];
    return std::asin(std::min(1.0, std::sqrt(away)));
}

// like angular_distance but returns pi/2 for points outside the star (no
// neighborhood of width < pi/2 reaches them)
inline double angular_distance_or_far(const AllRightComplex& P, const SpherePoint& x,
                                      const VertexList& delta) {
    if (!in_star(P, x, delta)) return kPi / 2.0;
    return angular_distance(P, x, delta);
}

// --- builtin complexes ----------------------------------------------------

// circle complex with k' segments of length pi/2
inline AllRightComplex circle_complex(int segments) {
    if (segments < 3) throw std::domain_error("circle_complex: need >= 3 segments");
    std::vector<VertexList> top;
    for (int i = 0; i < segments; ++i) top.push_back({i, (i + 1) % segments});
    return AllRightComplex::from_top(segments, top);
}

// boundary of the (m+1)-cross-polytope: the all-right triangulation of S^m.
// Vertices 2i, 2i+1 are the +-e_i pair (opposite, never adjacent).
inline AllRightComplex cross_polytope(int m) {
    const int axes = m + 1;
    std::vector<VertexList> top;
    std::vector<int> pick(axes, 0);
    for (int mask = 0; mask < (1 << axes); ++mask) {
        VertexList s;
        for (int i = 0; i < axes; ++i) s.push_back(2 * i + ((mask >> i) & 1));
        top.push_back(s);
    }
    return AllRightComplex::from_top(2 * axes, top);
}

inline AllRightComplex octahedron() { return cross_polytope(2); }
inline AllRightComplex sixteen_cell() { return cross_polytope(3); }

// suspension of an L-gon: two poles (0, 1) over an equatorial L-cycle; the
// poles have links of length L pi/2, the equator vertices links of length
// 2 pi. For L = 4 this is the octahedron up to relabeling.
inline AllRightComplex bipyramid(int L) {
    if (L < 3) throw std::domain_error("bipyramid: need L >= 3");
    std::vector<VertexList> top;
    for (int i = 0; i < L; ++i) {
        const int a = 2 + i, b = 2 + (i + 1) % L;
        top.push_back({0, a, b});
        top.push_back({1, a, b});
    }
    return AllRightComplex::from_top(L + 2, top);
}

// length of the link circle of a vertex in a 2-complex, in units of pi/2
inline int link_length(const AllRightComplex& P, int vertex) {
    const auto L = simplicial_link(P, {vertex});
    int edges = 0;
    for (const auto& s : L.simplices)
        if (s.size() == 2) ++edges;
    return edges;
}

// --- sampling ---------------------------------------------------------------

// uniform point in a given top simplex: absolute values of a Gaussian vector
inline SpherePoint sample_in_simplex(const AllRightComplex& P, int simplex, std::mt19937_64& rng) {
    std::normal_distribution<double> N(0.0, 1.0);
    const int n = int(P.verts(simplex).size());
    Vec v(n);
    for (int i = 0; i < n; ++i) v[i] = std::abs(N(rng));
    v.normalize();
    SpherePoint x;
    x.carrier = simplex;
    x.coords = v;
    return x;
}

}  // namespace conesmooth
