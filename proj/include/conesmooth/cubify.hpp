#pragma once

// Cubification of a simplicial complex: each n-simplex splits into n+1
// combinatorial n-cubes via the radial projection of the cube faces
// {x in [0,1]^{n+1} : x_i = 1 for some i} onto the simplex. Concretely the
// cube attached to (simplex sigma, vertex v) has one vertex per face tau with
// v in tau <= sigma, placed at the barycenter of tau; shared faces of
// adjacent simplices produce identical cubes, so the gluing is consistent
// and S_{n+1}-equivariant.

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "conesmooth/complex.hpp"

namespace conesmooth {

struct CubeComplex {
    // one vertex per face of the source complex
    std::vector<VertexList> vertex_faces;
    // each n-cube as 2^n vertex ids, position indexed by the axis bitmask
    std::vector<std::vector<int>> cubes;
    int cube_dim = 0;

    int num_vertices() const { return int(vertex_faces.size()); }
};

inline CubeComplex cubify(const AllRightComplex& S) {
    CubeComplex C;
    C.cube_dim = S.dim();
    std::map<VertexList, int> face_id;
    auto vid = [&](const VertexList& f) {
        auto it = face_id.find(f);
        if (it != face_id.end()) return it->second;
        const int id = int(C.vertex_faces.size());
        face_id[f] = id;
        C.vertex_faces.push_back(f);
        return id;
    };

    for (int top : S.top_simplices()) {
        const VertexList& sigma = S.verts(top);
        const int n = int(sigma.size()) - 1;
        for (int pick = 0; pick <= n; ++pick) {
            const int v = sigma[pick];
            VertexList axes;  // sigma minus v, the cube axes
            for (int w : sigma)
                if (w != v) axes.push_back(w);
            std::vector<int> cube(size_t(1) << n);
            for (int mask = 0; mask < (1 << n); ++mask) {
                VertexList tau{v};
                for (int i = 0; i < n; ++i)
                    if (mask & (1 << i)) tau.push_back(axes[size_t(i)]);
                std::sort(tau.begin(), tau.end());
                cube[size_t(mask)] = vid(tau);
            }
            C.cubes.push_back(std::move(cube));
        }
    }
    return C;
}

// All d-dimensional faces of the cubes, as canonical sorted vertex-id sets.
inline std::set<std::vector<int>> cube_faces(const CubeComplex& C, int d) {
    std::set<std::vector<int>> out;
    const int n = C.cube_dim;
    if (d < 0 || d > n) return out;
    for (const auto& cube : C.cubes) {
        // choose free axes F (|F| = d), fix the rest to 0/1
        for (int free = 0; free < (1 << n); ++free) {
            if (__builtin_popcount(unsigned(free)) != d) continue;
            const int fixed_axes = ((1 << n) - 1) & ~free;
            for (int fixed = 0;; fixed = (fixed - fixed_axes) & fixed_axes) {
                std::vector<int> face;
                for (int mask = 0; mask < (1 << n); ++mask)
                    if ((mask & fixed_axes) == fixed) face.push_back(cube[size_t(mask)]);
                std::sort(face.begin(), face.end());
                out.insert(face);
                if (fixed == fixed_axes) break;
            }
        }
    }
    return out;
}

struct CubeValidation {
    std::vector<long> face_counts;  // per dimension 0..n
    long euler = 0;
    bool edge_manifold = true;  // every (n-1)-face shared by exactly two cubes
    bool ok = true;
};

inline CubeValidation validate_cubification(const CubeComplex& C, bool closed_manifold) {
    CubeValidation rep;
    const int n = C.cube_dim;
    for (int d = 0; d <= n; ++d) {
        const auto faces = cube_faces(C, d);
        rep.face_counts.push_back(long(faces.size()));
        rep.euler += (d % 2 == 0 ? 1 : -1) * long(faces.size());
    }
    if (closed_manifold && n >= 1) {
        std::map<std::vector<int>, int> facet_use;
        for (const auto& cube : C.cubes) {
            for (int axis = 0; axis < n; ++axis) {
                for (int side = 0; side < 2; ++side) {
                    std::vector<int> facet;
                    for (int mask = 0; mask < (1 << n); ++mask)
                        if (((mask >> axis) & 1) == side) facet.push_back(cube[size_t(mask)]);
                    std::sort(facet.begin(), facet.end());
                    facet_use[facet]++;
                }
            }
        }
        for (const auto& [facet, uses] : facet_use)
            if (uses != 2) rep.edge_manifold = false;
    }
    rep.ok = !closed_manifold || rep.edge_manifold;
    return rep;
}

// the standalone simplex Delta^n as a complex (one top simplex)
inline AllRightComplex standalone_simplex(int n) {
    VertexList top(size_t(n) + 1);
    for (int i = 0; i <= n; ++i) top[size_t(i)] = i;
    return AllRightComplex::from_top(n + 1, {top});
}

}  // namespace conesmooth
