#include <catch2/catch_amalgamated.hpp>

#include "conesmooth/cubify.hpp"

using namespace conesmooth;

TEST_CASE("segment splits into 2 segments") {
    const auto C = cubify(standalone_simplex(1));
    CHECK(C.cube_dim == 1);
    CHECK(C.cubes.size() == 2);
    const auto rep = validate_cubification(C, false);
    CHECK(rep.face_counts[0] == 3);  // two endpoints + midpoint
    CHECK(rep.face_counts[1] == 2);
}

TEST_CASE("triangle splits into 3 quadrilaterals") {
    const auto C = cubify(standalone_simplex(2));
    CHECK(C.cubes.size() == 3);
    const auto rep = validate_cubification(C, false);
    // vertices: 3 corners + 3 edge midpoints + 1 barycenter
    CHECK(rep.face_counts[0] == 7);
    CHECK(rep.face_counts[1] == 9);
    CHECK(rep.face_counts[2] == 3);
    CHECK(rep.euler == 1);  // a disk
}

TEST_CASE("tetrahedron splits into 4 cubes") {
    const auto C = cubify(standalone_simplex(3));
    CHECK(C.cubes.size() == 4);
    const auto rep = validate_cubification(C, false);
    // faces of the source simplex: 4 + 6 + 4 + 1 = 15 cube vertices
    CHECK(rep.face_counts[0] == 15);
    CHECK(rep.euler == 1);  // a ball
}

TEST_CASE("octahedral sphere: 24 squares, Euler characteristic 2, edge-manifold") {
    const auto C = cubify(octahedron());
    CHECK(C.cubes.size() == 8 * 3);
    const auto rep = validate_cubification(C, true);
    CHECK(rep.face_counts[0] == 6 + 12 + 8);
    CHECK(rep.face_counts[2] == 24);
    CHECK(rep.euler == 2);
    CHECK(rep.edge_manifold);
}

TEST_CASE("bipyramid sphere cubifies consistently") {
    const auto C = cubify(bipyramid(5));
    CHECK(C.cubes.size() == 10 * 3);
    const auto rep = validate_cubification(C, true);
    CHECK(rep.euler == 2);
    CHECK(rep.edge_manifold);
}

TEST_CASE("16-cell: cubification of a closed 3-manifold") {
    const auto C = cubify(sixteen_cell());
    CHECK(C.cubes.size() == 16 * 4);
    const auto rep = validate_cubification(C, true);
    CHECK(rep.euler == 0);  // odd-dimensional closed manifold
    CHECK(rep.edge_manifold);
}
