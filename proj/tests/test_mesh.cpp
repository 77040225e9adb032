#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "dgns/mesh.hpp"
#include "dgns/mesh_gen.hpp"

using namespace dgns;

namespace {

Mesh two_triangle_periodic_square() {
    std::istringstream in(
        "4 2 4\n"
        "0 0\n1 0\n1 1\n0 1\n"
        "0 1 2\n0 2 3\n"
        "0 1 bottom\n1 2 right\n2 3 top\n3 0 left\n");
    return read_native_mesh(in, unit_square_periodic_tags(), true, true);
}

}  // namespace

TEST_CASE("two-triangle periodic unit square") {
    Mesh mesh = two_triangle_periodic_square();
    CHECK(mesh.n_cells() == 2);
    CHECK(mesh.interior_edges.size() == 1);  // the diagonal
    CHECK(mesh.boundary_edges.size() == 4);
    CHECK(mesh.periodic_pairs.size() == 2);
    CHECK(mesh.faces.size() == 3);
    CHECK(mesh.total_area() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("single wall triangle") {
    TagTable tags;
    tags["wall"] = {"wall", BcKind::adiabatic_wall, {}};
    std::istringstream in(
        "3 1 3\n"
        "0 0\n1 0\n0 1\n"
        "0 1 2\n"
        "0 1 wall\n1 2 wall\n2 0 wall\n");
    Mesh mesh = read_native_mesh(in, tags, true, true);
    CHECK(mesh.interior_edges.empty());
    CHECK(mesh.boundary_edges.size() == 3);
    CHECK(mesh.cell_area[0] == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("clockwise triangle is reoriented") {
    TagTable tags;
    tags["wall"] = {"wall", BcKind::adiabatic_wall, {}};
    std::istringstream in(
        "3 1 3\n"
        "0 0\n1 0\n0 1\n"
        "0 2 1\n"  // clockwise
        "0 1 wall\n1 2 wall\n2 0 wall\n");
    Mesh mesh = read_native_mesh(in, tags, true, true);
    CHECK(mesh.cell_area[0] > 0);
    const auto& c = mesh.cells[0];
    const Vec2 a = mesh.vertices[c[0]], b = mesh.vertices[c[1]], d = mesh.vertices[c[2]];
    CHECK((b.x - a.x) * (d.y - a.y) - (d.x - a.x) * (b.y - a.y) > 0);
}

TEST_CASE("inscribed diameter closed forms") {
    CHECK(inscribed_diameter({0, 0}, {1, 0}, {0, 1}) == doctest::Approx(2.0 / (2.0 + std::sqrt(2.0))));
    const double s3 = std::sqrt(3.0) / 2.0;
    CHECK(inscribed_diameter({0, 0}, {1, 0}, {0.5, s3}) == doctest::Approx(1.0 / std::sqrt(3.0)));
    // similarity: scaling by s scales the diameter by s
    const double d1 = inscribed_diameter({0.3, 0.2}, {1.1, 0.4}, {0.5, 1.3});
    const double d2 = inscribed_diameter({0.9, 0.6}, {3.3, 1.2}, {1.5, 3.9});
    CHECK(d2 == doctest::Approx(3.0 * d1).epsilon(1e-13));
    CHECK_THROWS_AS(inscribed_diameter({0, 0}, {1, 0}, {2, 0}), SolverError);
}

TEST_CASE("mesh error paths") {
    TagTable tags;
    tags["wall"] = {"wall", BcKind::adiabatic_wall, {}};
    SUBCASE("untagged boundary edge") {
        std::istringstream in("3 1 1\n0 0\n1 0\n0 1\n0 1 2\n0 1 wall\n");
        CHECK_THROWS_WITH_AS(read_native_mesh(in, tags, true, true),
                             doctest::Contains("untagged boundary edge"), SolverError);
    }
    SUBCASE("edge shared by more than two cells") {
        std::istringstream in(
            "5 3 0\n0 0\n1 0\n0 1\n1 1\n-1 1\n"
            "0 1 2\n1 3 2\n0 2 4\n");
        // edge (0,2) belongs to cells 0 and 2; also add a duplicate of cell 0
        std::istringstream in2(
            "5 4 0\n0 0\n1 0\n0 1\n1 1\n-1 1\n"
            "0 1 2\n1 3 2\n0 2 4\n0 1 2\n");
        CHECK_THROWS_WITH_AS(read_native_mesh(in2, tags, true, true),
                             doctest::Contains("more than two cells"), SolverError);
    }
    SUBCASE("degenerate cell") {
        std::istringstream in("3 1 0\n0 0\n1 0\n2 0\n0 1 2\n");
        CHECK_THROWS_AS(read_native_mesh(in, tags, true, true), SolverError);
    }
    SUBCASE("unmatched periodic edge") {
        TagTable ptags = unit_square_periodic_tags();
        // right side split in two, left side one edge: lengths differ
        std::istringstream in(
            "5 3 5\n0 0\n1 0\n1 0.5\n1 1\n0 1\n"
            "0 1 2\n0 2 4\n2 3 4\n"
            "0 1 bottom\n1 2 right\n2 3 right\n3 4 top\n4 0 left\n");
        CHECK_THROWS_AS(read_native_mesh(in, ptags, true, true), SolverError);
    }
}

TEST_CASE("periodic pairing on the generated family") {
    const TagTable tags = unit_square_periodic_tags();
    Mesh mesh = unit_square_mesh(0, tags, 0);
    CHECK(mesh.n_cells() == 50);
    CHECK(mesh.periodic_pairs.size() == 10);  // 5 x-pairs + 5 y-pairs
    for (const auto& pp : mesh.periodic_pairs) {
        const auto& ea = mesh.boundary_edges[pp.edge_a];
        const auto& eb = mesh.boundary_edges[pp.edge_b];
        CHECK(ea.length == doctest::Approx(eb.length).epsilon(1e-12));
    }
}

TEST_CASE("mesh invariants on generated meshes") {
    const TagTable tags = unit_square_periodic_tags();
    for (int level : {0, 1}) {
        Mesh mesh = unit_square_mesh(level, tags, 7);
        CHECK(mesh.total_area() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(mesh.min_diameter() > 0);
        for (const auto& e : mesh.interior_edges) {
            CHECK(e.h_e ==
                  doctest::Approx(0.5 * (mesh.cell_diameter[e.left_cell] + mesh.cell_diameter[e.right_cell]))
                      .epsilon(1e-14));
        }
        // interior-face normals: outward from left = negative of outward from right
        for (const auto& f : mesh.faces) {
            if (f.boundary() || f.shift.norm() > 0) continue;
            const auto rc = mesh.cells[f.right_cell];
            const int a = rc[f.right_local], b = rc[(f.right_local + 1) % 3];
            Vec2 t = mesh.vertices[b] - mesh.vertices[a];
            const double len = t.norm();
            const Vec2 n_right{t.y / len, -t.x / len};
            CHECK(std::abs(n_right.x + f.normal.x) < 1e-14);
            CHECK(std::abs(n_right.y + f.normal.y) < 1e-14);
        }
    }
}

TEST_CASE("bit-exact reload of a saved mesh") {
    const TagTable tags = unit_square_periodic_tags();
    Mesh mesh = unit_square_mesh(1, tags, 3);
    std::ostringstream out;
    save_native_mesh(mesh, out);
    std::istringstream in(out.str());
    Mesh again = read_native_mesh(in, tags, true, true);
    CHECK(again.min_diameter() == mesh.min_diameter());  // bitwise
    CHECK(again.total_area() == mesh.total_area());
}

TEST_CASE("gmsh 2.2 reader") {
    TagTable tags;
    tags["wall"] = {"wall", BcKind::adiabatic_wall, {}};
    tags["far"] = {"far", BcKind::inflow_farfield, {}};
    std::istringstream in(
        "$MeshFormat\n2.2 0 8\n$EndMeshFormat\n"
        "$PhysicalNames\n2\n1 1 \"wall\"\n1 2 \"far\"\n$EndPhysicalNames\n"
        "$Nodes\n4\n1 0 0 0\n2 1 0 0\n3 1 1 0\n4 0 1 0\n$EndNodes\n"
        "$Elements\n6\n"
        "1 1 2 1 1 1 2\n"
        "2 1 2 1 1 2 3\n"
        "3 1 2 2 2 3 4\n"
        "4 1 2 2 2 4 1\n"
        "5 2 2 0 0 1 2 3\n"
        "6 2 2 0 0 1 3 4\n"
        "$EndElements\n");
    Mesh mesh = read_gmsh_mesh(in, tags, true, true);
    CHECK(mesh.n_cells() == 2);
    CHECK(mesh.boundary_edges.size() == 4);
    int walls = 0;
    for (const auto& e : mesh.boundary_edges)
        if (mesh.tags[e.tag].name == "wall") ++walls;
    CHECK(walls == 2);
}

TEST_CASE("plate and cylinder generators approximate the target sizes") {
    Mesh plate = plate_mesh(PlateMeshSpec{}, plate_tags());
    CHECK(plate.n_cells() == 2 * (52 + 32) * 20);
    int on_plate = 0;
    for (const auto& e : plate.boundary_edges)
        if (plate.tags[e.tag].name == "plate") ++on_plate;
    CHECK(on_plate == 32);

    Mesh cyl = cylinder_mesh(CylinderMeshSpec{}, cylinder_tags());
    CHECK(cyl.n_cells() == 2 * 41 * 40);
    int on_cyl = 0;
    for (const auto& e : cyl.boundary_edges)
        if (cyl.tags[e.tag].name == "cylinder") ++on_cyl;
    CHECK(on_cyl == 41);
}
