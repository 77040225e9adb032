#include "dgns/mesh_gen.hpp"

#include <cmath>
#include <vector>

namespace dgns {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

double unit_hash(std::uint64_t seed, std::uint64_t i, std::uint64_t j, std::uint64_t axis) {
    const std::uint64_t h = splitmix64(seed ^ splitmix64(i ^ splitmix64(j ^ splitmix64(axis))));
    return static_cast<double>(h >> 11) * (1.0 / 9007199254740992.0);  // [0,1)
}

/// Triangulates a logically Cartesian vertex grid, splitting each quad by
/// its shorter diagonal. grid(i,j) gives the vertex id, i=0..nx, j=0..ny.
template <class GridFn>
void split_quads(Mesh& mesh, int nx, int ny, GridFn grid) {
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            const int v00 = grid(i, j), v10 = grid(i + 1, j);
            const int v01 = grid(i, j + 1), v11 = grid(i + 1, j + 1);
            const double d0 = (mesh.vertices[v00] - mesh.vertices[v11]).norm();
            const double d1 = (mesh.vertices[v10] - mesh.vertices[v01]).norm();
            if (d0 <= d1) {
                mesh.cells.push_back({v00, v10, v11});
                mesh.cells.push_back({v00, v11, v01});
            } else {
                mesh.cells.push_back({v00, v10, v01});
                mesh.cells.push_back({v10, v11, v01});
            }
        }
    }
}

void tag_segment(Mesh& mesh, int a, int b, const std::string& name) {
    mesh.tagged_edges[{std::min(a, b), std::max(a, b)}] = name;
}

}  // namespace

double geometric_ratio(double dx0, double total, int n) {
    if (n * dx0 >= total) return 1.0;  // uniform or shrinking not supported; clamp
    double lo = 1.0 + 1e-12, hi = 4.0;
    auto sum = [&](double r) { return dx0 * (std::pow(r, n) - 1.0) / (r - 1.0); };
    while (sum(hi) < total) hi *= 2;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (sum(mid) < total ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

TagTable unit_square_periodic_tags() {
    TagTable t;
    t["left"] = {"left", BcKind::periodic, {1, 0}};
    t["right"] = {"right", BcKind::periodic, {-1, 0}};
    t["bottom"] = {"bottom", BcKind::periodic, {0, 1}};
    t["top"] = {"top", BcKind::periodic, {0, -1}};
    return t;
}

Mesh unit_square_mesh(int level, const TagTable& tags, std::uint64_t seed) {
    if (level < 0 || level > 8) throw SolverError("unit_square_mesh: level out of range");
    const int n = 5 << level;
    const double h = 1.0 / n;
    Mesh mesh;
    mesh.vertices.resize((n + 1) * (n + 1));
    auto vid = [n](int i, int j) { return j * (n + 1) + i; };
    for (int j = 0; j <= n; ++j) {
        for (int i = 0; i <= n; ++i) {
            Vec2 p{i * h, j * h};
            if (i > 0 && i < n && j > 0 && j < n) {
                // Interior jitter, at most 0.28 h per axis, keeps all cells valid.
                p.x += (unit_hash(seed, i, j, 0) - 0.5) * 0.56 * h;
                p.y += (unit_hash(seed, i, j, 1) - 0.5) * 0.56 * h;
            }
            mesh.vertices[vid(i, j)] = p;
        }
    }
    split_quads(mesh, n, n, vid);
    for (int i = 0; i < n; ++i) {
        tag_segment(mesh, vid(i, 0), vid(i + 1, 0), "bottom");
        tag_segment(mesh, vid(i, n), vid(i + 1, n), "top");
        tag_segment(mesh, vid(0, i), vid(0, i + 1), "left");
        tag_segment(mesh, vid(n, i), vid(n, i + 1), "right");
    }
    for (const auto& [name, tag] : tags) {
        BoundaryTag t = tag;
        t.name = name;
        mesh.tags.push_back(t);
    }
    mesh.finalize();
    return mesh;
}

TagTable plate_tags() {
    TagTable t;
    t["inlet"] = {"inlet", BcKind::inflow_farfield, {}};
    t["top"] = {"top", BcKind::inflow_farfield, {}};
    t["outlet"] = {"outlet", BcKind::outflow, {}};
    t["symmetry"] = {"symmetry", BcKind::symmetry_plane, {}};
    t["plate"] = {"plate", BcKind::adiabatic_wall, {}};
    return t;
}

Mesh plate_mesh(const PlateMeshSpec& spec, const TagTable& tags) {
    // x stations: geometric clustering toward the leading edge x=0 from
    // both sides; y stations clustered toward the wall y=0.
    std::vector<double> xs;
    {
        const double rup = geometric_ratio(spec.dx_le, 1.0, spec.n_upstream);
        std::vector<double> up(spec.n_upstream + 1, 0.0);
        double dx = spec.dx_le, x = 0.0;
        for (int i = 1; i <= spec.n_upstream; ++i) {
            x += dx;
            up[i] = -x;
            dx *= rup;
        }
        up.back() = -1.0;
        for (int i = spec.n_upstream; i >= 1; --i) xs.push_back(up[i]);
        xs.push_back(0.0);
        const double rpl = geometric_ratio(spec.dx_le, 1.0, spec.n_plate);
        dx = spec.dx_le;
        x = 0.0;
        for (int i = 1; i <= spec.n_plate; ++i) {
            x += dx;
            xs.push_back(i == spec.n_plate ? 1.0 : x);
            dx *= rpl;
        }
    }
    std::vector<double> ys(spec.n_y + 1, 0.0);
    {
        const double ry = geometric_ratio(spec.dy_wall, 1.0, spec.n_y);
        double dy = spec.dy_wall, y = 0.0;
        for (int j = 1; j <= spec.n_y; ++j) {
            y += dy;
            ys[j] = (j == spec.n_y) ? 1.0 : y;
            dy *= ry;
        }
    }
    const int nx = static_cast<int>(xs.size()) - 1;
    const int ny = spec.n_y;
    Mesh mesh;
    mesh.vertices.resize((nx + 1) * (ny + 1));
    auto vid = [nx](int i, int j) { return j * (nx + 1) + i; };
    for (int j = 0; j <= ny; ++j)
        for (int i = 0; i <= nx; ++i) mesh.vertices[vid(i, j)] = {xs[i], ys[j]};
    split_quads(mesh, nx, ny, vid);
    for (int j = 0; j < ny; ++j) {
        tag_segment(mesh, vid(0, j), vid(0, j + 1), "inlet");
        tag_segment(mesh, vid(nx, j), vid(nx, j + 1), "outlet");
    }
    for (int i = 0; i < nx; ++i) {
        tag_segment(mesh, vid(i, ny), vid(i + 1, ny), "top");
        const bool on_plate = xs[i] >= -1e-14;
        tag_segment(mesh, vid(i, 0), vid(i + 1, 0), on_plate ? "plate" : "symmetry");
    }
    for (const auto& [name, tag] : tags) {
        BoundaryTag t = tag;
        t.name = name;
        mesh.tags.push_back(t);
    }
    mesh.finalize();
    return mesh;
}

TagTable cylinder_tags() {
    TagTable t;
    t["cylinder"] = {"cylinder", BcKind::adiabatic_wall, {}};
    t["farfield"] = {"farfield", BcKind::inflow_farfield, {}};
    return t;
}

Mesh cylinder_mesh(const CylinderMeshSpec& spec, const TagTable& tags) {
    const int nt = spec.n_theta, nr = spec.n_radial;
    std::vector<double> radii(nr + 1);
    radii[0] = spec.radius;
    const double rr = geometric_ratio(spec.dr_wall, spec.outer - spec.radius, nr);
    double dr = spec.dr_wall;
    for (int i = 1; i <= nr; ++i) {
        radii[i] = (i == nr) ? spec.outer : radii[i - 1] + dr;
        dr *= rr;
    }
    Mesh mesh;
    mesh.vertices.resize(nt * (nr + 1));
    auto vid = [nt](int i, int j) { return j * nt + (i % nt); };
    for (int j = 0; j <= nr; ++j) {
        for (int i = 0; i < nt; ++i) {
            const double th = 2.0 * M_PI * i / nt;
            mesh.vertices[vid(i, j)] = {radii[j] * std::cos(th), radii[j] * std::sin(th)};
        }
    }
    split_quads(mesh, nt, nr, vid);
    for (int i = 0; i < nt; ++i) {
        tag_segment(mesh, vid(i, 0), vid(i + 1, 0), "cylinder");
        tag_segment(mesh, vid(i, nr), vid(i + 1, nr), "farfield");
    }
    for (const auto& [name, tag] : tags) {
        BoundaryTag t = tag;
        t.name = name;
        mesh.tags.push_back(t);
    }
    mesh.finalize();
    return mesh;
}

}  // namespace dgns
