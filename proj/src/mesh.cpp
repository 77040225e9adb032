#include "dgns/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

namespace dgns {

BcKind bc_kind_from_string(const std::string& s) {
    if (s == "periodic") return BcKind::periodic;
    if (s == "inflow_farfield" || s == "farfield" || s == "inflow") return BcKind::inflow_farfield;
    if (s == "outflow") return BcKind::outflow;
    if (s == "adiabatic_wall" || s == "wall") return BcKind::adiabatic_wall;
    if (s == "symmetry_plane" || s == "symmetry") return BcKind::symmetry_plane;
    throw SolverError("unknown boundary kind '" + s + "'");
}

std::string to_string(BcKind k) {
    switch (k) {
        case BcKind::periodic: return "periodic";
        case BcKind::inflow_farfield: return "inflow_farfield";
        case BcKind::outflow: return "outflow";
        case BcKind::adiabatic_wall: return "adiabatic_wall";
        case BcKind::symmetry_plane: return "symmetry_plane";
    }
    return "?";
}

double inscribed_diameter(const Vec2& a, const Vec2& b, const Vec2& c) {
    const double area2 = (b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y);
    const double per = (b - a).norm() + (c - b).norm() + (a - c).norm();
    const double area = 0.5 * std::abs(area2);
    if (!(area > 0) || !(per > 0)) throw SolverError("degenerate triangle in inscribed_diameter");
    return 4.0 * area / per;
}

double Mesh::min_diameter() const {
    double h = std::numeric_limits<double>::infinity();
    for (double d : cell_diameter) h = std::min(h, d);
    return h;
}

double Mesh::total_area() const {
    double s = 0;
    for (double a : cell_area) s += a;
    return s;
}

std::array<Vec2, 2> Mesh::bounding_box() const {
    Vec2 lo{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
    Vec2 hi{-lo.x, -lo.y};
    for (const auto& v : vertices) {
        lo.x = std::min(lo.x, v.x);
        lo.y = std::min(lo.y, v.y);
        hi.x = std::max(hi.x, v.x);
        hi.y = std::max(hi.y, v.y);
    }
    return {lo, hi};
}

std::array<Vec2, 3> Mesh::cell_coords(int c) const {
    return {vertices[cells[c][0]], vertices[cells[c][1]], vertices[cells[c][2]]};
}

namespace {

double signed_area2(const Vec2& a, const Vec2& b, const Vec2& c) {
    return (b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y);
}

std::pair<int, int> sorted_pair(int a, int b) { return {std::min(a, b), std::max(a, b)}; }

}  // namespace

void Mesh::finalize(bool require_tags, bool pair_periodic) {
    if (cells.empty()) throw SolverError("mesh has no cells");

    // Drop unreferenced vertices.
    std::vector<int> remap(vertices.size(), -1);
    int nv = 0;
    for (const auto& cell : cells)
        for (int v : cell)
            if (remap[v] < 0) remap[v] = nv++;
    if (nv < static_cast<int>(vertices.size())) {
        std::vector<Vec2> packed(nv);
        for (size_t i = 0; i < vertices.size(); ++i)
            if (remap[i] >= 0) packed[remap[i]] = vertices[i];
        vertices = std::move(packed);
        for (auto& cell : cells)
            for (int& v : cell) v = remap[v];
        std::map<std::pair<int, int>, std::string> retag;
        for (const auto& [pr, name] : tagged_edges) {
            if (remap[pr.first] < 0 || remap[pr.second] < 0)
                throw SolverError("tagged edge references an unused vertex");
            retag[sorted_pair(remap[pr.first], remap[pr.second])] = name;
        }
        tagged_edges = std::move(retag);
    }

    // Enforce counterclockwise orientation.
    cell_area.assign(cells.size(), 0.0);
    cell_diameter.assign(cells.size(), 0.0);
    for (size_t c = 0; c < cells.size(); ++c) {
        auto& cell = cells[c];
        double a2 = signed_area2(vertices[cell[0]], vertices[cell[1]], vertices[cell[2]]);
        if (a2 == 0.0) throw SolverError("cell " + std::to_string(c) + " is degenerate");
        if (a2 < 0) {
            std::swap(cell[1], cell[2]);
            a2 = -a2;
        }
        cell_area[c] = 0.5 * a2;
        cell_diameter[c] = inscribed_diameter(vertices[cell[0]], vertices[cell[1]], vertices[cell[2]]);
    }

    // Edge incidence.
    struct Incidence {
        int count = 0;
        int cell[2] = {-1, -1};
        int local[2] = {-1, -1};
    };
    std::map<std::pair<int, int>, Incidence> edge_map;
    for (size_t c = 0; c < cells.size(); ++c) {
        for (int le = 0; le < 3; ++le) {
            const int a = cells[c][le], b = cells[c][(le + 1) % 3];
            auto& inc = edge_map[sorted_pair(a, b)];
            if (inc.count >= 2)
                throw SolverError("edge (" + std::to_string(a) + "," + std::to_string(b) +
                                  ") shared by more than two cells");
            inc.cell[inc.count] = static_cast<int>(c);
            inc.local[inc.count] = le;
            ++inc.count;
        }
    }

    interior_edges.clear();
    boundary_edges.clear();
    auto edge_normal = [&](int v0, int v1) {
        Vec2 t = vertices[v1] - vertices[v0];
        const double len = t.norm();
        return std::make_pair(Vec2{t.y / len, -t.x / len}, len);
    };

    // Deterministic edge ordering: walk cells in index order.
    std::map<std::pair<int, int>, int> visited;  // sorted pair -> assigned edge slot (-2 done)
    for (size_t c = 0; c < cells.size(); ++c) {
        for (int le = 0; le < 3; ++le) {
            const int a = cells[c][le], b = cells[c][(le + 1) % 3];
            const auto key = sorted_pair(a, b);
            if (visited.count(key)) continue;
            visited[key] = 1;
            const auto& inc = edge_map[key];
            if (inc.count == 2) {
                InteriorEdge e;
                e.left_cell = inc.cell[0];
                e.left_local = inc.local[0];
                e.right_cell = inc.cell[1];
                e.right_local = inc.local[1];
                e.v0 = cells[e.left_cell][e.left_local];
                e.v1 = cells[e.left_cell][(e.left_local + 1) % 3];
                std::tie(e.normal, e.length) = edge_normal(e.v0, e.v1);
                e.h_e = 0.5 * (cell_diameter[e.left_cell] + cell_diameter[e.right_cell]);
                interior_edges.push_back(e);
            } else {
                BoundaryEdge e;
                e.cell = inc.cell[0];
                e.local_edge = inc.local[0];
                e.v0 = cells[e.cell][e.local_edge];
                e.v1 = cells[e.cell][(e.local_edge + 1) % 3];
                std::tie(e.normal, e.length) = edge_normal(e.v0, e.v1);
                e.h_e = cell_diameter[e.cell];
                auto it = tagged_edges.find(key);
                if (it == tagged_edges.end()) {
                    if (require_tags)
                        throw SolverError("untagged boundary edge (" + std::to_string(e.v0) + "," +
                                          std::to_string(e.v1) + ")");
                    e.tag = -1;
                } else {
                    int ti = -1;
                    for (size_t k = 0; k < tags.size(); ++k)
                        if (tags[k].name == it->second) ti = static_cast<int>(k);
                    if (ti < 0) {
                        if (require_tags)
                            throw SolverError("boundary tag '" + it->second + "' not in tag table");
                    }
                    e.tag = ti;
                }
                boundary_edges.push_back(e);
            }
        }
    }

    // Tagged edges that are not boundary edges indicate a broken file.
    for (const auto& [pr, name] : tagged_edges) {
        auto it = edge_map.find(pr);
        if (it == edge_map.end())
            throw SolverError("tagged edge (" + std::to_string(pr.first) + "," +
                              std::to_string(pr.second) + ") does not exist in the mesh");
        if (it->second.count != 1)
            throw SolverError("tag '" + name + "' placed on an interior edge");
    }

    // Closed-polygon check per cell: the outward normals weighted by edge
    // length must sum to zero.
    for (size_t c = 0; c < cells.size(); ++c) {
        Vec2 s{0, 0};
        double per = 0;
        for (int le = 0; le < 3; ++le) {
            const int a = cells[c][le], b = cells[c][(le + 1) % 3];
            auto [n, len] = edge_normal(a, b);
            s += n * len;
            per += len;
        }
        if (s.norm() > 1e-13 * per)
            throw SolverError("cell " + std::to_string(c) + " fails the closed-polygon normal check");
    }

    // Periodic pairing.
    periodic_pairs.clear();
    std::vector<int> partner(boundary_edges.size(), -1);
    if (pair_periodic) {
        const auto bb = bounding_box();
        const double tol = 1e-10 * (bb[1] - bb[0]).norm();
        for (size_t i = 0; i < boundary_edges.size(); ++i) {
            const auto& e = boundary_edges[i];
            if (e.tag < 0 || tags[e.tag].kind != BcKind::periodic) continue;
            const Vec2 shift = tags[e.tag].periodic_shift;
            // Canonical owner side: positive shift direction.
            if (!(shift.x > tol || (std::abs(shift.x) <= tol && shift.y > tol))) continue;
            const Vec2 ta = vertices[e.v0] + shift;
            const Vec2 tb = vertices[e.v1] + shift;
            int found = -1;
            for (size_t j = 0; j < boundary_edges.size(); ++j) {
                if (j == i) continue;
                const auto& f = boundary_edges[j];
                if (f.tag < 0 || tags[f.tag].kind != BcKind::periodic) continue;
                const Vec2 fa = vertices[f.v0], fb = vertices[f.v1];
                const bool fwd = (fa - ta).norm() < tol && (fb - tb).norm() < tol;
                const bool rev = (fa - tb).norm() < tol && (fb - ta).norm() < tol;
                if (fwd || rev) {
                    if (found >= 0)
                        throw SolverError("ambiguous periodic match for boundary edge " + std::to_string(i));
                    found = static_cast<int>(j);
                }
            }
            if (found < 0)
                throw SolverError("no periodic counterpart for boundary edge " + std::to_string(i) +
                                  " under shift (" + std::to_string(shift.x) + "," +
                                  std::to_string(shift.y) + ")");
            const auto& f = boundary_edges[found];
            if ((tags[f.tag].periodic_shift + shift).norm() > 1e-12)
                throw SolverError("periodic tags '" + tags[e.tag].name + "' and '" + tags[f.tag].name +
                                  "' do not carry negated shifts");
            if (std::abs(e.length - f.length) > 1e-12 * std::max(1.0, e.length))
                throw SolverError("periodic edge pair has mismatched lengths");
            partner[i] = found;
            partner[found] = static_cast<int>(i);
            periodic_pairs.push_back({static_cast<int>(i), found, shift});
        }
        for (size_t i = 0; i < boundary_edges.size(); ++i) {
            const auto& e = boundary_edges[i];
            if (e.tag >= 0 && tags[e.tag].kind == BcKind::periodic && partner[i] < 0)
                throw SolverError("periodic boundary edge " + std::to_string(i) + " was never paired");
        }
    }

    // Assembly face list: interior edges, merged periodic pairs, BC edges.
    faces.clear();
    for (const auto& e : interior_edges) {
        Face f;
        f.left_cell = e.left_cell;
        f.left_local = e.left_local;
        f.right_cell = e.right_cell;
        f.right_local = e.right_local;
        // Two CCW cells traverse a shared edge in opposite directions.
        f.right_reversed = true;
        f.normal = e.normal;
        f.length = e.length;
        f.h_e = e.h_e;
        f.p0 = vertices[e.v0];
        f.p1 = vertices[e.v1];
        faces.push_back(f);
    }
    for (const auto& pp : periodic_pairs) {
        const auto& ea = boundary_edges[pp.edge_a];
        const auto& eb = boundary_edges[pp.edge_b];
        Face f;
        f.left_cell = ea.cell;
        f.left_local = ea.local_edge;
        f.right_cell = eb.cell;
        f.right_local = eb.local_edge;
        const auto bb = bounding_box();
        const double tol = 1e-10 * (bb[1] - bb[0]).norm();
        f.right_reversed = (vertices[eb.v0] - (vertices[ea.v1] + pp.shift)).norm() < tol;
        f.normal = ea.normal;
        f.length = ea.length;
        f.h_e = 0.5 * (cell_diameter[ea.cell] + cell_diameter[eb.cell]);
        f.shift = pp.shift;
        f.p0 = vertices[ea.v0];
        f.p1 = vertices[ea.v1];
        faces.push_back(f);
    }
    for (const auto& e : boundary_edges) {
        if (e.tag >= 0 && tags[e.tag].kind == BcKind::periodic) continue;
        Face f;
        f.left_cell = e.cell;
        f.left_local = e.local_edge;
        f.normal = e.normal;
        f.length = e.length;
        f.h_e = e.h_e;
        f.tag = e.tag;
        f.p0 = vertices[e.v0];
        f.p1 = vertices[e.v1];
        faces.push_back(f);
    }

    cell_faces.assign(cells.size(), {-1, -1, -1});
    for (size_t fi = 0; fi < faces.size(); ++fi) {
        const auto& f = faces[fi];
        cell_faces[f.left_cell][f.left_local] = static_cast<int>(fi);
        if (!f.boundary()) cell_faces[f.right_cell][f.right_local] = static_cast<int>(fi);
    }
    for (size_t c = 0; c < cells.size(); ++c)
        for (int le = 0; le < 3; ++le)
            if (cell_faces[c][le] < 0)
                throw SolverError("cell " + std::to_string(c) + " edge " + std::to_string(le) +
                                  " has no face record");
}

Mesh read_native_mesh(std::istream& in, const TagTable& tags, bool require_tags, bool pair_periodic) {
    Mesh mesh;
    int nv = 0, nt = 0, nb = 0;
    if (!(in >> nv >> nt >> nb)) throw SolverError("native mesh: bad header line");
    if (nv < 3 || nt < 1 || nb < 0) throw SolverError("native mesh: invalid counts");
    mesh.vertices.resize(nv);
    for (int i = 0; i < nv; ++i)
        if (!(in >> mesh.vertices[i].x >> mesh.vertices[i].y))
            throw SolverError("native mesh: bad vertex line " + std::to_string(i));
    mesh.cells.resize(nt);
    for (int i = 0; i < nt; ++i) {
        auto& c = mesh.cells[i];
        if (!(in >> c[0] >> c[1] >> c[2])) throw SolverError("native mesh: bad cell line " + std::to_string(i));
        for (int v : c)
            if (v < 0 || v >= nv) throw SolverError("native mesh: vertex index out of range");
    }
    for (int i = 0; i < nb; ++i) {
        int a, b;
        std::string name;
        if (!(in >> a >> b >> name)) throw SolverError("native mesh: bad boundary line " + std::to_string(i));
        if (a < 0 || a >= nv || b < 0 || b >= nv) throw SolverError("native mesh: boundary vertex out of range");
        mesh.tagged_edges[{std::min(a, b), std::max(a, b)}] = name;
    }
    for (const auto& [name, tag] : tags) {
        BoundaryTag t = tag;
        t.name = name;
        mesh.tags.push_back(t);
    }
    mesh.finalize(require_tags, pair_periodic);
    return mesh;
}

void save_native_mesh(const Mesh& mesh, std::ostream& out) {
    out << std::setprecision(17);
    out << mesh.n_vertices() << ' ' << mesh.n_cells() << ' ' << mesh.boundary_edges.size() << '\n';
    for (const auto& v : mesh.vertices) out << v.x << ' ' << v.y << '\n';
    for (const auto& c : mesh.cells) out << c[0] << ' ' << c[1] << ' ' << c[2] << '\n';
    for (const auto& e : mesh.boundary_edges) {
        if (e.tag < 0) throw SolverError("cannot save mesh with untagged boundary edges");
        out << e.v0 << ' ' << e.v1 << ' ' << mesh.tags[e.tag].name << '\n';
    }
}

void save_native_mesh(const Mesh& mesh, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw SolverError("cannot open '" + path + "' for writing");
    save_native_mesh(mesh, out);
}

Mesh load_mesh(const std::string& path, const TagTable& tags, bool require_tags, bool pair_periodic) {
    std::ifstream in(path);
    if (!in) throw SolverError("cannot open mesh file '" + path + "'");
    std::string first;
    std::getline(in, first);
    in.seekg(0);
    if (first.rfind("$MeshFormat", 0) == 0) return read_gmsh_mesh(in, tags, require_tags, pair_periodic);
    return read_native_mesh(in, tags, require_tags, pair_periodic);
}

}  // namespace dgns
