#pragma once

#include <array>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "dgns/core.hpp"

namespace dgns {

enum class BcKind { periodic, inflow_farfield, outflow, adiabatic_wall, symmetry_plane };

BcKind bc_kind_from_string(const std::string& s);
std::string to_string(BcKind k);

struct BoundaryTag {
    std::string name;
    BcKind kind = BcKind::adiabatic_wall;
    Vec2 periodic_shift{0, 0};  // translation from this side to its partner
};

/// Tag table keyed by the names appearing in mesh files.
using TagTable = std::map<std::string, BoundaryTag>;

struct InteriorEdge {
    int left_cell = -1, right_cell = -1;
    int left_local = -1, right_local = -1;
    int v0 = -1, v1 = -1;  // traversal order of the left cell
    Vec2 normal;           // unit, outward from left
    double length = 0;
    double h_e = 0;
};

struct BoundaryEdge {
    int cell = -1;
    int local_edge = -1;
    int v0 = -1, v1 = -1;  // cell traversal order (CCW)
    Vec2 normal;           // outward unit normal
    double length = 0;
    double h_e = 0;
    int tag = -1;  // index into Mesh::tags
};

struct PeriodicPair {
    int edge_a = -1, edge_b = -1;  // indices into boundary_edges; a owns the face
    Vec2 shift;                    // translation mapping edge_a onto edge_b
};

/// Unified face worklist entry for assembly: geometric interior edges,
/// merged periodic pairs, and tagged boundary edges.
struct Face {
    int left_cell = -1, left_local = -1;
    int right_cell = -1, right_local = -1;  // -1 for boundary faces
    bool right_reversed = false;            // right trace param runs opposite to face param
    Vec2 normal;                            // outward from left
    double length = 0;
    double h_e = 0;
    Vec2 shift{0, 0};  // right-side evaluation offset (periodic faces)
    int tag = -1;      // boundary tag index for BC faces
    Vec2 p0, p1;       // physical endpoints in face-parameter order
    bool boundary() const { return right_cell < 0; }
};

class Mesh {
  public:
    std::vector<Vec2> vertices;
    std::vector<std::array<int, 3>> cells;  // CCW vertex triples
    std::vector<BoundaryTag> tags;

    std::vector<InteriorEdge> interior_edges;
    std::vector<BoundaryEdge> boundary_edges;
    std::vector<PeriodicPair> periodic_pairs;
    std::vector<Face> faces;
    std::vector<std::array<int, 3>> cell_faces;  // per cell: adjacent face ids, local-edge order

    std::vector<double> cell_area;
    std::vector<double> cell_diameter;  // inscribed-circle diameter h_K

    int n_cells() const { return static_cast<int>(cells.size()); }
    int n_vertices() const { return static_cast<int>(vertices.size()); }
    double min_diameter() const;
    double total_area() const;
    std::array<Vec2, 2> bounding_box() const;
    std::array<Vec2, 3> cell_coords(int c) const;

    /// Validates topology, fixes orientation, drops unreferenced vertices,
    /// computes metrics, pairs periodic tags and builds the face worklist.
    /// `require_tags=false` permits untagged boundary edges (inspection only).
    void finalize(bool require_tags = true, bool pair_periodic = true);

    /// Raw tagged input edges (sorted vertex pair -> tag name), consumed by finalize().
    std::map<std::pair<int, int>, std::string> tagged_edges;
};

/// Inscribed-circle diameter of a triangle, 4*area/perimeter.
double inscribed_diameter(const Vec2& a, const Vec2& b, const Vec2& c);

/// Loads a mesh in the native ASCII format or Gmsh 2.2 ASCII (detected by
/// a leading `$MeshFormat` section). Boundary edges must carry tags known
/// to `tags` unless `require_tags` is false.
Mesh load_mesh(const std::string& path, const TagTable& tags, bool require_tags = true,
               bool pair_periodic = true);

Mesh read_native_mesh(std::istream& in, const TagTable& tags, bool require_tags, bool pair_periodic);
Mesh read_gmsh_mesh(std::istream& in, const TagTable& tags, bool require_tags, bool pair_periodic);

void save_native_mesh(const Mesh& mesh, std::ostream& out);
void save_native_mesh(const Mesh& mesh, const std::string& path);

}  // namespace dgns
