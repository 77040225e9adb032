#pragma once

#include <cstdint>

#include "dgns/mesh.hpp"

namespace dgns {

/// Tag table for the built-in unit-square meshes with all-periodic sides.
TagTable unit_square_periodic_tags();

/// Uniform unstructured triangulation of the unit square. Boundary segment
/// length is (1/5)/2^level; interior vertices carry a deterministic jitter
/// keyed by `seed` so the triangulation is irregular but reproducible.
Mesh unit_square_mesh(int level, const TagTable& tags, std::uint64_t seed = 0);

struct PlateMeshSpec {
    int n_upstream = 52;  // intervals on [-1,0]
    int n_plate = 32;     // intervals on [0,1]
    int n_y = 20;         // intervals on [0,1]
    double dx_le = 0.005;  // first interval next to the leading edge, both sides
    double dy_wall = 0.002;
};

/// Graded rectangle mesh for the flat-plate case on [-1,1]x[0,1].
/// Tags: inlet (x=-1), top (y=1), outlet (x=1), symmetry (y=0, x<0),
/// plate (y=0, x>0).
Mesh plate_mesh(const PlateMeshSpec& spec, const TagTable& tags);
TagTable plate_tags();

struct CylinderMeshSpec {
    int n_theta = 41;      // elements around the cylinder
    int n_radial = 40;     // element layers
    double radius = 0.5;   // cylinder radius (D = 1)
    double outer = 20.0;   // farfield radius (20 D)
    double dr_wall = 0.03; // first layer thickness
};

/// O-mesh around a cylinder at the origin. Tags: cylinder, farfield.
Mesh cylinder_mesh(const CylinderMeshSpec& spec, const TagTable& tags);
TagTable cylinder_tags();

/// Solves for the geometric ratio r with dx0*(r^n-1)/(r-1) = total.
double geometric_ratio(double dx0, double total, int n);

}  // namespace dgns
