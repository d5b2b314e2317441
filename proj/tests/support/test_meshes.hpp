#pragma once

#include <cstdint>
#include <string>

#include "sphereconf/mesh.hpp"

namespace sphereconf::testing {

/// Regular tetrahedron inscribed in the unit sphere.
Mesh make_tetrahedron();

/// Regular icosahedron on the unit sphere (12 vertices, 30 edges, 20 faces).
Mesh make_icosahedron();

/// Icosahedron subdivided `level` times with vertices projected to the unit
/// sphere. Level 0 is the icosahedron; level L has 10*4^L + 2 vertices.
Mesh make_icosphere(int level);

/// Axis-aligned unit cube, each square split into two right triangles.
Mesh make_cube();

/// Structured torus grid (genus one; fails validation on purpose).
Mesh make_torus(int major_segments, int minor_segments);

/// Unit-sphere mesh with every vertex displaced by a uniform 3D offset of
/// amplitude `amp` and re-projected onto the sphere (tangential scrambling).
Mesh perturb_on_sphere(const Mesh& sphere_mesh, double amp, std::uint64_t seed);

/// Bumpy sphere: radius scaled per vertex by (1 + amp * uniform[-1,1]).
Mesh perturb_radial(const Mesh& sphere_mesh, double amp, std::uint64_t seed);

std::string tetrahedron_off_text();
std::string icosahedron_obj_text();
std::string single_triangle_off_text();

}  // namespace sphereconf::testing
