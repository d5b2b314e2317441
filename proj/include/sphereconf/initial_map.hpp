#pragma once

#include "sphereconf/complex_plane.hpp"
#include "sphereconf/laplacian.hpp"
#include "sphereconf/mesh.hpp"

namespace sphereconf {

struct InitialMap {
    Eigen::MatrixX3d f;        // n x 3 unit vectors
    int pole_vertex = -1;      // vertex mapped nearest the north pole
    double quality = 0.0;      // Dirichlet energy of f
    int anchor_face = -1;      // face removed for the planar flattening
    int flipped_triangles = 0; // bijectivity monitor, not enforced
};

/// Initial spherical parameterization: remove the most equilateral face,
/// harmonically flatten the punctured mesh with its three vertices pinned
/// to a large equilateral triangle, rescale the plane so that the median
/// modulus is 1, and project back to the sphere.
InitialMap initial_spherical_map(const Mesh& mesh, const LaplacianSystem& system);
InitialMap initial_spherical_map(const Mesh& mesh);

/// Planar flattening stage on its own (complex coordinates per vertex).
ComplexVector harmonic_flatten(const Mesh& mesh, int anchor_face);

/// The face whose smallest corner angle is largest (ties to the lowest id).
int pick_anchor_face(const Mesh& mesh);

}  // namespace sphereconf
