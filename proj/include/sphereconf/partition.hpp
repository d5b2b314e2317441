#pragma once

#include <vector>

#include "sphereconf/complex_plane.hpp"
#include "sphereconf/mesh.hpp"

namespace sphereconf {

/// Hemisphere index sets for a planar vertex map h and radius rho > 1:
/// interior I = {i : |h_i| < rho}, boundary_prime B' = complement,
/// boundary B = members of B' with an edge into I, exterior B^c = B' \ B.
/// interior, boundary and exterior partition {0..n-1}.
struct IndexPartition {
    std::vector<int> interior;
    std::vector<int> boundary_prime;
    std::vector<int> boundary;
    std::vector<int> exterior;
    double rho = 0.0;

    int n_s() const { return static_cast<int>(interior.size()); }
    int m_s() const { return static_cast<int>(boundary.size()); }
};

/// Throws when the interior or the boundary comes out empty (rho too small
/// or larger than max |h|).
IndexPartition partition_indices(const Mesh& mesh, const ComplexVector& h, double rho);

}  // namespace sphereconf
