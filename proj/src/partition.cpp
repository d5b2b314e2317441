#include "sphereconf/partition.hpp"

#include <cmath>
#include <stdexcept>

namespace sphereconf {

IndexPartition partition_indices(const Mesh& mesh, const ComplexVector& h, double rho) {
    if (!(rho > 1.0))
        throw std::runtime_error("dem: partition radius rho must exceed 1");
    if (h.size() != mesh.num_vertices())
        throw std::runtime_error("dem: partition vector length mismatch");

    const int n = mesh.num_vertices();
    std::vector<char> inside(n, 0);
    for (int i = 0; i < n; ++i) {
        const double mag = std::abs(h[i]);
        if (!std::isfinite(mag))
            throw std::runtime_error("dem: partition input has a non-finite entry at index " +
                                     std::to_string(i));
        inside[i] = mag < rho ? 1 : 0;
    }

    IndexPartition part;
    part.rho = rho;
    for (int i = 0; i < n; ++i)
        (inside[i] ? part.interior : part.boundary_prime).push_back(i);

    if (part.interior.empty())
        throw std::runtime_error("dem: empty interior index set (rho too small "
                                 "relative to |h|)");
    if (part.boundary_prime.empty())
        throw std::runtime_error("dem: empty boundary index set (rho exceeds max |h|)");

    for (int j : part.boundary_prime) {
        bool touches_interior = false;
        for (int nb : mesh.neighbors[j]) {
            if (inside[nb]) {
                touches_interior = true;
                break;
            }
        }
        (touches_interior ? part.boundary : part.exterior).push_back(j);
    }

    if (part.boundary.empty())
        throw std::runtime_error("dem: empty boundary index set (no exterior vertex "
                                 "adjacent to the interior)");
    return part;
}

}  // namespace sphereconf
