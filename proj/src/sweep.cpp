#include "sphereconf/sweep.hpp"

#include <stdexcept>
#include <string>

namespace sphereconf {

SweepResult dem_sweep(const LaplacianSystem& system, const Mesh& mesh,
                      const ComplexVector& h, double rho, int hemisphere) {
    SweepResult result;
    try {
        result.h = invert_plane(h);
        result.partition = partition_indices(mesh, result.h, rho);
        Subsystem sub = extract_subsystem(system, result.partition.interior,
                                          result.partition.boundary);
        result.solver = std::make_shared<SubsystemSolver>(sub.L_s);
        result.B_s = std::move(sub.B_s);
    } catch (const std::exception& e) {
        throw std::runtime_error("dem: hemisphere " + std::to_string(hemisphere) +
                                 " sweep failed: " + e.what());
    }

    const ComplexVector boundary_values = result.h(result.partition.boundary);
    const ComplexVector interior_values =
        result.solver->solve((-sparse_mul(result.B_s, boundary_values)).eval());
    result.h(result.partition.interior) = interior_values;
    return result;
}

}  // namespace sphereconf
