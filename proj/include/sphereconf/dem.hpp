#pragma once

#include "sphereconf/diagnostics.hpp"
#include "sphereconf/initial_map.hpp"
#include "sphereconf/sweep.hpp"

namespace sphereconf {

struct DemOptions {
    double rho = 1.1;
    double tol = 1e-9;
    int max_iter = 1000;
};

struct DemResult {
    Eigen::MatrixX3d f;  // n x 3 unit vectors
    RunReport report;
};

/// Alternating hemisphere Laplacian solves with the index sets recomputed
/// every sweep. Stops when the Dirichlet energy stagnates:
/// |E^(k) - E^(k-1)| < tol * max(1, E^(k)). A non-converged run still
/// returns its last map, flagged.
DemResult run_dem(const Mesh& mesh, const DemOptions& options = {});

}  // namespace sphereconf
