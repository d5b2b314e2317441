#pragma once

#include <memory>

#include "sphereconf/complex_plane.hpp"
#include "sphereconf/laplacian.hpp"
#include "sphereconf/partition.hpp"

namespace sphereconf {

/// Output of one hemisphere sweep. The factorization and boundary block are
/// kept so callers freezing the index sets can reuse them.
struct SweepResult {
    ComplexVector h;  // full vertex vector after the interior solve
    IndexPartition partition;
    std::shared_ptr<SubsystemSolver> solver;
    Eigen::SparseMatrix<double> B_s;
};

/// One hemisphere iteration: invert h on the plane, recompute the index
/// sets at radius rho, then replace h_I by the solution of
/// L_s h_I = -B_s h_B. Entries outside I are untouched. `hemisphere` only
/// labels error messages.
SweepResult dem_sweep(const LaplacianSystem& system, const Mesh& mesh,
                      const ComplexVector& h, double rho, int hemisphere);

}  // namespace sphereconf
