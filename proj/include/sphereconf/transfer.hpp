#pragma once

#include <memory>
#include <vector>

#include "sphereconf/sweep.hpp"

namespace sphereconf {

/// Dense boundary-to-boundary transfer operators A_s = -P_s L_s^-1 B_s over
/// a frozen pair of hemisphere partitions. A1 maps boundary-1 values to the
/// boundary-2 vertices (m2 x m1); A2 maps back (m1 x m2). On a Delaunay
/// mesh both are nonnegative and A2 (A1 1) = 1.
struct TransferOperators {
    Eigen::MatrixXd A1;  // m2 x m1
    Eigen::MatrixXd A2;  // m1 x m2

    IndexPartition part1, part2;
    std::vector<int> p1_rows;  // positions of B2 vertices inside part1.interior
    std::vector<int> p2_rows;  // positions of B1 vertices inside part2.interior

    std::shared_ptr<SubsystemSolver> solver1, solver2;
    Eigen::SparseMatrix<double> B1, B2;

    // Full vertex vector (chart of hemisphere 2) after the freezing double
    // sweep; seeds the boundary iteration.
    ComplexVector h_setup;

    double min_entry_A1 = 0.0;  // nonnegativity monitors
    double min_entry_A2 = 0.0;

    int n() const { return part2.n_s() + static_cast<int>(part2.boundary_prime.size()); }
    int m1() const { return part1.m_s(); }
    int m2() const { return part2.m_s(); }
};

/// Freezes the index sets with one inversion-partition-solve pass per
/// hemisphere starting from the projected initial map h, then builds the
/// dense operators by multi-right-hand-side solves against B_s.
TransferOperators build_transfer_operators(const LaplacianSystem& system,
                                           const Mesh& mesh, const ComplexVector& h,
                                           double rho);

/// Same construction over explicitly given partitions (no sweep).
TransferOperators build_transfer_operators(const LaplacianSystem& system,
                                           const IndexPartition& part1,
                                           const IndexPartition& part2);

/// Left Perron pair of [0 A1; A2 0] at eigenvalue 1 and the deflated
/// operator: q2^T A2 A1 = q2^T with q2^T 1 = 1, q1^T = q2^T A2,
/// A2_hat = A2 - 1 q1^T. Moves the eigenvalue 1 of A2 A1 to 0 and leaves
/// the rest of the spectrum in place.
struct DeflationData {
    Eigen::VectorXd q1;      // length m2, positive
    Eigen::VectorXd q2;      // length m1, positive, sums to 1
    Eigen::MatrixXd A2_hat;  // m1 x m2
};

/// Power iteration on (A2 A1)^T from the uniform vector, 1-norm
/// normalized; requires the positive pattern of A2 A1 to be strongly
/// connected and the computed eigenvector to be strictly positive.
DeflationData deflation_vector(const TransferOperators& ops);

/// Dominant-eigenvalue helpers shared by the deflation and the certificate.
double power_spectral_radius(const Eigen::MatrixXd& M, double residual_tol,
                             int max_iterations);
double dense_spectral_radius(const Eigen::MatrixXd& M);

}  // namespace sphereconf
