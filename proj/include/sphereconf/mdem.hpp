#pragma once

#include "sphereconf/diagnostics.hpp"
#include "sphereconf/initial_map.hpp"
#include "sphereconf/transfer.hpp"

namespace sphereconf {

/// Boundary iterates of the deflated scheme plus everything recorded along
/// the way. Single-owner: one run mutates one state.
struct MdemState {
    ComplexVector h1;  // boundary-1 values, chart of hemisphere 1 (length m1)
    ComplexVector h2;  // boundary-2 values, chart of hemisphere 2 (length m2)
    int step = 0;

    std::vector<double> scalings;  // c_k in the order applied
    std::vector<double> residuals_h1, residuals_h2;
    std::vector<double> eta1, eta2;  // 1 - min scaled magnitude per half-step
    std::vector<ComplexVector> h1_history;
};

/// Boundary values implied by the freezing double sweep of `ops`.
MdemState mdem_seed(const TransferOperators& ops);

/// One round of the scaled deflated iteration:
///   c_k      = max_i |A1 h1|_i,      h2 <- c_k   diag(|A1 h1|)^-2   A1 h1,
///   c_{k+1}  = max_i |A2_hat h2|_i,  h1 <- c_{k+1} diag(|A2_hat h2|)^-2 A2_hat h2.
/// Aborts naming the offending index when a magnitude underflows.
void mdem_step(MdemState& state, const TransferOperators& ops,
               const DeflationData& defl);

/// Algorithm steps after convergence: solve L1 h_I1 = -B1 h_B1, invert onto
/// hemisphere 2, solve L2 h_I2 = -B2 h_B2, and glue into one vector of
/// length n (chart of hemisphere 2).
ComplexVector reconstruct(const TransferOperators& ops, const ComplexVector& h1);

struct MdemOptions {
    double rho = 1.4;
    double tol = 1e-9;
    int max_iter = 1000;
    bool compute_certificate = true;
};

struct MdemResult {
    Eigen::MatrixX3d f;  // n x 3 unit vectors
    RunReport report;
    TransferOperators ops;
    DeflationData defl;
};

/// Full pipeline: initial map, stereographic projection, operator freeze,
/// deflation, scaled iteration until both boundary residuals drop below
/// tol, reconstruction, median normalization, inverse projection.
MdemResult run_mdem(const Mesh& mesh, const MdemOptions& options = {});

}  // namespace sphereconf
