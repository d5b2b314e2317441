#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sphereconf/transfer.hpp"

namespace sphereconf {

/// Convergence certificate: with eta bounding the scaled magnitudes away
/// from 1 by at most eta and gamma = 1/(1-eta)^2, the iteration is
/// R-linearly convergent whenever rho(gamma^2 |A2_hat| A1) < 1.
struct Certificate {
    double eta = 0.0;
    double gamma = 0.0;
    double spectral_radius = 0.0;
    bool satisfied = false;
    std::string method;  // "power-iteration" or "dense-oracle"
};

struct DistortionStats {
    Eigen::VectorXd per_corner;  // d_theta for every face corner (3 * #F)
    double mean = 0.0;
    double sd = 0.0;  // population standard deviation
};

/// Everything a solver run reports. Per-iteration series have one entry per
/// iteration; `scalings` carries the two scale factors of each round in
/// order. wall_time is informational and excluded from deterministic output.
struct RunReport {
    std::string algorithm;  // "dem" or "mdem"
    int n = 0;
    int num_faces = 0;
    int m1 = 0, m2 = 0;  // mdem only
    double rho = 0.0;
    double tol = 0.0;
    int max_iter = 0;

    bool converged = false;
    int iterations = 0;
    bool delaunay = false;
    int flipped_triangles = 0;
    int pole_vertex = -1;

    double initial_energy = 0.0;
    double final_energy = 0.0;          // raw E_D of the returned map
    std::vector<double> energies;       // per-iteration E_D (dem); final only (mdem)
    std::vector<double> residuals_h1;   // ||h1^(k+1) - h1^(k)||_2 per iteration
    std::vector<double> residuals_h2;
    std::vector<double> scalings;       // c_k in the order applied (2 per round)
    std::vector<double> eta1, eta2;     // 1 - min scaled magnitude per half-step
    double eta = 0.0;

    std::optional<Certificate> certificate;
    DistortionStats distortion;
    std::vector<double> r_linear;  // ||h1^(k) - h1^(*)||_inf^(1/k)

    double wall_time = 0.0;  // seconds
};

/// eta = max over all recorded half-steps of 1 - min scaled magnitude.
double track_eta(const std::vector<double>& eta1, const std::vector<double>& eta2);

/// Evaluates rho(gamma^2 |A2_hat| A1) by power iteration (residual 1e-10),
/// cross-checked against a dense eigensolve when m1 <= 500.
Certificate convergence_certificate(const DeflationData& defl,
                                    const TransferOperators& ops, double eta);

/// Relative local angle distortion d_theta = |theta_S - theta_image| /
/// theta_S per face corner; image angles are measured on the straight-edge
/// triangles of f. Rows of f must be unit within 1e-8.
DistortionStats angle_distortion(const Mesh& mesh, const Eigen::MatrixX3d& f);

/// Entry k (1-based) is ||history[k] - reference||_inf^(1/k); the final
/// entry is dropped when history.back() is the reference itself.
std::vector<double> r_linear_series(const std::vector<ComplexVector>& history,
                                    const ComplexVector& reference);

/// d_E = final E_D of the mdem run minus final E_D of the dem run; the two
/// reports must describe the same mesh.
double energy_comparison(const RunReport& report_dem, const RunReport& report_mdem);

/// Spherical triangles of f whose orientation disagrees with the origin
/// (sign of det [f_i; f_j; f_k] <= 0).
int count_flipped_triangles(const Eigen::MatrixX3i& faces, const Eigen::MatrixX3d& f);

}  // namespace sphereconf
