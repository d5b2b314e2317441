#include "sphereconf/transfer.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

#include "sphereconf/log.hpp"

namespace sphereconf {

namespace {

// Positions of `subset` inside the sorted list `within`; throws when a
// member is missing. With rho > 1 every B_{s+1} vertex lies inside I_s.
std::vector<int> locate(const std::vector<int>& subset, const std::vector<int>& within,
                        const char* what) {
    std::vector<int> rows;
    rows.reserve(subset.size());
    for (int v : subset) {
        const auto it = std::lower_bound(within.begin(), within.end(), v);
        if (it == within.end() || *it != v)
            throw std::runtime_error(std::string("mdem: ") + what + " vertex " +
                                     std::to_string(v) +
                                     " falls outside the opposite interior set");
        rows.push_back(static_cast<int>(it - within.begin()));
    }
    return rows;
}

TransferOperators assemble_operators(const LaplacianSystem& system,
                                     const IndexPartition& part1,
                                     const IndexPartition& part2,
                                     std::shared_ptr<SubsystemSolver> solver1,
                                     Eigen::SparseMatrix<double> B1,
                                     std::shared_ptr<SubsystemSolver> solver2,
                                     Eigen::SparseMatrix<double> B2) {
    TransferOperators ops;
    ops.part1 = part1;
    ops.part2 = part2;
    ops.solver1 = std::move(solver1);
    ops.solver2 = std::move(solver2);
    ops.B1 = std::move(B1);
    ops.B2 = std::move(B2);

    if (ops.m1() == 0 || ops.m2() == 0)
        throw std::runtime_error("mdem: empty boundary set (m_s = 0)");

    ops.p1_rows = locate(part2.boundary, part1.interior, "boundary-2");
    ops.p2_rows = locate(part1.boundary, part2.interior, "boundary-1");

    // A_s = -P_s L_s^-1 B_s, one multi-RHS solve per hemisphere.
    const Eigen::MatrixXd X1 = ops.solver1->solve(Eigen::MatrixXd(-ops.B1));
    ops.A1 = X1(ops.p1_rows, Eigen::all);
    const Eigen::MatrixXd X2 = ops.solver2->solve(Eigen::MatrixXd(-ops.B2));
    ops.A2 = X2(ops.p2_rows, Eigen::all);

    ops.min_entry_A1 = ops.A1.minCoeff();
    ops.min_entry_A2 = ops.A2.minCoeff();
    if (system.delaunay && (ops.min_entry_A1 < -1e-12 || ops.min_entry_A2 < -1e-12))
        log::warn("transfer operator has negative entries on a Delaunay mesh "
                  "(min A1 %.3e, min A2 %.3e)",
                  ops.min_entry_A1, ops.min_entry_A2);
    if (!system.delaunay)
        log::info("non-Delaunay mesh: transfer-operator nonnegativity not guaranteed "
                  "(min A1 %.3e, min A2 %.3e)",
                  ops.min_entry_A1, ops.min_entry_A2);
    return ops;
}

// Strong connectivity of the positive pattern of M (digraph reachability in
// both directions from node 0).
bool strongly_connected_pattern(const Eigen::MatrixXd& M) {
    const int n = static_cast<int>(M.rows());
    const double threshold = 1e-14 * std::max(1.0, M.cwiseAbs().maxCoeff());
    const auto reach = [&](bool transpose) {
        std::vector<char> seen(n, 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        while (!stack.empty()) {
            const int u = stack.back();
            stack.pop_back();
            for (int v = 0; v < n; ++v) {
                const double entry = transpose ? M(v, u) : M(u, v);
                if (!seen[v] && entry > threshold) {
                    seen[v] = 1;
                    stack.push_back(v);
                }
            }
        }
        return std::count(seen.begin(), seen.end(), 1) == n;
    };
    return reach(false) && reach(true);
}

}  // namespace

TransferOperators build_transfer_operators(const LaplacianSystem& system,
                                           const Mesh& mesh, const ComplexVector& h,
                                           double rho) {
    // One inversion-partition-solve pass per hemisphere freezes the sets.
    SweepResult s1 = dem_sweep(system, mesh, h, rho, 1);
    SweepResult s2 = dem_sweep(system, mesh, s1.h, rho, 2);
    TransferOperators ops =
        assemble_operators(system, s1.partition, s2.partition, std::move(s1.solver),
                           std::move(s1.B_s), std::move(s2.solver), std::move(s2.B_s));
    ops.h_setup = std::move(s2.h);
    return ops;
}

TransferOperators build_transfer_operators(const LaplacianSystem& system,
                                           const IndexPartition& part1,
                                           const IndexPartition& part2) {
    Subsystem sub1 = extract_subsystem(system, part1.interior, part1.boundary);
    Subsystem sub2 = extract_subsystem(system, part2.interior, part2.boundary);
    return assemble_operators(system, part1, part2,
                              std::make_shared<SubsystemSolver>(sub1.L_s),
                              std::move(sub1.B_s),
                              std::make_shared<SubsystemSolver>(sub2.L_s),
                              std::move(sub2.B_s));
}

DeflationData deflation_vector(const TransferOperators& ops) {
    const int m1 = ops.m1();
    const Eigen::MatrixXd product = ops.A2 * ops.A1;
    if (!strongly_connected_pattern(product))
        throw std::runtime_error("mdem: A2 A1 is reducible (disconnected boundary "
                                 "bands); deflation vector undefined");

    // Left Perron vector of A2 A1 at eigenvalue 1.
    Eigen::VectorXd q = Eigen::VectorXd::Constant(m1, 1.0 / m1);
    constexpr int kMaxIterations = 100000;
    constexpr double kResidual = 1e-12;
    bool converged = false;
    for (int it = 0; it < kMaxIterations; ++it) {
        const Eigen::VectorXd z = product.transpose() * q;
        if ((z - q).cwiseAbs().maxCoeff() < kResidual) {
            q = z;
            converged = true;
            break;
        }
        q = z / z.sum();
    }
    if (!converged)
        throw std::runtime_error("mdem: Perron power iteration failed to reach "
                                 "residual 1e-12");

    DeflationData defl;
    defl.q2 = q / q.sum();
    if (defl.q2.minCoeff() <= 1e-14)
        throw std::runtime_error("mdem: computed Perron vector has nonpositive "
                                 "entries (reducible or non-Delaunay input)");
    defl.q1 = ops.A2.transpose() * defl.q2;
    if (defl.q1.minCoeff() <= 1e-14)
        throw std::runtime_error("mdem: deflation vector q1 has nonpositive entries");
    defl.A2_hat = ops.A2 - Eigen::VectorXd::Ones(m1) * defl.q1.transpose();
    return defl;
}

double power_spectral_radius(const Eigen::MatrixXd& M, double residual_tol,
                             int max_iterations) {
    Eigen::VectorXd x = Eigen::VectorXd::Constant(M.rows(), 1.0);
    x /= x.norm();
    double lambda = 0.0;
    for (int it = 0; it < max_iterations; ++it) {
        const Eigen::VectorXd y = M * x;
        lambda = x.dot(y);
        if ((y - lambda * x).cwiseAbs().maxCoeff() <=
            residual_tol * std::max(1.0, std::abs(lambda)))
            return std::abs(lambda);
        const double norm = y.norm();
        if (!(norm > 0.0))
            return 0.0;  // nilpotent action on the iterate
        x = y / norm;
    }
    throw std::runtime_error("diagnostics: power iteration stagnated");
}

double dense_spectral_radius(const Eigen::MatrixXd& M) {
    const Eigen::EigenSolver<Eigen::MatrixXd> es(M, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("diagnostics: dense eigensolve failed");
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace sphereconf
