#pragma once

#include <iosfwd>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>

#include "sphereconf/mesh.hpp"

namespace sphereconf {

/// Cotangent Laplacian L of a mesh: off-diagonal w_ij = -(cot a_ij +
/// cot a_ji)/2 over the two angles opposite edge [i,j], diagonal
/// -sum_{l != i} w_il. Symmetric with zero row sums; `delaunay` holds iff
/// every off-diagonal is nonpositive.
struct LaplacianSystem {
    Eigen::SparseMatrix<double> L;  // n x n
    Eigen::VectorXd edge_weights;   // w_ij per mesh edge, same order as mesh.edges
    Eigen::MatrixX3d corner_cot;    // cotangent at corner c of face f
    bool delaunay = false;
};

LaplacianSystem assemble_cotangent_laplacian(const Mesh& mesh);

/// Discrete Dirichlet energy (1/2) tr(f^T L f) of a vertex map.
double dirichlet_energy(const LaplacianSystem& system, const Eigen::MatrixX3d& f);
double dirichlet_energy(const LaplacianSystem& system, const Eigen::VectorXcd& h);

struct Subsystem {
    Eigen::SparseMatrix<double> L_s;  // interior x interior block
    Eigen::SparseMatrix<double> B_s;  // interior x boundary block
};

/// Extracts L_s = [L]_{I,I} and B_s = [L]_{I,B} for disjoint nonempty index
/// lists. Throws on empty or overlapping sets.
Subsystem extract_subsystem(const LaplacianSystem& system,
                            const std::vector<int>& interior,
                            const std::vector<int>& boundary);

/// Sparse symmetric factorization of one L_s block, reusable across solves.
class SubsystemSolver {
public:
    explicit SubsystemSolver(const Eigen::SparseMatrix<double>& L_s);

    Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const;
    Eigen::MatrixXd solve(const Eigen::MatrixXd& rhs) const;
    Eigen::VectorXcd solve(const Eigen::VectorXcd& rhs) const;

    Eigen::Index size() const { return ldlt_.rows(); }

private:
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt_;
};

/// y = A z for a real sparse matrix and a complex vector.
Eigen::VectorXcd sparse_mul(const Eigen::SparseMatrix<double>& A,
                            const Eigen::VectorXcd& z);

/// y = A z for a real dense matrix and a complex vector.
Eigen::VectorXcd dense_mul(const Eigen::MatrixXd& A, const Eigen::VectorXcd& z);

/// MatrixMarket coordinate output (debugging aid).
void write_matrix_market(std::ostream& out, const Eigen::SparseMatrix<double>& A);

}  // namespace sphereconf
