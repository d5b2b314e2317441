#include "sphereconf/laplacian.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <unordered_map>

#include <Eigen/Geometry>

namespace sphereconf {

namespace {

uint64_t edge_key(int a, int b) {
    if (a > b) std::swap(a, b);
    return (static_cast<uint64_t>(a) << 32) | static_cast<uint64_t>(b);
}

}  // namespace

LaplacianSystem assemble_cotangent_laplacian(const Mesh& mesh) {
    const int n = mesh.num_vertices();
    const int num_faces = mesh.num_faces();

    LaplacianSystem system;
    system.corner_cot.resize(num_faces, 3);

    std::unordered_map<uint64_t, int> edge_index;
    edge_index.reserve(mesh.edges.size() * 2);
    for (size_t e = 0; e < mesh.edges.size(); ++e)
        edge_index[edge_key(mesh.edges[e][0], mesh.edges[e][1])] = static_cast<int>(e);

    // w_ij accumulated per edge; the corner opposite an edge contributes
    // -cot/2 to that edge.
    Eigen::VectorXd weights = Eigen::VectorXd::Zero(mesh.num_edges());
    for (int f = 0; f < num_faces; ++f) {
        for (int c = 0; c < 3; ++c) {
            const int vi = mesh.faces(f, c);
            const int vj = mesh.faces(f, (c + 1) % 3);
            const int vk = mesh.faces(f, (c + 2) % 3);
            const Eigen::RowVector3d u = mesh.vertices.row(vj) - mesh.vertices.row(vi);
            const Eigen::RowVector3d v = mesh.vertices.row(vk) - mesh.vertices.row(vi);
            const double cross_norm = u.cross(v).norm();
            const double dot = u.dot(v);
            // Angles below ~1e-12 rad make the cotangent overflow.
            if (!(cross_norm > 1e-12 * std::abs(dot)) || cross_norm == 0.0)
                throw std::runtime_error("laplacian: degenerate angle at face " +
                                         std::to_string(f));
            const double cot = dot / cross_norm;
            system.corner_cot(f, c) = cot;
            weights[edge_index.at(edge_key(vj, vk))] += -0.5 * cot;
        }
    }
    system.edge_weights = weights;

    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(mesh.edges.size() * 2 + n);
    Eigen::VectorXd diagonal = Eigen::VectorXd::Zero(n);
    for (size_t e = 0; e < mesh.edges.size(); ++e) {
        const int i = mesh.edges[e][0];
        const int j = mesh.edges[e][1];
        const double w = weights[e];
        triplets.emplace_back(i, j, w);
        triplets.emplace_back(j, i, w);
        diagonal[i] -= w;
        diagonal[j] -= w;
    }
    for (int i = 0; i < n; ++i) triplets.emplace_back(i, i, diagonal[i]);

    system.L.resize(n, n);
    system.L.setFromTriplets(triplets.begin(), triplets.end());
    system.L.makeCompressed();

    const double scale = weights.size() > 0 ? weights.cwiseAbs().maxCoeff() : 0.0;
    system.delaunay = (weights.array() <= 1e-14 * scale).all();
    return system;
}

double dirichlet_energy(const LaplacianSystem& system, const Eigen::MatrixX3d& f) {
    if (f.rows() != system.L.rows())
        throw std::runtime_error("laplacian: dirichlet_energy dimension mismatch");
    return 0.5 * (f.transpose() * (system.L * f)).trace();
}

double dirichlet_energy(const LaplacianSystem& system, const Eigen::VectorXcd& h) {
    if (h.size() != system.L.rows())
        throw std::runtime_error("laplacian: dirichlet_energy dimension mismatch");
    const Eigen::VectorXd re = h.real();
    const Eigen::VectorXd im = h.imag();
    return 0.5 * (re.dot(system.L * re) + im.dot(system.L * im));
}

Subsystem extract_subsystem(const LaplacianSystem& system,
                            const std::vector<int>& interior,
                            const std::vector<int>& boundary) {
    if (interior.empty() || boundary.empty())
        throw std::runtime_error("laplacian: extract_subsystem requires nonempty "
                                 "interior and boundary index sets");

    const int n = static_cast<int>(system.L.rows());
    std::vector<int> role(n, -1);       // 0 = interior, 1 = boundary
    std::vector<int> local(n, -1);
    for (size_t a = 0; a < interior.size(); ++a) {
        role[interior[a]] = 0;
        local[interior[a]] = static_cast<int>(a);
    }
    for (size_t b = 0; b < boundary.size(); ++b) {
        if (role[boundary[b]] == 0)
            throw std::runtime_error("laplacian: extract_subsystem index sets overlap");
        role[boundary[b]] = 1;
        local[boundary[b]] = static_cast<int>(b);
    }

    std::vector<Eigen::Triplet<double>> l_trip, b_trip;
    for (int gi : interior) {
        const int a = local[gi];
        // Column gi of the symmetric L enumerates row gi.
        for (Eigen::SparseMatrix<double>::InnerIterator it(system.L, gi); it; ++it) {
            const int r = static_cast<int>(it.row());
            if (role[r] == 0)
                l_trip.emplace_back(a, local[r], it.value());
            else if (role[r] == 1)
                b_trip.emplace_back(a, local[r], it.value());
        }
    }

    Subsystem sub;
    sub.L_s.resize(interior.size(), interior.size());
    sub.L_s.setFromTriplets(l_trip.begin(), l_trip.end());
    sub.L_s.makeCompressed();
    sub.B_s.resize(interior.size(), boundary.size());
    sub.B_s.setFromTriplets(b_trip.begin(), b_trip.end());
    sub.B_s.makeCompressed();
    return sub;
}

SubsystemSolver::SubsystemSolver(const Eigen::SparseMatrix<double>& L_s) {
    ldlt_.compute(L_s);
    if (ldlt_.info() != Eigen::Success)
        throw std::runtime_error("laplacian: singular L_s detected at factorization");
}

Eigen::VectorXd SubsystemSolver::solve(const Eigen::VectorXd& rhs) const {
    return ldlt_.solve(rhs);
}

Eigen::MatrixXd SubsystemSolver::solve(const Eigen::MatrixXd& rhs) const {
    return ldlt_.solve(rhs);
}

Eigen::VectorXcd SubsystemSolver::solve(const Eigen::VectorXcd& rhs) const {
    Eigen::MatrixXd packed(rhs.size(), 2);
    packed.col(0) = rhs.real();
    packed.col(1) = rhs.imag();
    const Eigen::MatrixXd solution = ldlt_.solve(packed);
    Eigen::VectorXcd out(rhs.size());
    out.real() = solution.col(0);
    out.imag() = solution.col(1);
    return out;
}

Eigen::VectorXcd sparse_mul(const Eigen::SparseMatrix<double>& A,
                            const Eigen::VectorXcd& z) {
    Eigen::VectorXcd out(A.rows());
    out.real() = A * z.real().eval();
    out.imag() = A * z.imag().eval();
    return out;
}

Eigen::VectorXcd dense_mul(const Eigen::MatrixXd& A, const Eigen::VectorXcd& z) {
    Eigen::VectorXcd out(A.rows());
    out.real() = A * z.real().eval();
    out.imag() = A * z.imag().eval();
    return out;
}

void write_matrix_market(std::ostream& out, const Eigen::SparseMatrix<double>& A) {
    out << "%%MatrixMarket matrix coordinate real general\n";
    out << A.rows() << ' ' << A.cols() << ' ' << A.nonZeros() << '\n';
    char buf[48];
    for (int k = 0; k < A.outerSize(); ++k) {
        for (Eigen::SparseMatrix<double>::InnerIterator it(A, k); it; ++it) {
            std::snprintf(buf, sizeof(buf), "%ld %ld %.17g\n",
                          static_cast<long>(it.row() + 1),
                          static_cast<long>(it.col() + 1), it.value());
            out << buf;
        }
    }
}

}  // namespace sphereconf
