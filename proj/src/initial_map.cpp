#include "sphereconf/initial_map.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Geometry>
#include <Eigen/SparseCholesky>

#include "sphereconf/diagnostics.hpp"

namespace sphereconf {

int pick_anchor_face(const Mesh& mesh) {
    const Eigen::MatrixX3d angles = corner_angles(mesh);
    int best = 0;
    double best_min = -1.0;
    for (int f = 0; f < mesh.num_faces(); ++f) {
        const double min_angle = angles.row(f).minCoeff();
        if (min_angle > best_min) {
            best_min = min_angle;
            best = f;
        }
    }
    return best;
}

ComplexVector harmonic_flatten(const Mesh& mesh, int anchor_face) {
    const int n = mesh.num_vertices();

    // Cotangent Laplacian of the punctured mesh (anchor face removed).
    std::vector<Eigen::Triplet<double>> triplets;
    Eigen::VectorXd diagonal = Eigen::VectorXd::Zero(n);
    for (int f = 0; f < mesh.num_faces(); ++f) {
        if (f == anchor_face) continue;
        for (int c = 0; c < 3; ++c) {
            const int vi = mesh.faces(f, c);
            const int vj = mesh.faces(f, (c + 1) % 3);
            const int vk = mesh.faces(f, (c + 2) % 3);
            const Eigen::RowVector3d u = mesh.vertices.row(vj) - mesh.vertices.row(vi);
            const Eigen::RowVector3d v = mesh.vertices.row(vk) - mesh.vertices.row(vi);
            const double cross_norm = u.cross(v).norm();
            if (cross_norm == 0.0)
                throw std::runtime_error("initial-map: degenerate face " +
                                         std::to_string(f));
            const double w = -0.5 * u.dot(v) / cross_norm;  // w_jk contribution
            triplets.emplace_back(vj, vk, w);
            triplets.emplace_back(vk, vj, w);
            diagonal[vj] -= w;
            diagonal[vk] -= w;
        }
    }
    for (int i = 0; i < n; ++i) triplets.emplace_back(i, i, diagonal[i]);
    Eigen::SparseMatrix<double> punctured(n, n);
    punctured.setFromTriplets(triplets.begin(), triplets.end());

    // Pin the anchor vertices to an equilateral triangle of circumradius
    // 10 x mesh diameter (bounding-box diagonal), counterclockwise so the
    // sphere map comes out consistently oriented.
    const double diameter =
        (mesh.vertices.colwise().maxCoeff() - mesh.vertices.colwise().minCoeff()).norm();
    const double radius = 10.0 * diameter;
    const std::array<int, 3> anchors = {mesh.faces(anchor_face, 0),
                                        mesh.faces(anchor_face, 1),
                                        mesh.faces(anchor_face, 2)};
    std::array<std::complex<double>, 3> pins;
    for (int k = 0; k < 3; ++k) {
        const double theta = std::numbers::pi / 2.0 + 2.0 * std::numbers::pi * k / 3.0;
        pins[k] = radius * std::complex<double>(std::cos(theta), std::sin(theta));
    }

    std::vector<int> free_vertices;
    free_vertices.reserve(n - 3);
    std::vector<int> local(n, -1);
    for (int v = 0; v < n; ++v) {
        if (v == anchors[0] || v == anchors[1] || v == anchors[2]) continue;
        local[v] = static_cast<int>(free_vertices.size());
        free_vertices.push_back(v);
    }

    std::vector<Eigen::Triplet<double>> interior_trip;
    Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(free_vertices.size(), 2);
    for (int gi : free_vertices) {
        const int a = local[gi];
        for (Eigen::SparseMatrix<double>::InnerIterator it(punctured, gi); it; ++it) {
            const int r = static_cast<int>(it.row());
            if (local[r] >= 0) {
                interior_trip.emplace_back(local[r], a, it.value());
            } else {
                // r is a pinned anchor; move its column to the right-hand side.
                const int k = r == anchors[0] ? 0 : (r == anchors[1] ? 1 : 2);
                rhs(a, 0) -= it.value() * pins[k].real();
                rhs(a, 1) -= it.value() * pins[k].imag();
            }
        }
    }
    Eigen::SparseMatrix<double> interior(free_vertices.size(), free_vertices.size());
    interior.setFromTriplets(interior_trip.begin(), interior_trip.end());

    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(interior);
    if (ldlt.info() != Eigen::Success)
        throw std::runtime_error("initial-map: singular interior solve "
                                 "(degenerate mesh)");
    const Eigen::MatrixXd solution = ldlt.solve(rhs);

    ComplexVector h(n);
    for (int k = 0; k < 3; ++k) h[anchors[k]] = pins[k];
    for (size_t a = 0; a < free_vertices.size(); ++a)
        h[free_vertices[a]] = std::complex<double>(solution(a, 0), solution(a, 1));
    for (int i = 0; i < n; ++i)
        if (!std::isfinite(h[i].real()) || !std::isfinite(h[i].imag()))
            throw std::runtime_error("initial-map: flattening produced non-finite "
                                     "values");
    return h;
}

InitialMap initial_spherical_map(const Mesh& mesh, const LaplacianSystem& system) {
    InitialMap map;
    map.anchor_face = pick_anchor_face(mesh);
    ComplexVector h = harmonic_flatten(mesh, map.anchor_face);
    h = median_normalize(h);  // balances the two hemispheres
    map.f = inverse_stereo(h);
    Eigen::Index pole;
    map.f.col(2).maxCoeff(&pole);
    map.pole_vertex = static_cast<int>(pole);
    map.quality = dirichlet_energy(system, map.f);
    map.flipped_triangles = count_flipped_triangles(mesh.faces, map.f);
    return map;
}

InitialMap initial_spherical_map(const Mesh& mesh) {
    return initial_spherical_map(mesh, assemble_cotangent_laplacian(mesh));
}

}  // namespace sphereconf
