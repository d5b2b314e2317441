#include "support/test_meshes.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <utility>
#include <vector>

namespace sphereconf::testing {

Mesh make_tetrahedron() {
    Eigen::MatrixX3d V(4, 3);
    const double s = 1.0 / std::sqrt(3.0);
    V << s, s, s, s, -s, -s, -s, s, -s, -s, -s, s;
    Eigen::MatrixX3i F(4, 3);
    F << 0, 1, 2, 0, 3, 1, 0, 2, 3, 1, 3, 2;
    return make_mesh(V, F);
}

Mesh make_icosahedron() {
    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    Eigen::MatrixX3d V(12, 3);
    V << -1, phi, 0, 1, phi, 0, -1, -phi, 0, 1, -phi, 0, 0, -1, phi, 0, 1, phi, 0, -1,
        -phi, 0, 1, -phi, phi, 0, -1, phi, 0, 1, -phi, 0, -1, -phi, 0, 1;
    V.rowwise().normalize();
    Eigen::MatrixX3i F(20, 3);
    F << 0, 11, 5, 0, 5, 1, 0, 1, 7, 0, 7, 10, 0, 10, 11, 1, 5, 9, 5, 11, 4, 11, 10, 2,
        10, 7, 6, 7, 1, 8, 3, 9, 4, 3, 4, 2, 3, 2, 6, 3, 6, 8, 3, 8, 9, 4, 9, 5, 2, 4,
        11, 6, 2, 10, 8, 6, 7, 9, 8, 1;
    return make_mesh(V, F);
}

Mesh make_icosphere(int level) {
    Mesh mesh = make_icosahedron();
    for (int l = 0; l < level; ++l) {
        std::vector<Eigen::RowVector3d> vertices;
        vertices.reserve(mesh.num_vertices() + mesh.num_edges());
        for (int v = 0; v < mesh.num_vertices(); ++v)
            vertices.push_back(mesh.vertices.row(v));

        std::map<std::pair<int, int>, int> midpoint;
        const auto midpoint_of = [&](int a, int b) {
            const auto key = std::minmax(a, b);
            const auto it = midpoint.find(key);
            if (it != midpoint.end()) return it->second;
            Eigen::RowVector3d m = 0.5 * (mesh.vertices.row(a) + mesh.vertices.row(b));
            m.normalize();
            const int idx = static_cast<int>(vertices.size());
            vertices.push_back(m);
            midpoint.emplace(key, idx);
            return idx;
        };

        Eigen::MatrixX3i faces(mesh.num_faces() * 4, 3);
        for (int f = 0; f < mesh.num_faces(); ++f) {
            const int a = mesh.faces(f, 0), b = mesh.faces(f, 1), c = mesh.faces(f, 2);
            const int ab = midpoint_of(a, b), bc = midpoint_of(b, c),
                      ca = midpoint_of(c, a);
            faces.row(4 * f + 0) << a, ab, ca;
            faces.row(4 * f + 1) << b, bc, ab;
            faces.row(4 * f + 2) << c, ca, bc;
            faces.row(4 * f + 3) << ab, bc, ca;
        }

        Eigen::MatrixX3d V(vertices.size(), 3);
        for (size_t i = 0; i < vertices.size(); ++i) V.row(i) = vertices[i];
        mesh = make_mesh(std::move(V), std::move(faces));
    }
    return mesh;
}

Mesh make_cube() {
    Eigen::MatrixX3d V(8, 3);
    V << 0, 0, 0, 1, 0, 0, 1, 1, 0, 0, 1, 0, 0, 0, 1, 1, 0, 1, 1, 1, 1, 0, 1, 1;
    // Two triangles per square face, all windings outward.
    Eigen::MatrixX3i F(12, 3);
    F << 0, 2, 1, 0, 3, 2,  // bottom (z = 0)
        4, 5, 6, 4, 6, 7,   // top (z = 1)
        0, 1, 5, 0, 5, 4,   // front (y = 0)
        2, 3, 7, 2, 7, 6,   // back (y = 1)
        1, 2, 6, 1, 6, 5,   // right (x = 1)
        3, 0, 4, 3, 4, 7;   // left (x = 0)
    return make_mesh(V, F);
}

Mesh make_torus(int major_segments, int minor_segments) {
    const int nu = major_segments, nv = minor_segments;
    Eigen::MatrixX3d V(nu * nv, 3);
    for (int i = 0; i < nu; ++i) {
        const double a = 2.0 * std::numbers::pi * i / nu;
        for (int j = 0; j < nv; ++j) {
            const double b = 2.0 * std::numbers::pi * j / nv;
            const double r = 2.0 + 0.5 * std::cos(b);
            V.row(i * nv + j) << r * std::cos(a), r * std::sin(a), 0.5 * std::sin(b);
        }
    }
    Eigen::MatrixX3i F(2 * nu * nv, 3);
    int f = 0;
    for (int i = 0; i < nu; ++i) {
        const int i2 = (i + 1) % nu;
        for (int j = 0; j < nv; ++j) {
            const int j2 = (j + 1) % nv;
            const int a = i * nv + j, b = i2 * nv + j, c = i2 * nv + j2, d = i * nv + j2;
            F.row(f++) << a, b, c;
            F.row(f++) << a, c, d;
        }
    }
    return make_mesh(V, F);
}

Mesh perturb_on_sphere(const Mesh& sphere_mesh, double amp, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> noise(-amp, amp);
    Eigen::MatrixX3d V = sphere_mesh.vertices;
    for (Eigen::Index i = 0; i < V.rows(); ++i) {
        for (int c = 0; c < 3; ++c) V(i, c) += noise(rng);
        V.row(i).normalize();
    }
    return make_mesh(V, sphere_mesh.faces);
}

Mesh perturb_radial(const Mesh& sphere_mesh, double amp, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> noise(-amp, amp);
    Eigen::MatrixX3d V = sphere_mesh.vertices;
    for (Eigen::Index i = 0; i < V.rows(); ++i) V.row(i) *= 1.0 + noise(rng);
    return make_mesh(V, sphere_mesh.faces);
}

std::string tetrahedron_off_text() {
    return "OFF\n"
           "4 4 6\n"
           "0.577350269189626 0.577350269189626 0.577350269189626\n"
           "0.577350269189626 -0.577350269189626 -0.577350269189626\n"
           "-0.577350269189626 0.577350269189626 -0.577350269189626\n"
           "-0.577350269189626 -0.577350269189626 0.577350269189626\n"
           "3 0 1 2\n"
           "3 0 3 1\n"
           "3 0 2 3\n"
           "3 1 3 2\n";
}

std::string icosahedron_obj_text() {
    const Mesh mesh = make_icosahedron();
    std::ostringstream out;
    out << "# icosahedron\n";
    for (int v = 0; v < mesh.num_vertices(); ++v)
        out << "v " << mesh.vertices(v, 0) << ' ' << mesh.vertices(v, 1) << ' '
            << mesh.vertices(v, 2) << '\n';
    for (int f = 0; f < mesh.num_faces(); ++f)
        out << "f " << mesh.faces(f, 0) + 1 << ' ' << mesh.faces(f, 1) + 1 << ' '
            << mesh.faces(f, 2) + 1 << '\n';
    return out.str();
}

std::string single_triangle_off_text() {
    return "OFF\n3 1 3\n0 0 0\n1 0 0\n0 1 0\n3 0 1 2\n";
}

}  // namespace sphereconf::testing
