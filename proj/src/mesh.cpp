#include "sphereconf/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <Eigen/Geometry>

namespace sphereconf {

namespace {

std::array<int, 2> undirected(int a, int b) {
    return {std::min(a, b), std::max(a, b)};
}

// Union-find over vertex ids.
struct DisjointSet {
    std::vector<int> parent;
    explicit DisjointSet(int n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

Mesh make_mesh(Eigen::MatrixX3d vertices, Eigen::MatrixX3i faces) {
    const int n = static_cast<int>(vertices.rows());
    for (Eigen::Index f = 0; f < faces.rows(); ++f) {
        for (int c = 0; c < 3; ++c) {
            const int v = faces(f, c);
            if (v < 0 || v >= n)
                throw std::runtime_error("mesh: face " + std::to_string(f) +
                                         " references out-of-range vertex index " +
                                         std::to_string(v));
        }
        if (faces(f, 0) == faces(f, 1) || faces(f, 1) == faces(f, 2) ||
            faces(f, 0) == faces(f, 2))
            throw std::runtime_error("mesh: face " + std::to_string(f) +
                                     " repeats a vertex index");
    }

    Mesh mesh;
    mesh.vertices = std::move(vertices);
    mesh.faces = std::move(faces);

    std::vector<std::array<int, 2>> all;
    all.reserve(static_cast<size_t>(mesh.faces.rows()) * 3);
    for (Eigen::Index f = 0; f < mesh.faces.rows(); ++f) {
        all.push_back(undirected(mesh.faces(f, 0), mesh.faces(f, 1)));
        all.push_back(undirected(mesh.faces(f, 1), mesh.faces(f, 2)));
        all.push_back(undirected(mesh.faces(f, 2), mesh.faces(f, 0)));
    }
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    mesh.edges = std::move(all);

    mesh.neighbors.assign(n, {});
    for (const auto& e : mesh.edges) {
        mesh.neighbors[e[0]].push_back(e[1]);
        mesh.neighbors[e[1]].push_back(e[0]);
    }
    for (auto& list : mesh.neighbors) std::sort(list.begin(), list.end());

    return mesh;
}

ValidationReport validate_genus_zero(const Mesh& mesh) {
    ValidationReport report;
    const int n = mesh.num_vertices();
    const int num_faces = mesh.num_faces();

    // Edge multiplicities over face boundaries. Directed edges detect both
    // non-manifold edges and inconsistent winding.
    std::vector<std::array<int, 2>> directed;
    directed.reserve(static_cast<size_t>(num_faces) * 3);
    for (Eigen::Index f = 0; f < mesh.faces.rows(); ++f) {
        directed.push_back({mesh.faces(f, 0), mesh.faces(f, 1)});
        directed.push_back({mesh.faces(f, 1), mesh.faces(f, 2)});
        directed.push_back({mesh.faces(f, 2), mesh.faces(f, 0)});
    }
    std::sort(directed.begin(), directed.end());

    bool duplicate_directed = false;
    for (size_t i = 0; i + 1 < directed.size(); ++i)
        if (directed[i] == directed[i + 1]) duplicate_directed = true;

    std::vector<std::array<int, 2>> undirected_all;
    undirected_all.reserve(directed.size());
    for (const auto& e : directed) undirected_all.push_back(undirected(e[0], e[1]));
    std::sort(undirected_all.begin(), undirected_all.end());

    report.closed = true;
    for (size_t i = 0; i < undirected_all.size();) {
        size_t j = i;
        while (j < undirected_all.size() && undirected_all[j] == undirected_all[i]) ++j;
        if (j - i != 2) {
            report.closed = false;
            report.failures.push_back(
                "not-closed: edge (" + std::to_string(undirected_all[i][0]) + "," +
                std::to_string(undirected_all[i][1]) + ") bounds " +
                std::to_string(j - i) + " face(s)");
            break;
        }
        i = j;
    }

    report.oriented = report.closed && !duplicate_directed;
    if (report.closed && duplicate_directed)
        report.failures.push_back(
            "non-orientable: a directed edge is traversed twice (inconsistent winding)");
    if (!report.closed && duplicate_directed)
        report.failures.push_back("non-orientable: duplicated directed edge");

    // Connectivity: faces joined through shared vertices, and every vertex
    // must be used by some face.
    DisjointSet ds(n);
    std::vector<char> referenced(n, 0);
    for (Eigen::Index f = 0; f < mesh.faces.rows(); ++f) {
        ds.unite(mesh.faces(f, 0), mesh.faces(f, 1));
        ds.unite(mesh.faces(f, 1), mesh.faces(f, 2));
        for (int c = 0; c < 3; ++c) referenced[mesh.faces(f, c)] = 1;
    }
    report.connected = n > 0 && num_faces > 0;
    for (int v = 0; v < n && report.connected; ++v) {
        if (!referenced[v]) {
            report.connected = false;
            report.failures.push_back("disconnected: vertex " + std::to_string(v) +
                                      " belongs to no face");
        } else if (ds.find(v) != ds.find(0)) {
            report.connected = false;
            report.failures.push_back("disconnected: more than one component");
        }
    }

    report.euler_characteristic =
        static_cast<long>(n) - static_cast<long>(mesh.num_edges()) +
        static_cast<long>(num_faces);
    report.genus_zero = report.euler_characteristic == 2;
    if (!report.genus_zero)
        report.failures.push_back("wrong genus: Euler characteristic V-E+F = " +
                                  std::to_string(report.euler_characteristic) +
                                  " (expected 2)");

    report.no_degenerate_faces = true;
    if (num_faces > 0) {
        Eigen::VectorXd areas(num_faces);
        for (int f = 0; f < num_faces; ++f) areas[f] = face_area(mesh, f);
        const double mean_area = areas.mean();
        for (int f = 0; f < num_faces; ++f) {
            if (areas[f] < 1e-14 * mean_area) {
                report.no_degenerate_faces = false;
                report.failures.push_back("degenerate face " + std::to_string(f) +
                                          ": area below 1e-14 x mean face area");
                break;
            }
        }
    }

    return report;
}

void require_genus_zero(const Mesh& mesh) {
    const ValidationReport report = validate_genus_zero(mesh);
    if (!report.ok()) {
        std::string msg = "mesh: validation failed:";
        for (const auto& failure : report.failures) msg += " [" + failure + "]";
        throw std::runtime_error(msg);
    }
}

double face_area(const Mesh& mesh, int face) {
    const Eigen::RowVector3d a = mesh.vertices.row(mesh.faces(face, 0));
    const Eigen::RowVector3d b = mesh.vertices.row(mesh.faces(face, 1));
    const Eigen::RowVector3d c = mesh.vertices.row(mesh.faces(face, 2));
    return 0.5 * (b - a).cross(c - a).norm();
}

double total_area(const Mesh& mesh) {
    double area = 0.0;
    for (int f = 0; f < mesh.num_faces(); ++f) area += face_area(mesh, f);
    return area;
}

Mesh normalize_area(const Mesh& mesh, double target) {
    if (target <= 0.0)
        throw std::runtime_error("mesh: normalize_area target must be positive");
    const double area = total_area(mesh);
    if (area <= 0.0)
        throw std::runtime_error("mesh: normalize_area on zero total area");
    Mesh scaled = mesh;
    scaled.vertices *= std::sqrt(target / area);
    return scaled;
}

Eigen::MatrixX3d corner_angles(const Eigen::MatrixX3d& vertices,
                               const Eigen::MatrixX3i& faces) {
    Eigen::MatrixX3d angles(faces.rows(), 3);
    for (Eigen::Index f = 0; f < faces.rows(); ++f) {
        for (int c = 0; c < 3; ++c) {
            const Eigen::RowVector3d p = vertices.row(faces(f, c));
            const Eigen::RowVector3d u = vertices.row(faces(f, (c + 1) % 3)) - p;
            const Eigen::RowVector3d v = vertices.row(faces(f, (c + 2) % 3)) - p;
            const double cross_norm = u.cross(v).norm();
            const double scale = u.norm() * v.norm();
            if (!(cross_norm > 1e-14 * scale))
                throw std::runtime_error("mesh: degenerate face " + std::to_string(f) +
                                         " (collinear vertices)");
            angles(f, c) = std::atan2(cross_norm, u.dot(v));
        }
    }
    return angles;
}

}  // namespace sphereconf
