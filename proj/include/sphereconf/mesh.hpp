#pragma once

#include <array>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace sphereconf {

/// Closed triangular surface mesh. Vertices and faces are authoritative;
/// edges and per-vertex adjacency are derived once at construction and the
/// mesh is treated as immutable afterwards.
struct Mesh {
    Eigen::MatrixX3d vertices;  // n x 3 positions
    Eigen::MatrixX3i faces;     // #F x 3 vertex indices

    std::vector<std::array<int, 2>> edges;   // unordered pairs (i < j), sorted
    std::vector<std::vector<int>> neighbors; // sorted one-ring per vertex

    int num_vertices() const { return static_cast<int>(vertices.rows()); }
    int num_faces() const { return static_cast<int>(faces.rows()); }
    int num_edges() const { return static_cast<int>(edges.size()); }
};

/// Builds a Mesh and derives its adjacency. Throws on out-of-range or
/// repeated vertex indices within a face.
Mesh make_mesh(Eigen::MatrixX3d vertices, Eigen::MatrixX3i faces);

/// Result of the genus-zero validity checks. Every failed check appends a
/// human-readable entry to `failures`.
struct ValidationReport {
    bool closed = false;              // every edge bounds exactly two faces
    bool oriented = false;            // each shared edge traversed once per direction
    bool connected = false;           // one face-connected component, no isolated vertices
    bool genus_zero = false;          // V - E + F == 2
    bool no_degenerate_faces = false; // no face area below 1e-14 x mean area
    long euler_characteristic = 0;
    std::vector<std::string> failures;

    bool ok() const {
        return closed && oriented && connected && genus_zero && no_degenerate_faces;
    }
};

ValidationReport validate_genus_zero(const Mesh& mesh);

/// Throws with the first failure message when validation does not pass.
void require_genus_zero(const Mesh& mesh);

double face_area(const Mesh& mesh, int face);
double total_area(const Mesh& mesh);

/// Uniformly scales the vertices so the summed triangle area equals
/// `target`. Combinatorics are untouched. Throws on zero total area.
Mesh normalize_area(const Mesh& mesh, double target);

/// Interior angles (radians) at the three corners of every face of (V, F);
/// column c holds the angle at vertex F(f, c). Throws on collinear corners.
Eigen::MatrixX3d corner_angles(const Eigen::MatrixX3d& vertices,
                               const Eigen::MatrixX3i& faces);

inline Eigen::MatrixX3d corner_angles(const Mesh& mesh) {
    return corner_angles(mesh.vertices, mesh.faces);
}

}  // namespace sphereconf
