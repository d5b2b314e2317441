#pragma once

#include <iosfwd>
#include <string>

#include "sphereconf/mesh.hpp"

namespace sphereconf {

enum class MeshFormat { off, obj };

/// Picks the format from the file extension (.off / .obj, case-insensitive).
MeshFormat guess_format(const std::string& path);

/// Parses OFF ("OFF" header, counts line, vertices, "3 i j k" faces,
/// 0-based) or OBJ ("v x y z" / "f i j k", 1-based; other records skipped).
/// Only triangular faces are accepted.
Mesh load_mesh(std::istream& in, MeshFormat format);
Mesh load_mesh_file(const std::string& path);

void write_mesh(std::ostream& out, const Mesh& mesh, MeshFormat format);
void write_mesh_file(const std::string& path, const Mesh& mesh, MeshFormat format);

}  // namespace sphereconf
