#include "sphereconf/mesh_io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace sphereconf {

namespace {

// Reads the next whitespace-separated token, skipping '#' comments.
bool next_token(std::istream& in, std::string& token) {
    while (in >> token) {
        if (token[0] == '#') {
            std::string rest;
            std::getline(in, rest);
            continue;
        }
        return true;
    }
    return false;
}

double parse_double(const std::string& token, const char* what) {
    size_t pos = 0;
    double value = 0.0;
    try {
        value = std::stod(token, &pos);
    } catch (const std::exception&) {
        throw std::runtime_error(std::string("mesh: malformed ") + what + " '" + token + "'");
    }
    if (pos != token.size())
        throw std::runtime_error(std::string("mesh: malformed ") + what + " '" + token + "'");
    return value;
}

long parse_long(const std::string& token, const char* what) {
    size_t pos = 0;
    long value = 0;
    try {
        value = std::stol(token, &pos);
    } catch (const std::exception&) {
        throw std::runtime_error(std::string("mesh: malformed ") + what + " '" + token + "'");
    }
    if (pos != token.size())
        throw std::runtime_error(std::string("mesh: malformed ") + what + " '" + token + "'");
    return value;
}

Mesh load_off(std::istream& in) {
    std::string token;
    if (!next_token(in, token) || token != "OFF")
        throw std::runtime_error("mesh: missing OFF header");

    long counts[3];
    for (long& c : counts) {
        if (!next_token(in, token))
            throw std::runtime_error("mesh: truncated OFF counts line");
        c = parse_long(token, "OFF count");
    }
    const long nv = counts[0], nf = counts[1];
    if (nv < 0 || nf < 0) throw std::runtime_error("mesh: negative OFF counts");

    Eigen::MatrixX3d vertices(nv, 3);
    for (long v = 0; v < nv; ++v) {
        for (int c = 0; c < 3; ++c) {
            if (!next_token(in, token))
                throw std::runtime_error("mesh: truncated OFF vertex list");
            vertices(v, c) = parse_double(token, "OFF coordinate");
        }
    }

    Eigen::MatrixX3i faces(nf, 3);
    for (long f = 0; f < nf; ++f) {
        if (!next_token(in, token))
            throw std::runtime_error("mesh: truncated OFF face list");
        const long arity = parse_long(token, "OFF face size");
        if (arity != 3)
            throw std::runtime_error("mesh: non-triangular OFF face of size " +
                                     std::to_string(arity));
        for (int c = 0; c < 3; ++c) {
            if (!next_token(in, token))
                throw std::runtime_error("mesh: truncated OFF face list");
            faces(f, c) = static_cast<int>(parse_long(token, "OFF face index"));
        }
    }
    return make_mesh(std::move(vertices), std::move(faces));
}

// Leading integer of an OBJ face token, i.e. "7", "7/2" and "7/2/5" all give 7.
long obj_face_index(const std::string& token) {
    const size_t slash = token.find('/');
    const std::string head = slash == std::string::npos ? token : token.substr(0, slash);
    const long idx = parse_long(head, "OBJ face index");
    if (idx <= 0)
        throw std::runtime_error("mesh: OBJ face index " + std::to_string(idx) +
                                 " out of range (1-based indices required)");
    return idx;
}

Mesh load_obj(std::istream& in) {
    std::vector<Eigen::RowVector3d> vertices;
    std::vector<Eigen::RowVector3i> faces;

    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key) || key[0] == '#') continue;
        if (key == "v") {
            Eigen::RowVector3d p;
            std::string tok;
            for (int c = 0; c < 3; ++c) {
                if (!(ls >> tok)) throw std::runtime_error("mesh: truncated OBJ vertex line");
                p[c] = parse_double(tok, "OBJ coordinate");
            }
            vertices.push_back(p);
        } else if (key == "f") {
            std::vector<long> idx;
            std::string tok;
            while (ls >> tok) {
                if (tok[0] == '#') break;
                idx.push_back(obj_face_index(tok));
            }
            if (idx.size() != 3)
                throw std::runtime_error("mesh: non-triangular OBJ face of size " +
                                         std::to_string(idx.size()));
            faces.push_back(Eigen::RowVector3i(static_cast<int>(idx[0] - 1),
                                               static_cast<int>(idx[1] - 1),
                                               static_cast<int>(idx[2] - 1)));
        }
        // All other record types are skipped.
    }

    Eigen::MatrixX3d V(vertices.size(), 3);
    for (size_t i = 0; i < vertices.size(); ++i) V.row(i) = vertices[i];
    Eigen::MatrixX3i F(faces.size(), 3);
    for (size_t i = 0; i < faces.size(); ++i) F.row(i) = faces[i];
    return make_mesh(std::move(V), std::move(F));
}

std::string format_coord(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

}  // namespace

MeshFormat guess_format(const std::string& path) {
    const size_t dot = path.rfind('.');
    std::string ext = dot == std::string::npos ? "" : path.substr(dot + 1);
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (ext == "off") return MeshFormat::off;
    if (ext == "obj") return MeshFormat::obj;
    throw std::runtime_error("mesh: unknown mesh format for '" + path +
                             "' (expected .off or .obj)");
}

Mesh load_mesh(std::istream& in, MeshFormat format) {
    return format == MeshFormat::off ? load_off(in) : load_obj(in);
}

Mesh load_mesh_file(const std::string& path) {
    const MeshFormat format = guess_format(path);
    std::ifstream in(path);
    if (!in) throw std::runtime_error("mesh: cannot open '" + path + "'");
    return load_mesh(in, format);
}

void write_mesh(std::ostream& out, const Mesh& mesh, MeshFormat format) {
    if (format == MeshFormat::off) {
        out << "OFF\n"
            << mesh.num_vertices() << ' ' << mesh.num_faces() << ' ' << mesh.num_edges()
            << '\n';
        for (int v = 0; v < mesh.num_vertices(); ++v)
            out << format_coord(mesh.vertices(v, 0)) << ' '
                << format_coord(mesh.vertices(v, 1)) << ' '
                << format_coord(mesh.vertices(v, 2)) << '\n';
        for (int f = 0; f < mesh.num_faces(); ++f)
            out << "3 " << mesh.faces(f, 0) << ' ' << mesh.faces(f, 1) << ' '
                << mesh.faces(f, 2) << '\n';
    } else {
        for (int v = 0; v < mesh.num_vertices(); ++v)
            out << "v " << format_coord(mesh.vertices(v, 0)) << ' '
                << format_coord(mesh.vertices(v, 1)) << ' '
                << format_coord(mesh.vertices(v, 2)) << '\n';
        for (int f = 0; f < mesh.num_faces(); ++f)
            out << "f " << mesh.faces(f, 0) + 1 << ' ' << mesh.faces(f, 1) + 1 << ' '
                << mesh.faces(f, 2) + 1 << '\n';
    }
}

void write_mesh_file(const std::string& path, const Mesh& mesh, MeshFormat format) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("mesh: cannot write '" + path + "'");
    write_mesh(out, mesh, format);
}

}  // namespace sphereconf
