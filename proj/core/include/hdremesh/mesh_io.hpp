#ifndef HDREMESH_MESH_IO_HPP
#define HDREMESH_MESH_IO_HPP

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "hdremesh/mesh.hpp"

namespace hdremesh::io {

// Plain triangle soup as read from disk.
struct TriangleSoup {
    std::vector<Vec3> positions;
    std::vector<Triangle> triangles;
};

TriangleSoup read_off(std::istream& in);
TriangleSoup read_obj(std::istream& in);
void write_off(std::ostream& out, std::span<const Vec3> positions,
               std::span<const Triangle> triangles);
void write_obj(std::ostream& out, std::span<const Vec3> positions,
               std::span<const Triangle> triangles);

// Dispatches on the extension (.off / .obj).
TriangleSoup read_mesh_file(const std::filesystem::path& path);
void write_mesh_file(const std::filesystem::path& path, const SurfaceMesh& mesh,
                     Configuration config);

// planar2d when every z coordinate is exactly zero.
DimensionMode infer_mode(std::span<const Vec3> positions);

// A mesh with history is a pair of files with identical connectivity; the
// triangle lists must match exactly.
SurfaceMesh read_history_pair(const std::filesystem::path& initial_path,
                              const std::filesystem::path& current_path);
void write_history_pair(const SurfaceMesh& mesh, const std::filesystem::path& initial_path,
                        const std::filesystem::path& current_path);

} // namespace hdremesh::io

#endif
