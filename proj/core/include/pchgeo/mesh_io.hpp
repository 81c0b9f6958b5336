#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>

#include "pchgeo/mesh.hpp"

namespace pchgeo {

enum class MeshFormat { automatic, obj, ply };
enum class PlyEncoding { ascii, binary_little_endian };

/// Parses "obj", "ply" or "auto"; throws std::invalid_argument otherwise.
MeshFormat parse_mesh_format(std::string_view name);

/// Loads a triangle mesh. With MeshFormat::automatic the file extension decides.
/// Throws MeshError for malformed content and std::runtime_error for I/O failures.
SurfaceMesh load_mesh(const std::filesystem::path& path, MeshFormat format = MeshFormat::automatic);

/// OBJ subset: `v x y z` and `f a b c`. Indices are 1-based (negative values are
/// relative to the end); texture and normal references after '/' are ignored.
SurfaceMesh read_obj(std::istream& in);

/// PLY in ascii or binary_little_endian with float/double vertex coordinates and
/// list-typed face indices. Extra properties are skipped.
SurfaceMesh read_ply(std::istream& in);

void write_obj(std::ostream& out, const SurfaceMesh& mesh);

/// Writes vertices (x, y, z as float64) and faces. When `distances` is given it
/// must have one entry per vertex and is stored as a float64 vertex property
/// named `geodesic_distance`.
void write_ply(std::ostream& out, const SurfaceMesh& mesh, std::optional<std::span<const double>> distances = {},
               PlyEncoding encoding = PlyEncoding::binary_little_endian);

void save_mesh(const std::filesystem::path& path, const SurfaceMesh& mesh);

}  // namespace pchgeo
