#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "pchgeo/mesh.hpp"

namespace pchgeo {

/// One line per vertex: `index<TAB>distance`, 17 significant digits, `inf`
/// for unreachable vertices.
void write_distances(std::ostream& out, std::span<const double> distances);

/// Inverse of write_distances. Indices must run 0, 1, 2, ... in order.
/// Throws std::runtime_error on malformed input.
std::vector<double> read_distances(std::istream& in);

/// Whitespace-separated vertex indices; `#` starts a comment.
std::vector<Index> read_sources(std::istream& in);

std::vector<double> load_distances(const std::filesystem::path& path);
std::vector<Index> load_sources(const std::filesystem::path& path);

}  // namespace pchgeo
