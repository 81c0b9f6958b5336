#include "pchgeo/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <unordered_map>

namespace pchgeo {

namespace {

// Relative slack below which a triangle counts as degenerate.
constexpr double kDegenerateRelative = 1e-12;

std::uint64_t directed_key(Index a, Index b) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
         static_cast<std::uint32_t>(b);
}

std::string face_context(std::size_t f) { return " (face " + std::to_string(f) + ")"; }

}  // namespace

double distance(const Vec3& a, const Vec3& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  const double dz = a.z - b.z;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

const char* to_string(VertexClass c) {
  switch (c) {
    case VertexClass::spherical: return "spherical";
    case VertexClass::euclidean: return "euclidean";
    case VertexClass::saddle: return "saddle";
  }
  return "unknown";
}

double angle_from_lengths(double a, double b, double c) {
  const double cosine = (a * a + b * b - c * c) / (2.0 * a * b);
  return std::acos(std::clamp(cosine, -1.0, 1.0));
}

SurfaceMesh SurfaceMesh::from_triangles(std::vector<Vec3> positions, std::span<const Triangle> faces) {
  SurfaceMesh mesh;
  const auto vertex_count = positions.size();
  if (vertex_count > static_cast<std::size_t>(INT32_MAX) || faces.size() * 3 > static_cast<std::size_t>(INT32_MAX)) {
    throw MeshError("mesh too large for 32-bit indices");
  }
  for (const auto& p : positions) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z)) {
      throw MeshError("non-finite vertex coordinate");
    }
  }
  mesh.positions_ = std::move(positions);
  mesh.half_edges_.resize(faces.size() * 3);

  std::unordered_map<std::uint64_t, Index> directed;
  directed.reserve(faces.size() * 3);
  std::unordered_map<std::uint64_t, int> undirected_uses;
  undirected_uses.reserve(faces.size() * 3);

  for (std::size_t f = 0; f < faces.size(); ++f) {
    const Triangle& tri = faces[f];
    for (int c = 0; c < 3; ++c) {
      if (tri[c] < 0 || static_cast<std::size_t>(tri[c]) >= vertex_count) {
        throw MeshError("vertex index out of range" + face_context(f));
      }
    }
    if (tri[0] == tri[1] || tri[1] == tri[2] || tri[2] == tri[0]) {
      throw MeshError("zero-length edge" + face_context(f));
    }
    std::array<double, 3> len{};
    for (int c = 0; c < 3; ++c) {
      const Index a = tri[c];
      const Index b = tri[(c + 1) % 3];
      // Same formula for both directions so that twins match bit for bit.
      len[c] = a < b ? distance(mesh.position(a), mesh.position(b)) : distance(mesh.position(b), mesh.position(a));
      if (!(len[c] > 0.0)) throw MeshError("zero-length edge" + face_context(f));
    }
    const double longest = std::max({len[0], len[1], len[2]});
    const double sum = len[0] + len[1] + len[2];
    if (sum - 2.0 * longest <= kDegenerateRelative * longest) {
      throw MeshError("degenerate triangle" + face_context(f));
    }
    for (int c = 0; c < 3; ++c) {
      const auto j = static_cast<Index>(3 * f + static_cast<std::size_t>(c));
      const Index a = tri[c];
      const Index b = tri[(c + 1) % 3];
      mesh.half_edges_[static_cast<std::size_t>(j)] = HalfEdge{a, kBoundary, len[c]};
      if (++undirected_uses[directed_key(std::min(a, b), std::max(a, b))] > 2) {
        throw MeshError("non-manifold edge " + std::to_string(a) + "-" + std::to_string(b));
      }
      if (!directed.emplace(directed_key(a, b), j).second) {
        throw MeshError("inconsistently oriented faces at edge " + std::to_string(a) + "-" + std::to_string(b));
      }
    }
  }

  for (auto& [key, j] : directed) {
    const auto a = static_cast<Index>(key >> 32);
    const auto b = static_cast<Index>(key & 0xffffffffu);
    if (const auto it = directed.find(directed_key(b, a)); it != directed.end()) {
      mesh.half_edges_[static_cast<std::size_t>(j)].opposite = it->second;
    }
  }

  mesh.outgoing_.assign(vertex_count, kBoundary);
  mesh.boundary_vertex_.assign(vertex_count, 0);
  std::vector<int> outgoing_counts(vertex_count, 0);
  for (std::size_t j = 0; j < mesh.half_edges_.size(); ++j) {
    const auto& he = mesh.half_edges_[j];
    const auto v = static_cast<std::size_t>(he.origin);
    ++outgoing_counts[v];
    if (he.opposite == kBoundary) {
      mesh.boundary_vertex_[v] = 1;
      mesh.outgoing_[v] = static_cast<Index>(j);
    } else if (mesh.outgoing_[v] == kBoundary) {
      mesh.outgoing_[v] = static_cast<Index>(j);
    }
  }

  mesh.corner_angle_.resize(mesh.half_edges_.size());
  for (std::size_t j = 0; j < mesh.half_edges_.size(); ++j) {
    const auto h = static_cast<Index>(j);
    mesh.corner_angle_[j] =
        angle_from_lengths(mesh.length(h), mesh.length(prev_half_edge(h)), mesh.length(next_half_edge(h)));
  }

  mesh.corner_offset_.assign(mesh.half_edges_.size(), 0.0);
  mesh.total_angle_.assign(vertex_count, 0.0);
  mesh.vertex_class_.assign(vertex_count, VertexClass::spherical);
  for (std::size_t v = 0; v < vertex_count; ++v) {
    const Index start = mesh.outgoing_[v];
    if (start == kBoundary) continue;
    int visited = 0;
    double offset = 0.0;
    Index h = start;
    do {
      mesh.corner_offset_[static_cast<std::size_t>(h)] = offset;
      offset += mesh.corner_angle(h);
      ++visited;
      h = mesh.rotate_ccw(h);
    } while (h != kBoundary && h != start && visited <= outgoing_counts[v]);
    if (visited != outgoing_counts[v] || (h == kBoundary) != (mesh.boundary_vertex_[v] != 0)) {
      throw MeshError("non-manifold vertex " + std::to_string(v));
    }
    mesh.total_angle_[v] = offset;
    mesh.vertex_class_[v] = classify_vertex(mesh, static_cast<Index>(v));
  }
  return mesh;
}

Triangle SurfaceMesh::face_vertices(Index f) const {
  return {origin(3 * f), origin(3 * f + 1), origin(3 * f + 2)};
}

std::vector<Index> SurfaceMesh::outgoing_half_edges(Index v) const {
  std::vector<Index> result;
  const Index start = outgoing(v);
  if (start == kBoundary) return result;
  Index h = start;
  do {
    result.push_back(h);
    h = rotate_ccw(h);
  } while (h != kBoundary && h != start);
  return result;
}

std::vector<Index> SurfaceMesh::one_ring(Index v) const {
  std::vector<Index> ring;
  const auto corners = outgoing_half_edges(v);
  ring.reserve(corners.size() + 1);
  for (const Index h : corners) ring.push_back(target(h));
  if (!corners.empty() && is_boundary_vertex(v)) {
    ring.push_back(origin(prev_half_edge(corners.back())));
  }
  return ring;
}

bool SurfaceMesh::bends_geodesics(Index v) const {
  if (is_isolated(v)) return false;
  if (is_boundary_vertex(v)) return total_angle(v) > std::numbers::pi + kAngleEpsilon;
  return vertex_class(v) == VertexClass::saddle;
}

VertexClass classify_vertex(const SurfaceMesh& mesh, Index v) {
  double total = 0.0;
  for (const Index h : mesh.outgoing_half_edges(v)) total += mesh.corner_angle(h);
  constexpr double two_pi = 2.0 * std::numbers::pi;
  if (total < two_pi - kAngleEpsilon) return VertexClass::spherical;
  if (total > two_pi + kAngleEpsilon) return VertexClass::saddle;
  return VertexClass::euclidean;
}

}  // namespace pchgeo
