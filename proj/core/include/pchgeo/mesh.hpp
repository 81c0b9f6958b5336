#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace pchgeo {

using Index = std::int32_t;

/// Opposite index of a half-edge that lies on the mesh boundary.
inline constexpr Index kBoundary = -1;

/// Half-width of the band around 2*pi in which a vertex counts as euclidean.
inline constexpr double kAngleEpsilon = 1e-9;

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

double distance(const Vec3& a, const Vec3& b);

enum class VertexClass : std::uint8_t { spherical, euclidean, saddle };

const char* to_string(VertexClass c);

struct HalfEdge {
  Index origin = 0;
  Index opposite = kBoundary;
  double length = 0.0;
};

using Triangle = std::array<Index, 3>;

class MeshError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Next half-edge around the same triangle: 3*floor(j/3) + (j+1) mod 3.
constexpr Index next_half_edge(Index j) { return 3 * (j / 3) + (j + 1) % 3; }
constexpr Index prev_half_edge(Index j) { return 3 * (j / 3) + (j + 2) % 3; }
constexpr Index face_of(Index j) { return j / 3; }

/// Minimal half-edge triangle mesh.
///
/// Half-edges 3f, 3f+1, 3f+2 belong to triangle f and run in the triangle's
/// vertex order. Only origin, opposite and length are stored; everything else
/// is derived. Faces must be consistently oriented so that every interior
/// edge is traversed once in each direction.
///
/// Besides the minimal layout the mesh caches per-vertex angle sums and, for
/// each half-edge, the angular offset of its corner inside the vertex's
/// rotation. Both are pure functions of the edge lengths.
class SurfaceMesh {
 public:
  SurfaceMesh() = default;

  /// Builds and validates a mesh. Throws MeshError on out-of-range indices,
  /// zero-length edges, degenerate triangles, non-manifold edges or vertices,
  /// and inconsistently oriented neighbours.
  static SurfaceMesh from_triangles(std::vector<Vec3> positions, std::span<const Triangle> faces);

  std::size_t vertex_count() const { return positions_.size(); }
  std::size_t face_count() const { return half_edges_.size() / 3; }
  std::size_t half_edge_count() const { return half_edges_.size(); }

  std::span<const Vec3> positions() const { return positions_; }
  const Vec3& position(Index v) const { return positions_[static_cast<std::size_t>(v)]; }

  std::span<const HalfEdge> half_edges() const { return half_edges_; }
  const HalfEdge& half_edge(Index j) const { return half_edges_[static_cast<std::size_t>(j)]; }
  Index origin(Index j) const { return half_edge(j).origin; }
  Index target(Index j) const { return half_edge(next_half_edge(j)).origin; }
  Index opposite(Index j) const { return half_edge(j).opposite; }
  double length(Index j) const { return half_edge(j).length; }
  bool is_boundary_half_edge(Index j) const { return half_edge(j).opposite == kBoundary; }

  Triangle face_vertices(Index f) const;

  /// One outgoing half-edge of v, or kBoundary for an isolated vertex. For a
  /// boundary vertex this is the half-edge whose clockwise neighbour is
  /// missing, so a counter-clockwise walk from it visits the whole fan.
  Index outgoing(Index v) const { return outgoing_[static_cast<std::size_t>(v)]; }

  /// Next outgoing half-edge counter-clockwise around origin(j), or kBoundary.
  Index rotate_ccw(Index j) const { return opposite(prev_half_edge(j)); }

  /// Outgoing half-edges of v in counter-clockwise order starting at outgoing(v).
  std::vector<Index> outgoing_half_edges(Index v) const;

  /// Neighbour vertices of v in rotational order. Cyclic for interior vertices;
  /// for boundary vertices the first and last entries are the boundary neighbours.
  std::vector<Index> one_ring(Index v) const;

  bool is_boundary_vertex(Index v) const { return boundary_vertex_[static_cast<std::size_t>(v)] != 0; }
  bool is_isolated(Index v) const { return outgoing(v) == kBoundary; }

  /// Interior angle of triangle face_of(j) at origin(j).
  double corner_angle(Index j) const { return corner_angle_[static_cast<std::size_t>(j)]; }

  /// Angle from outgoing(origin(j)) to j, counter-clockwise around origin(j).
  double corner_offset(Index j) const { return corner_offset_[static_cast<std::size_t>(j)]; }

  double total_angle(Index v) const { return total_angle_[static_cast<std::size_t>(v)]; }
  VertexClass vertex_class(Index v) const { return vertex_class_[static_cast<std::size_t>(v)]; }

  /// Whether shortest paths may bend at v: interior saddles, and boundary
  /// vertices whose wedge is wider than pi.
  bool bends_geodesics(Index v) const;

 private:
  std::vector<Vec3> positions_;
  std::vector<HalfEdge> half_edges_;
  std::vector<Index> outgoing_;
  std::vector<std::uint8_t> boundary_vertex_;
  std::vector<double> corner_angle_;
  std::vector<double> corner_offset_;
  std::vector<double> total_angle_;
  std::vector<VertexClass> vertex_class_;
};

/// Classifies v by comparing its angle sum with 2*pi (band kAngleEpsilon).
VertexClass classify_vertex(const SurfaceMesh& mesh, Index v);

/// Angle opposite side c in a triangle with sides a, b, c (law of cosines).
double angle_from_lengths(double a, double b, double c);

}  // namespace pchgeo
