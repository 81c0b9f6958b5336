#include <algorithm>
#include <cmath>
#include <vector>

#include "pchgeo/engine.hpp"

// Exhaustive oracle. Shortest paths are chains of straight segments that meet
// at vertices, and each segment crosses a simple sequence of faces. So for
// every vertex u we unfold all face sequences leaving u while the cone of
// directions that stays inside the sequence is non-empty, record the straight
// distance to every vertex that falls inside the cone, and run Dijkstra over
// the resulting vertex graph. Deliberately shares nothing with the window
// kernel beyond the mesh connectivity.

namespace pchgeo {

namespace {

struct P2 {
  double x;
  double y;
};

P2 sub(P2 a, P2 b) { return {a.x - b.x, a.y - b.y}; }
double crs(P2 a, P2 b) { return a.x * b.y - a.y * b.x; }
double len(P2 a) { return std::hypot(a.x, a.y); }

constexpr double kSlack = 1e-12;

// Third vertex of a triangle on the right of the directed segment a->b.
P2 place_right(P2 a, P2 b, double ac, double bc) {
  const double ab = len(sub(b, a));
  const P2 ex{(b.x - a.x) / ab, (b.y - a.y) / ab};
  const P2 right{ex.y, -ex.x};
  const double x = (ab * ab + ac * ac - bc * bc) / (2.0 * ab);
  const double y = std::sqrt(std::max(0.0, ac * ac - x * x));
  return {a.x + x * ex.x + y * right.x, a.y + x * ex.y + y * right.y};
}

bool within(P2 q, P2 lo, P2 hi) {
  const double s = len(q);
  return crs(lo, q) >= -kSlack * len(lo) * s && crs(q, hi) >= -kSlack * s * len(hi) &&
         lo.x * q.x + lo.y * q.y + hi.x * q.x + hi.y * q.y > 0.0;
}

class Visibility {
 public:
  explicit Visibility(const SurfaceMesh& mesh)
      : mesh_(mesh), n_(mesh.vertex_count()), weight_(n_ * n_, kInfinity), visited_(mesh.face_count(), 0) {}

  void scan(Index u) {
    u_ = u;
    for (const Index hv : mesh_.outgoing_half_edges(u)) {
      const Index a = mesh_.target(hv);
      const Index back = prev_half_edge(hv);
      const Index b = mesh_.origin(back);
      const double ua = mesh_.length(hv);
      const double ub = mesh_.length(back);
      const double ab = mesh_.length(next_half_edge(hv));
      const P2 pa{ua, 0.0};
      // u at the origin, a on +x, b counter-clockwise from a.
      const double x = (ua * ua + ub * ub - ab * ab) / (2.0 * ua);
      const P2 pb{x, std::sqrt(std::max(0.0, ub * ub - x * x))};
      record(a, ua);
      record(b, ub);
      const auto f = static_cast<std::size_t>(face_of(hv));
      visited_[f] = 1;
      explore(next_half_edge(hv), pa, pb, pa, pb);
      visited_[f] = 0;
    }
  }

  double weight(std::size_t a, std::size_t b) const { return weight_[a * n_ + b]; }

 private:
  void record(Index v, double d) {
    double& w = weight_[static_cast<std::size_t>(u_) * n_ + static_cast<std::size_t>(v)];
    w = std::min(w, d);
  }

  // Leave the current face through half-edge e = a->b; the cone [lo, hi] of
  // directions from u is still open.
  void explore(Index e, P2 pa, P2 pb, P2 lo, P2 hi) {
    const Index oe = mesh_.opposite(e);
    if (oe == kBoundary) return;
    const auto g = static_cast<std::size_t>(face_of(oe));
    if (visited_[g]) return;
    const Index to_c = next_half_edge(oe);  // a -> c
    const Index from_c = prev_half_edge(oe);  // c -> b
    const P2 pc = place_right(pa, pb, mesh_.length(to_c), mesh_.length(from_c));
    if (within(pc, lo, hi)) record(mesh_.origin(from_c), len(pc));
    visited_[g] = 1;
    const P2 hi_left = crs(pc, hi) > 0.0 ? pc : hi;
    if (crs(lo, hi_left) > kSlack * len(lo) * len(hi_left)) explore(to_c, pa, pc, lo, hi_left);
    const P2 lo_right = crs(lo, pc) > 0.0 ? pc : lo;
    if (crs(lo_right, hi) > kSlack * len(lo_right) * len(hi)) explore(from_c, pc, pb, lo_right, hi);
    visited_[g] = 0;
  }

  const SurfaceMesh& mesh_;
  std::size_t n_;
  std::vector<double> weight_;
  std::vector<std::uint8_t> visited_;
  Index u_ = 0;
};

}  // namespace

DistanceField brute_force_geodesic(const SurfaceMesh& mesh, std::span<const Index> sources, std::size_t max_faces) {
  check_sources(mesh, sources);
  if (mesh.face_count() > max_faces) throw EngineGuardError("mesh too large for brute-force oracle");
  const std::size_t n = mesh.vertex_count();
  Visibility vis(mesh);
  for (std::size_t u = 0; u < n; ++u) vis.scan(static_cast<Index>(u));

  DistanceField dist(n, kInfinity);
  std::vector<std::uint8_t> done(n, 0);
  for (const Index s : sources) dist[static_cast<std::size_t>(s)] = 0.0;
  for (std::size_t round = 0; round < n; ++round) {
    std::size_t best = n;
    for (std::size_t v = 0; v < n; ++v) {
      if (!done[v] && dist[v] < kInfinity && (best == n || dist[v] < dist[best])) best = v;
    }
    if (best == n) break;
    done[best] = 1;
    for (std::size_t v = 0; v < n; ++v) {
      const double w = vis.weight(best, v);
      if (w < kInfinity) dist[v] = std::min(dist[v], dist[best] + w);
    }
  }
  return dist;
}

}  // namespace pchgeo
