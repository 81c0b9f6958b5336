#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "corpus.hpp"
#include "pchgeo/geom.hpp"
#include "pchgeo/shapes.hpp"

namespace pchgeo {
namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrt2 = std::sqrt(2.0);

// Kernel inputs with every distance unknown and no stored splits.
struct Blank {
  explicit Blank(const SurfaceMesh& m)
      : mesh(m), dist(m.vertex_count(), kInfinity), split(m.half_edge_count()) {}
  KernelView view() const { return {mesh, dist, split}; }
  const SurfaceMesh& mesh;
  std::vector<double> dist;
  std::vector<SplitEntry> split;
};

Vec3 lerp(const Vec3& a, const Vec3& b, double t) {
  return {a.x + t * (b.x - a.x), a.y + t * (b.y - a.y), a.z + t * (b.z - a.z)};
}

// Point at arc length s along half-edge j.
Vec3 point_on(const SurfaceMesh& mesh, Index j, double s) {
  return lerp(mesh.position(mesh.origin(j)), mesh.position(mesh.target(j)), s / mesh.length(j));
}

TEST(Unfold, Examples) {
  const Vec2 a = unfold_pseudo_source({0, 0.0, 2.0, kSqrt2, kSqrt2, 0.0});
  EXPECT_NEAR(a.x, 1.0, 1e-15);
  EXPECT_NEAR(a.y, 1.0, 1e-15);
  const Vec2 b = unfold_pseudo_source({0, 0.0, 1.0, 1.0, 1.0, 0.0});
  EXPECT_NEAR(b.x, 0.5, 1e-15);
  EXPECT_NEAR(b.y, std::sqrt(3.0) / 2.0, 1e-15);
  const Vec2 c = unfold_pseudo_source({0, 0.0, 5.0, 3.0, 4.0, 0.0});
  EXPECT_NEAR(c.x, 1.8, 1e-15);
  EXPECT_NEAR(c.y, 2.4, 1e-15);
  // Both radii reproduced.
  EXPECT_NEAR(norm(c - Vec2{0.0, 0.0}), 3.0, 1e-15);
  EXPECT_NEAR(norm(c - Vec2{5.0, 0.0}), 4.0, 1e-15);
}

TEST(Unfold, Invalid) {
  EXPECT_THROW(unfold_pseudo_source({0, 0.0, 3.0, 1.0, 1.0, 0.0}), InvalidWindow);
  EXPECT_FALSE(try_unfold_pseudo_source({0, 0.0, 3.0, 1.0, 1.0, 0.0}).has_value());
  EXPECT_FALSE(try_unfold_pseudo_source({0, 1.0, 1.0, 1.0, 1.0, 0.0}).has_value());
}

TEST(Unfold, RandomWindowsReproduceRadii) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 100000; ++i) {
    const double b0 = 3.0 * u(rng);
    const double b1 = b0 + 0.01 + 2.0 * u(rng);
    const Vec2 p{6.0 * u(rng) - 3.0, 1e-3 + 3.0 * u(rng)};
    const Window w{0, b0, b1, norm(p - Vec2{b0, 0.0}), norm(p - Vec2{b1, 0.0}), 0.0};
    const Vec2 q = unfold_pseudo_source(w);
    ASSERT_GE(q.y, 0.0);
    ASSERT_NEAR(norm(q - Vec2{b0, 0.0}), w.d0, 1e-9 * w.d0);
    ASSERT_NEAR(norm(q - Vec2{b1, 0.0}), w.d1, 1e-9 * w.d1);
  }
}

TEST(WindowKey, Examples) {
  EXPECT_NEAR(window_key({0, 0.0, 2.0, kSqrt2, kSqrt2, 0.0}), 1.0, 1e-15);
  // Pseudo source projects to x = -0.75, outside [0, 2].
  EXPECT_DOUBLE_EQ(window_key({0, 0.0, 2.0, 3.0, 4.0, 2.0}), 5.0);
}

TEST(WindowKey, SourceWindowsGiveSegmentDistance) {
  for (const auto& mesh : {shapes::unit_cube(), shapes::icosahedron(), shapes::bumpy(shapes::icosahedron(), 0.2, 3.0, 0.2, 1)}) {
    for (Index s = 0; s < static_cast<Index>(mesh.vertex_count()); ++s) {
      std::vector<Window> ws;
      create_source_windows(mesh, s, ws);
      for (const auto& w : ws) {
        // Direct point-to-segment distance in 3D.
        const Vec3 p = mesh.position(s);
        const Vec3 a = mesh.position(mesh.origin(w.half_edge));
        const Vec3 b = mesh.position(mesh.target(w.half_edge));
        const Vec3 ab{b.x - a.x, b.y - a.y, b.z - a.z};
        const Vec3 ap{p.x - a.x, p.y - a.y, p.z - a.z};
        const double t = std::clamp((ab.x * ap.x + ab.y * ap.y + ab.z * ap.z) /
                                        (ab.x * ab.x + ab.y * ab.y + ab.z * ab.z),
                                    0.0, 1.0);
        EXPECT_NEAR(window_key(w), distance(p, lerp(a, b, t)), 1e-12);
      }
    }
  }
}

TEST(IchPrune, NothingKnownKeeps) {
  const std::array<Vec2, 3> v{Vec2{0, 0}, Vec2{1, 0}, Vec2{0.5, -1}};
  const std::array<double, 3> g{kInfinity, kInfinity, kInfinity};
  EXPECT_FALSE(ich_prune(0.0, {0.5, 1.0}, {0, 0}, {1, 0}, v, g));
}

TEST(IchPrune, EqualityKeeps) {
  const Vec2 i{0.5, 1.0};
  const Vec2 b{1.0, 0.0};
  const std::array<Vec2, 1> v{Vec2{0, 0}};
  // d + |IB| == g0 + |v0 B|, with B the endpoint where the gap is smallest.
  const double g0 = norm(b - i) - norm(b - v[0]);
  EXPECT_FALSE(ich_prune(0.0, i, {0, 0}, b, v, std::array<double, 1>{g0}));
  EXPECT_TRUE(ich_prune(0.0, i, {0, 0}, b, v, std::array<double, 1>{g0 - 1e-6}));
}

TEST(IchPrune, CompetingSourceDiscards) {
  // A window from a source three units away, while a second source sits on
  // the edge's own vertex v0.
  const Vec2 i{0.5, 3.0};
  const Vec2 x0{0.0, 0.0};
  const Vec2 x1{1.0, 0.0};
  const std::array<Vec2, 3> v{Vec2{0, 0}, Vec2{1, 0}, Vec2{0.5, -0.8}};
  const std::array<double, 3> g{0.0, kInfinity, kInfinity};
  for (int s = 0; s <= 100; ++s) {
    const Vec2 p{s / 100.0, 0.0};
    ASSERT_GT(norm(p - i), g[0] + norm(p - v[0]));
  }
  EXPECT_TRUE(ich_prune(0.0, i, x0, x1, v, g));
}

TEST(MinDistanceGap, MatchesDenseSampling) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int n = 0; n < 2000; ++n) {
    const Vec2 x0{u(rng), 0.0};
    const Vec2 x1{x0.x + 0.1 + std::abs(u(rng)), 0.0};
    const Vec2 i{u(rng), std::abs(u(rng)) + 0.01};
    const Vec2 v{u(rng), std::abs(u(rng))};
    double sampled = kInfinity;
    for (int s = 0; s <= 4000; ++s) {
      const Vec2 p = x0 + (s / 4000.0) * (x1 - x0);
      sampled = std::min(sampled, norm(p - i) - norm(p - v));
    }
    const double exact = min_distance_gap(i, v, x0, x1);
    ASSERT_LE(exact, sampled + 1e-12);
    ASSERT_GE(exact, sampled - 1e-5);
  }
}

class SquareDiagonal : public ::testing::Test {
 protected:
  // Half-edge 1 runs (1,0) -> (0,1) in the face holding (0,0); its opposite,
  // 5, belongs to the face with apex (1,1).
  SurfaceMesh mesh = testing::unit_square();
  Blank blank{mesh};
  KernelOutput out;
};

TEST_F(SquareDiagonal, FullWindowReachesFarCorner) {
  ASSERT_EQ(mesh.origin(1), 1);
  ASSERT_EQ(mesh.target(1), 3);
  propagate_window({1, 0.0, kSqrt2, 1.0, 1.0, 0.0}, blank.view(), out);

  ASSERT_EQ(out.windows.size(), 2u);
  ASSERT_EQ(out.angle_events.size(), 1u);
  EXPECT_EQ(out.angle_events[0].half_edge, 5);
  bool far_corner = false;
  for (const auto& e : out.distance_events) {
    if (e.vertex == 2) {
      far_corner = true;
      EXPECT_NEAR(e.value, kSqrt2, 1e-15);
    }
  }
  EXPECT_TRUE(far_corner);
  // Planar: every child endpoint is at its Euclidean distance from (0,0).
  for (const auto& c : out.windows) {
    EXPECT_NE(c.half_edge, 1);
    EXPECT_NEAR(c.d + c.d0, distance(point_on(mesh, c.half_edge, c.b0), mesh.position(0)), 1e-14);
    EXPECT_NEAR(c.d + c.d1, distance(point_on(mesh, c.half_edge, c.b1), mesh.position(0)), 1e-14);
  }
  EXPECT_NE(out.windows[0].half_edge, out.windows[1].half_edge);
}

TEST_F(SquareDiagonal, NarrowConeGivesOneInteriorChild) {
  const double b0 = 0.1 * kSqrt2;
  const double b1 = 0.4 * kSqrt2;
  const Vec3 src = mesh.position(0);
  propagate_window({1, b0, b1, distance(point_on(mesh, 1, b0), src), distance(point_on(mesh, 1, b1), src), 0.0},
                   blank.view(), out);
  ASSERT_EQ(out.windows.size(), 1u);
  EXPECT_TRUE(out.angle_events.empty());
  EXPECT_TRUE(out.distance_events.empty());
  const Window& c = out.windows[0];
  EXPECT_EQ(mesh.origin(c.half_edge), 1);  // the edge x = 1
  EXPECT_EQ(mesh.target(c.half_edge), 2);
  EXPECT_GT(c.b0, 0.0);
  EXPECT_LT(c.b1, mesh.length(c.half_edge));
  EXPECT_NEAR(c.b0, 0.1 / 0.9, 1e-14);
  EXPECT_NEAR(c.b1, 0.4 / 0.6, 1e-14);
  EXPECT_NEAR(c.d0, distance(point_on(mesh, c.half_edge, c.b0), src), 1e-14);
  EXPECT_NEAR(c.d1, distance(point_on(mesh, c.half_edge, c.b1), src), 1e-14);
}

TEST_F(SquareDiagonal, StoredSplitWinsGivesOneChild) {
  // Another window already reaches (1,1) at 1.0 < sqrt(2), its ray crossing
  // the diagonal nearer to (1,0).
  blank.split[5] = {1.0, 0.3, Window{1, 0.0, kSqrt2, 1.0, 1.0, 0.0}};
  propagate_window({1, 0.0, kSqrt2, 1.0, 1.0, 0.0}, blank.view(), out);
  EXPECT_TRUE(out.angle_events.empty());
  ASSERT_EQ(out.windows.size(), 1u);
  EXPECT_EQ(out.drops.split, 1u);
  // Our crossing (the midpoint) lies past the stored one: keep the right side.
  EXPECT_EQ(out.windows[0].half_edge, prev_half_edge(5));
}

TEST_F(SquareDiagonal, BoundaryEdgeOnlyEmitsEvents) {
  // Half-edge 0 runs (0,0) -> (1,0) and has no neighbour.
  propagate_window({0, 0.0, 1.0, 1.0, kSqrt2, 0.0}, blank.view(), out);
  EXPECT_TRUE(out.windows.empty());
  EXPECT_EQ(out.distance_events.size(), 2u);
}

TEST(Propagate, LoneTriangleSourceWindow) {
  const auto mesh = shapes::single_triangle();
  Blank blank(mesh);
  blank.dist[0] = 0.0;
  std::vector<Window> ws;
  create_source_windows(mesh, 0, ws);
  ASSERT_EQ(ws.size(), 1u);
  KernelOutput out;
  propagate_window(ws[0], blank.view(), out);
  EXPECT_TRUE(out.windows.empty());
  ASSERT_EQ(out.distance_events.size(), 2u);
  EXPECT_DOUBLE_EQ(out.distance_events[0].value, 1.0);
  EXPECT_DOUBLE_EQ(out.distance_events[1].value, 1.0);
}

TEST(Propagate, ChildrenAreValidAndKeysGrow) {
  for (const auto& mesh : {shapes::unit_cube(), shapes::saddle_fan(10), shapes::bumpy(shapes::icosphere(1), 0.1, 4.0, 0.1, 2)}) {
    Blank blank(mesh);
    blank.dist[0] = 0.0;
    std::vector<Window> level;
    create_source_windows(mesh, 0, level);
    for (int depth = 0; depth < 5 && !level.empty(); ++depth) {
      std::vector<Window> next;
      for (const auto& w : level) {
        KernelOutput out;
        propagate_window(w, blank.view(), out);
        EXPECT_EQ(out.candidates, out.windows.size() + out.drops.total() - out.drops.degenerate);
        const double parent_key = window_key(w);
        std::vector<Index> child_edges;
        for (const auto& c : out.windows) {
          const double len = mesh.length(c.half_edge);
          EXPECT_GE(c.b0, 0.0);
          EXPECT_LE(c.b1, len);
          EXPECT_GT(c.b1 - c.b0, kEpsilonWindow);
          EXPECT_LE(std::abs(c.d0 - c.d1), c.b1 - c.b0 + 1e-12);
          EXPECT_GE(c.d0 + c.d1, c.b1 - c.b0 - 1e-12);
          EXPECT_GE(window_key(c), parent_key - 1e-9);
          if (c.d == w.d) child_edges.push_back(c.half_edge);
        }
        // Straight children of one parent sit on different edges.
        std::sort(child_edges.begin(), child_edges.end());
        EXPECT_EQ(std::adjacent_find(child_edges.begin(), child_edges.end()), child_edges.end());
        next.insert(next.end(), out.windows.begin(), out.windows.end());
      }
      if (next.size() > 2000) next.resize(2000);
      level = std::move(next);
    }
  }
}

// Angular position, in v's rotation frame, of the point at arc length s on the
// edge opposite corner hv, given its distance r from v.
double angle_at(const SurfaceMesh& mesh, Index hv, double s, double r) {
  const double la = mesh.length(hv);
  if (s == 0.0) return mesh.corner_offset(hv);
  const double c = std::clamp((la * la + r * r - s * s) / (2.0 * la * r), -1.0, 1.0);
  return mesh.corner_offset(hv) + std::acos(c);
}

struct Span {
  double lo;
  double hi;
};

std::vector<Span> fan_spans(const SurfaceMesh& mesh, Index v, const std::vector<Window>& ws) {
  std::vector<Span> spans;
  for (const auto& w : ws) {
    const Index hv = prev_half_edge(w.half_edge);  // fan windows sit on next(hv)
    EXPECT_EQ(mesh.origin(hv), v);
    spans.push_back({angle_at(mesh, hv, w.b0, w.d0), angle_at(mesh, hv, w.b1, w.d1)});
  }
  std::sort(spans.begin(), spans.end(), [](const Span& a, const Span& b) { return a.lo < b.lo; });
  return spans;
}

TEST(Fan, FullFanMatchesSourceWindows) {
  const auto mesh = shapes::icosahedron();
  Blank blank(mesh);
  KernelOutput out;
  create_fan_windows(blank.view(), 0, 0.0, {0.0, mesh.total_angle(0)}, out);
  std::vector<Window> src;
  create_source_windows(mesh, 0, src);
  ASSERT_EQ(out.windows.size(), src.size());
  for (std::size_t i = 0; i < src.size(); ++i) {
    EXPECT_EQ(out.windows[i].half_edge, src[i].half_edge);
    EXPECT_EQ(out.windows[i].b0, 0.0);
    EXPECT_EQ(out.windows[i].b1, src[i].b1);
    EXPECT_EQ(out.windows[i].d0, src[i].d0);
    EXPECT_EQ(out.windows[i].d1, src[i].d1);
  }
}

TEST(Fan, SaddleIncomingAlongEdge) {
  const auto mesh = shapes::saddle_fan(8);
  Blank blank(mesh);
  const Index hv = mesh.outgoing(0);
  const auto ranges = geodesic_exit_ranges(mesh, 0, mesh.corner_offset(hv));
  ASSERT_EQ(ranges.size(), 1u);
  EXPECT_NEAR(ranges[0].end - ranges[0].begin, mesh.total_angle(0) - 2.0 * kPi, 1e-12);
  KernelOutput out;
  create_fan_windows(blank.view(), 0, 1.0, ranges[0], out);
  // Exits span [pi, 5pi/3]: exactly the third and fourth triangles.
  ASSERT_EQ(out.windows.size(), 2u);
  for (const auto& w : out.windows) {
    EXPECT_DOUBLE_EQ(w.d, 1.0);
    for (const double r : {w.d0, w.d1}) {
      EXPECT_GE(r, std::sqrt(3.0) / 2.0 - 1e-12);
      EXPECT_LE(r, 1.0 + 1e-12);
    }
  }
}

TEST(Fan, SaddleSpansCoverExitRange) {
  const auto mesh = shapes::saddle_fan(8);
  Blank blank(mesh);
  for (const double incoming : {kPi / 6.0, 0.4, 2.0, 7.9}) {
    const auto ranges = geodesic_exit_ranges(mesh, 0, incoming);
    ASSERT_EQ(ranges.size(), 1u);
    KernelOutput out;
    create_fan_windows(blank.view(), 0, 1.0, ranges[0], out);
    ASSERT_FALSE(out.windows.empty());
    const double total = mesh.total_angle(0);
    // Unwrap into [begin, begin + total).
    auto spans = fan_spans(mesh, 0, out.windows);
    for (auto& s : spans) {
      if (s.lo < ranges[0].begin - 1e-9) {
        s.lo += total;
        s.hi += total;
      }
    }
    std::sort(spans.begin(), spans.end(), [](const Span& a, const Span& b) { return a.lo < b.lo; });
    EXPECT_NEAR(spans.front().lo, std::fmod(ranges[0].begin, total), 1e-9) << incoming;
    for (std::size_t i = 1; i < spans.size(); ++i) EXPECT_NEAR(spans[i].lo, spans[i - 1].hi, 1e-9);
    EXPECT_NEAR(spans.back().hi, std::fmod(ranges[0].begin, total) + ranges[0].end - ranges[0].begin, 1e-9);
  }
}

// Eight unit triangles around a centre whose ring zig-zags by +-h in z. The
// angle excess is about 19 h^2, so at this h the fan is a wedge narrower than
// epsilon_window at the ring.
SurfaceMesh nearly_flat_saddle(double h) {
  std::vector<Vec3> p{{0.0, 0.0, 0.0}};
  std::vector<Triangle> f;
  for (int i = 0; i < 8; ++i) {
    const double a = kPi * i / 4.0;
    p.push_back({std::cos(a), std::sin(a), i % 2 ? -h : h});
    f.push_back({0, 1 + i, 1 + (i + 1) % 8});
  }
  return SurfaceMesh::from_triangles(std::move(p), f);
}

TEST(Fan, NearlyFlatSaddleKeepsItsWedge) {
  const auto mesh = nearly_flat_saddle(7e-5);
  const double excess = mesh.total_angle(0) - 2.0 * kPi;
  ASSERT_TRUE(mesh.bends_geodesics(0));
  ASSERT_LT(excess, 1e-6);
  Blank blank(mesh);
  for (const double incoming : {0.3, kPi / 4.0, 4.0}) {
    const auto ranges = geodesic_exit_ranges(mesh, 0, incoming);
    ASSERT_EQ(ranges.size(), 1u);
    KernelOutput out;
    create_fan_windows(blank.view(), 0, 1.0, ranges[0], out);
    // Clipped to the wedge these would be slivers; they widen to whole edges
    // instead of leaving a hole behind the vertex.
    ASSERT_FALSE(out.windows.empty()) << incoming;
    EXPECT_EQ(out.drops.tiny, 0u);
    for (const auto& w : out.windows) {
      EXPECT_EQ(w.b0, 0.0);
      EXPECT_EQ(w.b1, mesh.length(w.half_edge));
    }
  }
}

TEST(Fan, ZeroWidthEmitsNothing) {
  const auto mesh = shapes::saddle_fan(8);
  Blank blank(mesh);
  KernelOutput out;
  create_fan_windows(blank.view(), 0, 1.0, {1.0, 1.0}, out);
  EXPECT_TRUE(out.windows.empty());
  EXPECT_EQ(out.candidates, 0u);
}

TEST(Fan, FlatVertexNeverFans) {
  const auto mesh = shapes::planar_fan(6);
  EXPECT_TRUE(geodesic_exit_ranges(mesh, 0, 0.3).empty());
  EXPECT_TRUE(geodesic_exit_ranges(shapes::unit_cube(), 0, 0.3).empty());
}

TEST(Fan, ReflexBoundaryCorner) {
  const auto mesh = shapes::l_shape();
  ASSERT_NEAR(mesh.total_angle(4), 1.5 * kPi, 1e-12);
  const auto along = geodesic_exit_ranges(mesh, 4, 0.0);
  ASSERT_EQ(along.size(), 1u);
  EXPECT_NEAR(along[0].begin, kPi, 1e-12);
  EXPECT_NEAR(along[0].end, 1.5 * kPi, 1e-12);
  // Arriving down the middle leaves nothing wider than pi on either side.
  EXPECT_TRUE(geodesic_exit_ranges(mesh, 4, 0.75 * kPi).empty());
}

TEST(SourceWindows, Examples) {
  const auto cube = shapes::unit_cube();
  std::vector<Window> ws;
  create_source_windows(cube, 0, ws);
  EXPECT_EQ(ws.size(), cube.outgoing_half_edges(0).size());
  for (const auto& w : ws) {
    EXPECT_EQ(w.b0, 0.0);
    EXPECT_EQ(w.b1, cube.length(w.half_edge));
    EXPECT_EQ(w.d, 0.0);
    EXPECT_NE(cube.origin(w.half_edge), 0);
    EXPECT_NE(cube.target(w.half_edge), 0);
  }
  ws.clear();
  create_source_windows(shapes::single_triangle(), 1, ws);
  EXPECT_EQ(ws.size(), 1u);
  ws.clear();
  create_source_windows(shapes::planar_fan(6), 0, ws);
  ASSERT_EQ(ws.size(), 6u);
  for (const auto& w : ws) EXPECT_NEAR(w.d0, w.d1, 1e-15);
}

}  // namespace
}  // namespace pchgeo
