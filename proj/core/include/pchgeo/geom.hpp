#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "pchgeo/mesh.hpp"

namespace pchgeo {

/// Windows no longer than this are dropped.
inline constexpr double kEpsilonWindow = 1e-6;
/// Slack for geometric predicates, relative to the magnitudes involved.
inline constexpr double kEpsilonNum = 1e-12;
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }

/// Interval [b0, b1] on half-edge `half_edge`, measured from its origin.
/// The pseudo source lies on the side of the half-edge's own face, at
/// distance d0 from b0 and d1 from b1; d is its distance back to the source.
struct Window {
  Index half_edge = 0;
  double b0 = 0.0;
  double b1 = 0.0;
  double d0 = 0.0;
  double d1 = 0.0;
  double d = 0.0;
};

class InvalidWindow : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Pseudo source in the window's edge frame (origin at (0,0), target at (L,0)).
/// y >= 0. Throws InvalidWindow when no planar point matches d0 and d1.
Vec2 unfold_pseudo_source(const Window& w);

/// Same as unfold_pseudo_source but returns nullopt instead of throwing.
std::optional<Vec2> try_unfold_pseudo_source(const Window& w);

/// d plus the distance from the pseudo source to the segment [b0, b1].
double window_key(const Window& w);
double window_key(const Window& w, Vec2 pseudo_source);

struct DistanceEvent {
  Index vertex = 0;
  double value = 0.0;
};

/// Candidate for the angle opposite `half_edge`. `apex_distance` is the distance
/// the window gives the apex; `crossing` is where the ray to the apex crosses
/// the window's edge, in that edge's frame.
struct AngleEvent {
  Index half_edge = 0;
  double apex_distance = 0.0;
  double key = 0.0;
  double crossing = 0.0;
  Window window;
};

struct SplitEntry {
  double apex_distance = kInfinity;
  double crossing = 0.0;
  Window window;

  bool empty() const { return apex_distance == kInfinity; }
};

struct DropCounts {
  std::uint64_t ich = 0;
  std::uint64_t split = 0;
  std::uint64_t tiny = 0;
  std::uint64_t degenerate = 0;
  std::uint64_t stale = 0;  // failed the filter again when taken for propagation

  std::uint64_t total() const { return ich + split + tiny + degenerate + stale; }
  DropCounts& operator+=(const DropCounts& o) {
    ich += o.ich;
    split += o.split;
    tiny += o.tiny;
    degenerate += o.degenerate;
    stale += o.stale;
    return *this;
  }
};

/// How fan windows meet the two bounding rays of a saddle fan.
enum class FanClip : std::uint8_t {
  clip_to_rays,  // intervals cut at the bounding rays
  full_edges,    // whole opposite edges, left for the filters to trim
};

struct KernelConfig {
  double epsilon_window = kEpsilonWindow;
  FanClip fan_clip = FanClip::clip_to_rays;
  /// Re-run the filter on a window against its own face's vertices, with the
  /// distances current at propagation time, before propagating it.
  bool recheck = true;
};

/// Read-only state the kernel consults.
struct KernelView {
  const SurfaceMesh& mesh;
  std::span<const double> dist;
  std::span<const SplitEntry> split;
  KernelConfig config{};
};

/// Per-worker sink. Window candidates that are discarded still count in
/// `candidates`, so candidates == windows.size() + drops.total() for a fresh
/// output.
struct KernelOutput {
  std::vector<Window> windows;
  std::vector<DistanceEvent> distance_events;
  std::vector<AngleEvent> angle_events;
  DropCounts drops;
  std::uint64_t candidates = 0;
  std::uint64_t overflows = 0;
  std::uint32_t max_children = 0;

  void clear();
  /// Appends, doubling the reserved capacity (and counting it) when full.
  void push_window(const Window& w);
};

/// Algorithm for one window: endpoint events, apex handling with the
/// one-angle-one-split rule, children across the opposite face, saddle fans,
/// and the three-inequality filter on every candidate.
void propagate_window(const Window& w, const KernelView& view, KernelOutput& out);

/// Smallest value of |IP| - |VP| over P on segment [x0, x1]. I and V must not
/// lie on opposite sides of the segment's line.
double min_distance_gap(Vec2 i, Vec2 v, Vec2 x0, Vec2 x1);

/// True when the filter shows some vertex reaches every point of [x0, x1]
/// strictly faster than the window does.
bool ich_prune(double d, Vec2 pseudo_source, Vec2 x0, Vec2 x1, std::span<const Vec2> vertices,
               std::span<const double> vertex_distances);

/// Angular interval in a vertex's rotation frame: angles are measured CCW from
/// the start of corner `mesh.outgoing(v)` and run up to total_angle(v).
struct AngleRange {
  double begin = 0.0;
  double end = 0.0;
};

/// Directions a shortest path may leave a geodesic-bending vertex when it
/// arrives from direction `incoming` (the direction pointing back along the
/// path). Empty when the vertex cannot bend geodesics.
std::vector<AngleRange> geodesic_exit_ranges(const SurfaceMesh& mesh, Index v, double incoming);

/// Windows with pseudo source v and distance dist_v on every edge opposite v
/// whose angular span meets the fan [begin, end]. For interior vertices the
/// range wraps modulo the total angle; end - begin must not exceed it.
void create_fan_windows(const KernelView& view, Index v, double dist_v, AngleRange range, KernelOutput& out);

/// One full window per triangle around s, with d = 0. No filtering.
void create_source_windows(const SurfaceMesh& mesh, Index s, std::vector<Window>& out);

}  // namespace pchgeo
