#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "pchgeo/geom.hpp"

namespace pchgeo {

namespace {

// Angular overlaps narrower than this are ignored.
constexpr double kAngleSlack = 1e-12;

// Corner hv of v, unfolded in the frame of the opposite half-edge next(hv):
// a = target(hv) at the origin, b = target(next(hv)) at (l, 0), v above.
struct CornerFrame {
  Index edge;
  double l;
  Vec2 v;
  double base;  // direction of a - v
};

CornerFrame corner_frame(const SurfaceMesh& mesh, Index hv) {
  const Index edge = next_half_edge(hv);
  const double l = mesh.length(edge);
  const double va = mesh.length(hv);
  const double vb = mesh.length(prev_half_edge(hv));
  const double x = (l * l + va * va - vb * vb) / (2.0 * l);
  const Vec2 v{x, std::sqrt(std::max(0.0, va * va - x * x))};
  return {edge, l, v, std::atan2(-v.y, -v.x)};
}

// Position along the edge hit by the ray from v at local angle t.
double hit_along(const CornerFrame& f, double t) {
  const double dir = f.base + t;
  const double dy = std::sin(dir);
  if (dy >= 0.0) return t <= 0.0 ? 0.0 : f.l;
  return std::clamp(f.v.x - f.v.y * std::cos(dir) / dy, 0.0, f.l);
}

void emit(const KernelView& view, Index hv, double dist_v, double t_lo, double t_hi, bool lo_exact,
          bool hi_exact, KernelOutput& out) {
  const SurfaceMesh& mesh = view.mesh;
  const CornerFrame f = corner_frame(mesh, hv);
  ++out.candidates;
  double b0 = lo_exact ? 0.0 : hit_along(f, t_lo);
  double b1 = hi_exact ? f.l : hit_along(f, t_hi);
  if (!(b1 - b0 > view.config.epsilon_window) && !(lo_exact && hi_exact)) {
    // The fan of a nearly flat saddle is a thin wedge. Dropping its slivers
    // would leave a hole that widens downstream, so take the whole edge and
    // let the filter trim it.
    lo_exact = hi_exact = true;
    b0 = 0.0;
    b1 = f.l;
  }
  if (!(b1 - b0 > view.config.epsilon_window)) {
    ++out.drops.tiny;
    return;
  }
  const double d0 = lo_exact ? mesh.length(hv) : norm(Vec2{b0, 0.0} - f.v);
  const double d1 = hi_exact ? mesh.length(prev_half_edge(hv)) : norm(Vec2{b1, 0.0} - f.v);
  const std::array<Vec2, 2> ends{Vec2{0.0, 0.0}, Vec2{f.l, 0.0}};
  const std::array<double, 2> g{view.dist[static_cast<std::size_t>(mesh.target(hv))],
                                view.dist[static_cast<std::size_t>(mesh.target(f.edge))]};
  if (ich_prune(dist_v, f.v, Vec2{b0, 0.0}, Vec2{b1, 0.0}, ends, g)) {
    ++out.drops.ich;
    return;
  }
  out.push_window({f.edge, b0, b1, d0, d1, dist_v});
}

void fan_over(const KernelView& view, Index v, double dist_v, double begin, double end, KernelOutput& out) {
  const SurfaceMesh& mesh = view.mesh;
  const bool full = view.config.fan_clip == FanClip::full_edges;
  for (const Index hv : mesh.outgoing_half_edges(v)) {
    const double off = mesh.corner_offset(hv);
    const double ang = mesh.corner_angle(hv);
    const double lo = std::max(begin, off);
    const double hi = std::min(end, off + ang);
    if (hi - lo <= kAngleSlack) continue;
    const bool lo_exact = full || begin <= off;
    const bool hi_exact = full || end >= off + ang;
    emit(view, hv, dist_v, lo_exact ? 0.0 : lo - off, hi_exact ? ang : hi - off, lo_exact, hi_exact, out);
  }
}

}  // namespace

std::vector<AngleRange> geodesic_exit_ranges(const SurfaceMesh& mesh, Index v, double incoming) {
  std::vector<AngleRange> ranges;
  if (!mesh.bends_geodesics(v)) return ranges;
  constexpr double pi = std::numbers::pi;
  const double total = mesh.total_angle(v);
  if (mesh.is_boundary_vertex(v)) {
    // Only the side inside the surface has to span at least pi.
    const double in = std::clamp(incoming, 0.0, total);
    if (in + pi < total) ranges.push_back({in + pi, total});
    if (in > pi) ranges.push_back({0.0, in - pi});
    return ranges;
  }
  double begin = std::fmod(incoming + pi, total);
  if (begin < 0.0) begin += total;
  ranges.push_back({begin, begin + total - 2.0 * pi});
  return ranges;
}

void create_fan_windows(const KernelView& view, Index v, double dist_v, AngleRange range, KernelOutput& out) {
  const SurfaceMesh& mesh = view.mesh;
  if (mesh.is_isolated(v) || !(range.end > range.begin)) return;
  const double total = mesh.total_angle(v);
  if (mesh.is_boundary_vertex(v)) {
    fan_over(view, v, dist_v, std::max(0.0, range.begin), std::min(total, range.end), out);
    return;
  }
  double begin = std::fmod(range.begin, total);
  if (begin < 0.0) begin += total;
  const double end = begin + std::min(range.end - range.begin, total);
  if (end <= total) {
    fan_over(view, v, dist_v, begin, end, out);
  } else {
    fan_over(view, v, dist_v, begin, total, out);
    fan_over(view, v, dist_v, 0.0, end - total, out);
  }
}

void create_source_windows(const SurfaceMesh& mesh, Index s, std::vector<Window>& out) {
  for (const Index hv : mesh.outgoing_half_edges(s)) {
    const Index edge = next_half_edge(hv);
    out.push_back({edge, 0.0, mesh.length(edge), mesh.length(hv), mesh.length(prev_half_edge(hv)), 0.0});
  }
}

}  // namespace pchgeo
