#include "pchgeo/geom.hpp"

#include <algorithm>
#include <array>
#include <numbers>

namespace pchgeo {

std::optional<Vec2> try_unfold_pseudo_source(const Window& w) {
  const double span = w.b1 - w.b0;
  if (!(span > 0.0)) return std::nullopt;
  const double along = (span * span + w.d0 * w.d0 - w.d1 * w.d1) / (2.0 * span);
  const double disc = w.d0 * w.d0 - along * along;
  const double scale = std::max({w.d0 * w.d0, w.d1 * w.d1, span * span});
  if (disc < -kEpsilonNum * scale || !std::isfinite(disc)) return std::nullopt;
  return Vec2{w.b0 + along, std::sqrt(std::max(0.0, disc))};
}

Vec2 unfold_pseudo_source(const Window& w) {
  if (auto p = try_unfold_pseudo_source(w)) return *p;
  throw InvalidWindow("no planar pseudo source for window");
}

double window_key(const Window& w, Vec2 pseudo_source) {
  if (pseudo_source.x >= w.b0 && pseudo_source.x <= w.b1) return w.d + pseudo_source.y;
  return w.d + std::min(w.d0, w.d1);
}

double window_key(const Window& w) {
  if (auto p = try_unfold_pseudo_source(w)) return window_key(w, *p);
  return w.d + std::min(w.d0, w.d1);
}

void KernelOutput::clear() {
  windows.clear();
  distance_events.clear();
  angle_events.clear();
  drops = {};
  candidates = 0;
  overflows = 0;
  max_children = 0;
}

void KernelOutput::push_window(const Window& w) {
  if (windows.size() == windows.capacity() && windows.capacity() > 0) {
    ++overflows;
    windows.reserve(windows.capacity() * 2);
  }
  windows.push_back(w);
}

double min_distance_gap(Vec2 i, Vec2 v, Vec2 x0, Vec2 x1) {
  double best = std::min(norm(x0 - i) - norm(x0 - v), norm(x1 - i) - norm(x1 - v));
  // With I and V on one side, the only interior critical point is where the
  // line through them meets the segment. It is the minimum (-|IV|) when I sits
  // between that point and V.
  const Vec2 e = x1 - x0;
  const Vec2 u = v - i;
  const double denom = cross(e, u);
  if (std::abs(denom) > kEpsilonNum * norm(e) * norm(u)) {
    const double s = cross(i - x0, u) / denom;
    const double t = cross(i - x0, e) / denom;
    if (s > 0.0 && s < 1.0 && t < 0.0) best = std::min(best, -norm(u));
  }
  return best;
}

bool ich_prune(double d, Vec2 pseudo_source, Vec2 x0, Vec2 x1, std::span<const Vec2> vertices,
               std::span<const double> vertex_distances) {
  for (std::size_t k = 0; k < vertices.size(); ++k) {
    const double g = vertex_distances[k];
    if (g == kInfinity) continue;
    const double lhs = d + min_distance_gap(pseudo_source, vertices[k], x0, x1);
    if (lhs > g + kEpsilonNum * std::max(1.0, g)) return true;
  }
  return false;
}

namespace {

struct ChildEdge {
  Index half_edge;
  Vec2 from;  // origin of the half-edge in the parent frame
  Vec2 to;
};

// Parameter along `edge` where the ray from i through (x, 0) meets it.
double ray_hit(Vec2 i, double x, const ChildEdge& edge) {
  const Vec2 r{x - i.x, -i.y};
  const Vec2 e = edge.to - edge.from;
  const double denom = cross(e, r);
  if (denom == 0.0) return 0.0;
  return std::clamp(cross(i - edge.from, r) / denom, 0.0, 1.0);
}

class Propagator {
 public:
  Propagator(const Window& w, Vec2 i, const KernelView& view, KernelOutput& out)
      : w_(w), i_(i), view_(view), mesh_(view.mesh), out_(out) {}

  void run() {
    const Index h = w_.half_edge;
    const double len = mesh_.length(h);
    const double eps = view_.config.epsilon_window;

    if (view_.config.recheck && dominated_now(h, len)) {
      ++out_.drops.stale;
      return;
    }

    if (w_.b0 <= eps) {
      reach_vertex(mesh_.origin(h), w_.d + norm(i_), h, std::atan2(i_.y, i_.x));
    }
    if (w_.b1 >= len - eps) {
      const Index corner = next_half_edge(h);
      const double local = std::atan2(i_.y, i_.x - len) - (std::numbers::pi - mesh_.corner_angle(corner));
      reach_vertex(mesh_.target(h), w_.d + norm(i_ - Vec2{len, 0.0}), corner, local);
    }

    const Index o = mesh_.opposite(h);
    if (o == kBoundary) return;
    if (i_.y <= kEpsilonNum * len) {
      // Pseudo source on the edge line: the rays graze the edge.
      ++out_.drops.degenerate;
      return;
    }

    const Index left_he = next_half_edge(o);   // v0 -> v2
    const Index right_he = prev_half_edge(o);  // v2 -> v1
    const Index v0 = mesh_.origin(h);
    const Index v1 = mesh_.target(h);
    const Index v2 = mesh_.origin(right_he);
    const double ll = mesh_.length(left_he);
    const double lr = mesh_.length(right_he);
    const double x2 = (len * len + ll * ll - lr * lr) / (2.0 * len);
    const Vec2 apex{x2, -std::sqrt(std::max(0.0, ll * ll - x2 * x2))};
    const Vec2 p0{0.0, 0.0};
    const Vec2 p1{len, 0.0};

    tri_ = {p0, p1, apex};
    tri_dist_ = {dist(v0), dist(v1), dist(v2)};
    const ChildEdge left{left_he, p0, apex};
    const ChildEdge right{right_he, apex, p1};

    // Where the ray from I through the apex crosses the edge.
    const double cross_x = i_.x + (apex.x - i_.x) * i_.y / (i_.y - apex.y);
    const double tol = kEpsilonNum * len;

    if (cross_x > w_.b0 + tol && cross_x < w_.b1 - tol) {
      const double apex_distance = w_.d + norm(apex - i_);
      const SplitEntry& entry = view_.split[static_cast<std::size_t>(o)];
      if (apex_distance < entry.apex_distance) {
        out_.angle_events.push_back({o, apex_distance, window_key(w_, i_), cross_x, w_});
        child(left, w_.b0, cross_x, false, true);
        child(right, cross_x, w_.b1, true, w_.b1 >= len);
      } else {
        // The stored window reaches the apex first; our rays on its side cross
        // its ray to the apex and lose to it there.
        ++out_.candidates;
        ++out_.drops.split;
        if (cross_x < entry.crossing) {
          child(left, w_.b0, cross_x, false, true);
        } else {
          child(right, cross_x, w_.b1, true, w_.b1 >= len);
        }
      }
      if (apex_distance < dist(v2)) {
        const Vec2 a = p1 - apex;
        const Vec2 b = Vec2{cross_x, 0.0} - apex;
        reach_vertex(v2, apex_distance, right_he, std::atan2(cross(a, b), dot(a, b)), false);
      }
    } else if (cross_x <= w_.b0 + tol) {
      child(right, w_.b0, w_.b1, false, w_.b1 >= len);
    } else {
      child(left, w_.b0, w_.b1, false, false);
    }
  }

 private:
  double dist(Index v) const { return view_.dist[static_cast<std::size_t>(v)]; }

  // The window was filtered when it was created, possibly against values that
  // have improved since. Any vertex of its own face still bounds every point.
  bool dominated_now(Index h, double len) const {
    const Index apex_he = prev_half_edge(h);
    const double l0 = mesh_.length(apex_he);  // apex -> v0
    const double l1 = mesh_.length(next_half_edge(h));
    const double x = (len * len + l0 * l0 - l1 * l1) / (2.0 * len);
    const std::array<Vec2, 3> verts{Vec2{0.0, 0.0}, Vec2{len, 0.0}, Vec2{x, std::sqrt(std::max(0.0, l0 * l0 - x * x))}};
    const std::array<double, 3> g{dist(mesh_.origin(h)), dist(mesh_.target(h)), dist(mesh_.origin(apex_he))};
    return ich_prune(w_.d, i_, Vec2{w_.b0, 0.0}, Vec2{w_.b1, 0.0}, verts, g);
  }

  void reach_vertex(Index v, double value, Index corner, double local, bool check = true) {
    if (check && !(value < dist(v))) return;
    out_.distance_events.push_back({v, value});
    if (!mesh_.bends_geodesics(v)) return;
    for (const auto& range : geodesic_exit_ranges(mesh_, v, mesh_.corner_offset(corner) + local)) {
      create_fan_windows(view_, v, value, range, out_);
    }
  }

  void child(const ChildEdge& edge, double x_lo, double x_hi, bool lo_at_start, bool hi_at_end) {
    ++out_.candidates;
    const double s_lo = lo_at_start ? 0.0 : ray_hit(i_, x_lo, edge);
    const double s_hi = hi_at_end ? 1.0 : ray_hit(i_, x_hi, edge);
    const double len = mesh_.length(edge.half_edge);
    const double b0 = s_lo * len;
    const double b1 = s_hi * len;
    if (!(b1 - b0 > view_.config.epsilon_window)) {
      ++out_.drops.tiny;
      return;
    }
    const Vec2 e = edge.to - edge.from;
    const Vec2 x0 = s_lo == 0.0 ? edge.from : edge.from + s_lo * e;
    const Vec2 x1 = s_hi == 1.0 ? edge.to : edge.from + s_hi * e;
    if (ich_prune(w_.d, i_, x0, x1, tri_, tri_dist_)) {
      ++out_.drops.ich;
      return;
    }
    out_.push_window({edge.half_edge, b0, b1, norm(x0 - i_), norm(x1 - i_), w_.d});
  }

  const Window& w_;
  Vec2 i_;
  const KernelView& view_;
  const SurfaceMesh& mesh_;
  KernelOutput& out_;
  std::array<Vec2, 3> tri_{};
  std::array<double, 3> tri_dist_{};
};

}  // namespace

void propagate_window(const Window& w, const KernelView& view, KernelOutput& out) {
  const auto i = try_unfold_pseudo_source(w);
  if (!i) {
    ++out.drops.degenerate;
    return;
  }
  const std::size_t before = out.windows.size();
  Propagator(w, *i, view, out).run();
  out.max_children = std::max(out.max_children, static_cast<std::uint32_t>(out.windows.size() - before));
}

}  // namespace pchgeo
