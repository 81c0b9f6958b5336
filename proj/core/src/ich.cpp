#include <algorithm>
#include <chrono>
#include <queue>
#include <vector>

#include "pchgeo/engine.hpp"

namespace pchgeo {

namespace {

struct Queued {
  double key;
  std::uint64_t seq;
  Window window;
};

struct Later {
  bool operator()(const Queued& a, const Queued& b) const {
    return a.key > b.key || (a.key == b.key && a.seq > b.seq);
  }
};

}  // namespace

DistanceResult run_ich(const SurfaceMesh& mesh, std::span<const Index> sources, const EngineConfig& config) {
  check_sources(mesh, sources);
  const auto start = std::chrono::steady_clock::now();
  std::vector<Index> srcs(sources.begin(), sources.end());
  std::sort(srcs.begin(), srcs.end());
  srcs.erase(std::unique(srcs.begin(), srcs.end()), srcs.end());

  DistanceResult result;
  RunStats& st = result.stats;
  st.algorithm = "ich";
  st.vertices = mesh.vertex_count();
  st.faces = mesh.face_count();
  st.sources = srcs.size();
  st.k = 1;
  st.workers = 1;
  st.selection = "priority_queue";

  DistanceField& dist = result.distances;
  dist.assign(mesh.vertex_count(), kInfinity);
  for (const Index s : srcs) dist[static_cast<std::size_t>(s)] = 0.0;
  std::vector<SplitEntry> split(mesh.half_edge_count());
  const KernelView view{mesh, dist, split, {config.epsilon_window, config.fan_clip, config.recheck}};

  std::priority_queue<Queued, std::vector<Queued>, Later> queue;
  std::uint64_t seq = 0;
  std::vector<Window> initial;
  for (const Index s : srcs) create_source_windows(mesh, s, initial);
  for (const auto& w : initial) queue.push({window_key(w), seq++, w});
  st.windows_created = initial.size();
  st.peak_active = queue.size();

  KernelOutput out;
  while (!queue.empty()) {
    const Window w = queue.top().window;
    queue.pop();
    ++st.windows_propagated;
    ++st.iterations;
    out.clear();
    propagate_window(w, view, out);

    st.windows_created += out.candidates;
    st.pruned_by += out.drops;
    st.max_children = std::max(st.max_children, out.max_children);
    st.events_created += out.distance_events.size() + out.angle_events.size();
    for (const auto& e : out.distance_events) {
      double& slot = dist[static_cast<std::size_t>(e.vertex)];
      if (e.value < slot) {
        slot = e.value;
        ++st.events_applied;
      }
    }
    for (const auto& e : out.angle_events) {
      SplitEntry& slot = split[static_cast<std::size_t>(e.half_edge)];
      if (e.apex_distance < slot.apex_distance) {
        slot = {e.apex_distance, e.crossing, e.window};
        ++st.events_applied;
      }
    }
    for (const auto& c : out.windows) queue.push({window_key(c), seq++, c});
    st.peak_active = std::max<std::uint64_t>(st.peak_active, queue.size());
  }

  st.windows_pruned = st.pruned_by.total();
  st.total_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  st.phase_seconds.propagate = st.total_seconds;
  return result;
}

}  // namespace pchgeo
