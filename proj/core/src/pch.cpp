#include <algorithm>
#include <chrono>
#include <stdexcept>
#include <string>

#include "pchgeo/engine.hpp"
#include "pchgeo/events.hpp"
#include "pchgeo/worker_team.hpp"

namespace pchgeo {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::vector<Index> unique_sources(std::span<const Index> sources) {
  std::vector<Index> s(sources.begin(), sources.end());
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

// Folds a worker's counters into the stats and resets them.
void drain_counters(KernelOutput& out, RunStats& st) {
  st.windows_created += out.candidates;
  st.pruned_by += out.drops;
  st.buffer_overflows += out.overflows;
  st.max_children = std::max(st.max_children, out.max_children);
  out.candidates = 0;
  out.drops = {};
  out.overflows = 0;
  out.max_children = 0;
}

DistanceField initial_field(const SurfaceMesh& mesh, std::span<const Index> sources) {
  DistanceField dist(mesh.vertex_count(), kInfinity);
  for (const Index s : sources) dist[static_cast<std::size_t>(s)] = 0.0;
  return dist;
}

}  // namespace

void check_sources(const SurfaceMesh& mesh, std::span<const Index> sources) {
  if (sources.empty()) throw std::invalid_argument("at least one source vertex is required");
  for (const Index s : sources) {
    if (s < 0 || static_cast<std::size_t>(s) >= mesh.vertex_count()) {
      throw std::invalid_argument("source vertex " + std::to_string(s) + " out of range");
    }
  }
}

DistanceResult run_pch(const SurfaceMesh& mesh, std::span<const Index> sources, const EngineConfig& config) {
  check_sources(mesh, sources);
  if (config.k == 0) throw std::invalid_argument("k must be positive");
  const auto start = Clock::now();
  const auto srcs = unique_sources(sources);
  const unsigned workers = config.workers ? config.workers : default_worker_count();
  WorkerTeam team(workers);

  DistanceResult result;
  RunStats& st = result.stats;
  st.algorithm = "pch";
  st.vertices = mesh.vertex_count();
  st.faces = mesh.face_count();
  st.sources = srcs.size();
  st.k = config.k;
  st.workers = workers;
  st.selection = to_string(config.selection);

  DistanceField& dist = result.distances;
  dist = initial_field(mesh, srcs);
  std::vector<SplitEntry> split(mesh.half_edge_count());
  const KernelView view{mesh, dist, split, {config.epsilon_window, config.fan_clip, config.recheck}};

  std::vector<KernelOutput> outs(workers);
  const std::size_t capacity = 4 * ((config.k + workers - 1) / workers);
  for (auto& o : outs) o.windows.reserve(capacity);
  std::vector<std::vector<Window>*> window_buffers;
  std::vector<std::vector<DistanceEvent>*> distance_buffers;
  std::vector<std::vector<AngleEvent>*> angle_buffers;
  for (auto& o : outs) {
    window_buffers.push_back(&o.windows);
    distance_buffers.push_back(&o.distance_events);
    angle_buffers.push_back(&o.angle_events);
  }

  WindowPool pool;
  auto phase = Clock::now();
  team.run([&](unsigned t) {
    std::vector<Window> local;
    for (std::size_t i = t; i < srcs.size(); i += workers) {
      local.clear();
      create_source_windows(mesh, srcs[i], local);
      for (const auto& w : local) outs[t].push_window(w);
      outs[t].candidates += local.size();
    }
  });
  pool.append(window_buffers, team);
  for (auto& o : outs) drain_counters(o, st);
  st.peak_active = pool.size();
  st.phase_seconds.init = seconds_since(phase);

  std::vector<Window> selected;
  std::vector<DistanceEvent> distance_events;
  std::vector<AngleEvent> angle_events;
  while (!pool.empty()) {
    if (config.max_iterations != 0 && st.iterations >= config.max_iterations) {
      st.truncated = true;
      break;
    }
    ++st.iterations;

    phase = Clock::now();
    select_nearest(pool, config.k, config.selection, team, selected);
    st.windows_propagated += selected.size();
    st.phase_seconds.select += seconds_since(phase);

    phase = Clock::now();
    team.run([&](unsigned t) {
      const auto [begin, end] = chunk_of(selected.size(), workers, t);
      for (std::size_t j = begin; j < end; ++j) propagate_window(selected[j], view, outs[t]);
    });
    st.phase_seconds.propagate += seconds_since(phase);

    phase = Clock::now();
    for (auto& o : outs) drain_counters(o, st);
    pool.append(window_buffers, team);
    gather<DistanceEvent>(distance_buffers, distance_events, team);
    gather<AngleEvent>(angle_buffers, angle_events, team);
    st.peak_active = std::max<std::uint64_t>(st.peak_active, pool.size());
    st.phase_seconds.compact += seconds_since(phase);

    if (config.check_invariants) {
      const std::uint64_t dropped = st.pruned_by.ich + st.pruned_by.split + st.pruned_by.tiny;
      if (pool.size() != st.windows_created - dropped - st.windows_propagated) {
        throw std::logic_error("window pool count mismatch after compaction");
      }
      for (std::size_t i = 0; i < pool.size(); ++i) {
        if (pool.keys()[i] != window_key(pool.windows()[i])) throw std::logic_error("stale window key in pool");
      }
    }

    phase = Clock::now();
    st.events_created += distance_events.size() + angle_events.size();
    st.events_applied += apply_events(distance_events, angle_events, dist, split, &team).total();
    st.phase_seconds.apply += seconds_since(phase);
  }

  st.windows_pruned = st.pruned_by.total();
  st.total_seconds = seconds_since(start);
  return result;
}

}  // namespace pchgeo
