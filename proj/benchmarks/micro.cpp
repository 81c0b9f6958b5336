#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "pchgeo/engine.hpp"
#include "pchgeo/events.hpp"
#include "pchgeo/geom.hpp"
#include "pchgeo/pool.hpp"
#include "pchgeo/shapes.hpp"
#include "pchgeo/worker_team.hpp"

namespace pchgeo {
namespace {

const SurfaceMesh& sphere() {
  static const SurfaceMesh m = shapes::bumpy(shapes::icosphere(4), 0.06, 9.0, 0.1, 1);
  return m;
}

// A few generations of unfiltered windows grown from vertex 0.
const std::vector<Window>& frontier() {
  static const std::vector<Window> ws = [] {
    const auto& mesh = sphere();
    const DistanceField dist(mesh.vertex_count(), kInfinity);
    const std::vector<SplitEntry> split(mesh.half_edge_count());
    const KernelView view{mesh, dist, split};
    std::vector<Window> all, level;
    create_source_windows(mesh, 0, level);
    for (int gen = 0; gen < 6 && all.size() < 20000; ++gen) {
      KernelOutput out;
      for (const auto& w : level) propagate_window(w, view, out);
      all.insert(all.end(), level.begin(), level.end());
      level = std::move(out.windows);
    }
    return all;
  }();
  return ws;
}

void BM_PropagateWindow(benchmark::State& state) {
  const auto& mesh = sphere();
  const auto& ws = frontier();
  // Converged distances make the filters do their full work.
  const bool converged = state.range(0) != 0;
  const DistanceField dist =
      converged ? run_ich(mesh, std::vector<Index>{0}).distances : DistanceField(mesh.vertex_count(), kInfinity);
  const std::vector<SplitEntry> split(mesh.half_edge_count());
  const KernelView view{mesh, dist, split};
  KernelOutput out;
  std::size_t i = 0;
  for (auto _ : state) {
    propagate_window(ws[i], view, out);
    if (++i == ws.size()) {
      i = 0;
      out.clear();
    }
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_PropagateWindow)->Arg(0)->Arg(1);

WindowPool random_pool(std::size_t n) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  WindowPool pool;
  for (std::size_t i = 0; i < n; ++i) pool.push({0, 0.0, 6.0, 5.0, 5.0, u(rng)});
  return pool;
}

void BM_SelectNearest(benchmark::State& state) {
  const auto mode = state.range(0) == 0 ? SelectionMode::exact : SelectionMode::approximate_strided;
  const auto k = static_cast<std::size_t>(state.range(1));
  const WindowPool base = random_pool(1 << 18);
  WorkerTeam team(static_cast<unsigned>(state.range(2)));
  std::vector<Window> sel;
  for (auto _ : state) {
    state.PauseTiming();
    WindowPool pool = base;
    state.ResumeTiming();
    select_nearest(pool, k, mode, team, sel);
    benchmark::DoNotOptimize(sel.data());
  }
  state.SetLabel(to_string(mode));
}
BENCHMARK(BM_SelectNearest)->ArgsProduct({{0, 1}, {256, 4096, 65536}, {1, 4}})->Unit(benchmark::kMicrosecond);

void BM_ApplyEvents(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const std::size_t vertices = n / 4;
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<Index> v(0, static_cast<Index>(vertices) - 1);
  std::uniform_real_distribution<double> x(0.0, 1.0);
  std::vector<DistanceEvent> de(n);
  std::vector<AngleEvent> ae(n);
  for (std::size_t i = 0; i < n; ++i) {
    de[i] = {v(rng), x(rng)};
    ae[i] = {v(rng), x(rng), x(rng), x(rng), Window{}};
  }
  WorkerTeam team(static_cast<unsigned>(state.range(1)));
  for (auto _ : state) {
    state.PauseTiming();
    auto d = de;
    auto a = ae;
    DistanceField dist(vertices, kInfinity);
    std::vector<SplitEntry> split(vertices);
    state.ResumeTiming();
    benchmark::DoNotOptimize(apply_events(d, a, dist, split, &team));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(2 * n));
}
BENCHMARK(BM_ApplyEvents)->ArgsProduct({{1 << 12, 1 << 16}, {1, 4}})->Unit(benchmark::kMicrosecond);

void BM_RunPch(benchmark::State& state) {
  const auto& mesh = sphere();
  EngineConfig c;
  c.k = static_cast<std::size_t>(state.range(0));
  c.workers = static_cast<unsigned>(state.range(1));
  std::uint64_t windows = 0;
  for (auto _ : state) {
    const auto r = run_pch(mesh, std::vector<Index>{0}, c);
    windows = r.stats.windows_created;
  }
  state.counters["windows"] = static_cast<double>(windows);
}
BENCHMARK(BM_RunPch)->ArgsProduct({{256, 4096, 16384}, {1, 4}})->Unit(benchmark::kMillisecond);

void BM_RunIch(benchmark::State& state) {
  const auto& mesh = sphere();
  std::uint64_t windows = 0;
  for (auto _ : state) windows = run_ich(mesh, std::vector<Index>{0}).stats.windows_created;
  state.counters["windows"] = static_cast<double>(windows);
}
BENCHMARK(BM_RunIch)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace pchgeo

BENCHMARK_MAIN();
