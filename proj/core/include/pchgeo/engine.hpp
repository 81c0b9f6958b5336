#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "pchgeo/geom.hpp"
#include "pchgeo/mesh.hpp"
#include "pchgeo/pool.hpp"

namespace pchgeo {

/// One value per vertex; +inf where no source reaches.
using DistanceField = std::vector<double>;

struct EngineConfig {
  std::size_t k = 4096;
  unsigned workers = 0;  // 0 means default_worker_count()
  SelectionMode selection = SelectionMode::exact;
  double epsilon_window = kEpsilonWindow;
  std::uint64_t seed = 0;
  FanClip fan_clip = FanClip::clip_to_rays;
  /// Re-filter windows against current distances when they are propagated.
  bool recheck = true;
  /// Stop after this many iterations (0 = run until the pool drains).
  std::uint64_t max_iterations = 0;
  /// Re-check pool bookkeeping after every compaction (slow).
  bool check_invariants = false;
};

struct PhaseSeconds {
  double init = 0.0;
  double select = 0.0;
  double propagate = 0.0;
  double compact = 0.0;
  double apply = 0.0;
};

struct RunStats {
  std::string algorithm;
  std::size_t vertices = 0;
  std::size_t faces = 0;
  std::size_t sources = 0;
  std::size_t k = 0;
  unsigned workers = 1;
  std::string selection;
  /// Every window constructed, including the ones the filters threw away.
  std::uint64_t windows_created = 0;
  std::uint64_t windows_pruned = 0;
  DropCounts pruned_by;
  std::uint64_t windows_propagated = 0;
  std::uint64_t iterations = 0;
  std::uint64_t peak_active = 0;
  std::uint64_t events_created = 0;
  std::uint64_t events_applied = 0;
  std::uint32_t max_children = 0;
  std::uint64_t buffer_overflows = 0;
  bool truncated = false;  // stopped by max_iterations
  PhaseSeconds phase_seconds;
  double total_seconds = 0.0;
};

/// Flat JSON object with a "schema": 1 field.
std::string stats_to_json(const RunStats& stats);

struct DistanceResult {
  DistanceField distances;
  RunStats stats;
};

/// Raised when an engine refuses an input it was not built for.
class EngineGuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Throws std::invalid_argument for an empty list or an out-of-range index.
void check_sources(const SurfaceMesh& mesh, std::span<const Index> sources);

/// Batch-parallel window propagation: select k nearest, propagate them on T
/// workers into private buffers, compact, then apply the sorted events.
DistanceResult run_pch(const SurfaceMesh& mesh, std::span<const Index> sources, const EngineConfig& config = {});

/// Sequential reference: a priority queue on window key, one window at a time,
/// events applied immediately. Only epsilon_window and fan_clip are used.
DistanceResult run_ich(const SurfaceMesh& mesh, std::span<const Index> sources, const EngineConfig& config = {});

/// Shortest paths along mesh edges. An upper bound on geodesic distance.
DistanceField run_dijkstra(const SurfaceMesh& mesh, std::span<const Index> sources);

inline constexpr std::size_t kBruteForceMaxFaces = 256;

/// Exhaustive oracle: straight segments between vertices found by unfolding
/// every simple face sequence, chained by Dijkstra. Exponential; throws
/// EngineGuardError above `max_faces`.
DistanceField brute_force_geodesic(const SurfaceMesh& mesh, std::span<const Index> sources,
                                   std::size_t max_faces = kBruteForceMaxFaces);

}  // namespace pchgeo
