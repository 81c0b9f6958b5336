#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "pchgeo/engine.hpp"
#include "pchgeo/mesh.hpp"

namespace pchgeo::cli {

struct BenchMesh {
  std::string name;
  SurfaceMesh mesh;
};

struct BenchPlan {
  std::vector<std::string> algorithms{"pch"};
  std::vector<std::size_t> ks{4096};
  std::vector<unsigned> threads{1};
  std::vector<SelectionMode> selections{SelectionMode::exact};
  unsigned repetitions = 1;
  unsigned sources_per_run = 1;
  std::uint64_t seed = 1;
  double epsilon_window = kEpsilonWindow;
};

/// Averages over the repetitions of one configuration.
struct BenchRow {
  std::string mesh;
  std::size_t vertices = 0;
  std::size_t faces = 0;
  std::string algorithm;
  std::string selection;
  std::size_t k = 0;
  unsigned threads = 0;
  unsigned repetitions = 0;
  double windows_created = 0.0;
  double windows_propagated = 0.0;
  double peak_active = 0.0;
  double iterations = 0.0;
  double mean_seconds = 0.0;
  double stddev_seconds = 0.0;
  PhaseSeconds phases;  // means
  double propagate_share = 0.0;
  double propagate_speedup = 0.0;  // vs the threads == 1 row of the same setup, 0 if none
};

/// Sources for repetition r are drawn from a generator seeded with (seed, r),
/// so every configuration sees the same sources.
std::vector<Index> bench_sources(const SurfaceMesh& mesh, unsigned count, std::uint64_t seed, unsigned repetition);

std::vector<BenchRow> run_bench(const std::vector<BenchMesh>& meshes, const BenchPlan& plan);

/// With omit_timing every time column is written as 0, which makes the output
/// reproducible byte for byte.
void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows, bool omit_timing);
void write_bench_json(std::ostream& out, const std::vector<BenchRow>& rows, bool omit_timing);

}  // namespace pchgeo::cli
