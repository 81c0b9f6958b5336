#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <random>
#include <vector>

#include <nlohmann/json.hpp>

#include "corpus.hpp"
#include "pchgeo/checks.hpp"
#include "pchgeo/engine.hpp"
#include "pchgeo/shapes.hpp"

namespace pchgeo {
namespace {

constexpr double kTol = 1e-9;

std::vector<Index> one(Index s) { return {s}; }

EngineConfig config(std::size_t k, unsigned t, SelectionMode mode = SelectionMode::exact) {
  EngineConfig c;
  c.k = k;
  c.workers = t;
  c.selection = mode;
  return c;
}

bool bit_identical(const DistanceField& a, const DistanceField& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

TEST(Engine, SingleTriangle) {
  const auto mesh = shapes::single_triangle();
  const DistanceField expect{0.0, 1.0, 1.0};
  EXPECT_LE(max_relative_deviation(run_pch(mesh, one(0)).distances, expect).max_relative, 1e-15);
  EXPECT_LE(max_relative_deviation(run_ich(mesh, one(0)).distances, expect).max_relative, 1e-15);
}

TEST(Engine, LoneTriangleBatchOnFourWorkers) {
  const auto r = run_pch(shapes::single_triangle(), one(0), config(16, 4));
  EXPECT_EQ(r.stats.windows_created, 1u);  // the source window
  EXPECT_EQ(r.stats.windows_propagated, 1u);
  EXPECT_EQ(r.stats.events_created, 2u);
  EXPECT_EQ(r.stats.iterations, 1u);
  EXPECT_EQ(r.stats.workers, 4u);
}

TEST(Engine, CubeCorners) {
  const auto mesh = shapes::unit_cube();
  for (const auto& d : {run_pch(mesh, one(0)).distances, run_ich(mesh, one(0)).distances}) {
    EXPECT_NEAR(d[1], 1.0, kTol);
    EXPECT_NEAR(d[2], std::sqrt(2.0), kTol);
    EXPECT_NEAR(d[6], std::sqrt(5.0), kTol);
  }
}

TEST(Engine, MatchesBruteForceOnTinyCorpus) {
  for (const auto& m : testing::tiny_corpus()) {
    for (const Index s : {Index{0}, static_cast<Index>(m.mesh.vertex_count() - 1)}) {
      const auto exact = brute_force_geodesic(m.mesh, one(s));
      for (const auto& c : {config(1, 1), config(4096, 1), config(3, 2, SelectionMode::approximate_strided)}) {
        const auto d = run_pch(m.mesh, one(s), c).distances;
        EXPECT_LE(max_relative_deviation(d, exact).max_relative, kTol) << m.name << " source " << s;
      }
      EXPECT_LE(max_relative_deviation(run_ich(m.mesh, one(s)).distances, exact).max_relative, kTol) << m.name;
    }
  }
}

TEST(Engine, OrderIndependence) {
  for (const auto& m : testing::medium_corpus()) {
    const auto ref = run_ich(m.mesh, one(1)).distances;
    for (const auto& c : {config(1, 1), config(16384, 8), config(64, 3, SelectionMode::approximate_strided)}) {
      const auto d = run_pch(m.mesh, one(1), c).distances;
      EXPECT_LE(max_relative_deviation(d, ref).max_relative, kTol) << m.name << " k=" << c.k;
    }
  }
}

TEST(Engine, ExactSelectionIsIndependentOfWorkerCount) {
  const auto mesh = shapes::bumpy(shapes::icosphere(3), 0.08, 6.0, 0.1, 3);
  const auto a = run_pch(mesh, one(5), config(128, 1));
  const auto b = run_pch(mesh, one(5), config(128, 4));
  EXPECT_TRUE(bit_identical(a.distances, b.distances));
  EXPECT_EQ(a.stats.windows_created, b.stats.windows_created);
  EXPECT_EQ(a.stats.iterations, b.stats.iterations);
}

TEST(Engine, FirstIterationOnlyLowersTowardsTruth) {
  const auto mesh = shapes::unit_cube();
  EngineConfig c = config(4, 1);
  c.max_iterations = 1;
  const auto partial = run_pch(mesh, one(0), c);
  EXPECT_TRUE(partial.stats.truncated);
  const auto full = run_pch(mesh, one(0)).distances;
  for (std::size_t i = 0; i < full.size(); ++i) EXPECT_GE(partial.distances[i], full[i] - 1e-12);
  EXPECT_EQ(partial.distances[0], 0.0);
}

TEST(Engine, SandwichAndLipschitz) {
  auto corpus = testing::tiny_corpus();
  for (auto& m : testing::medium_corpus()) corpus.push_back(std::move(m));
  for (const auto& m : corpus) {
    const auto d = run_pch(m.mesh, one(0), config(256, 2)).distances;
    const auto upper = run_dijkstra(m.mesh, one(0));
    EXPECT_TRUE(sandwich_violations(m.mesh, one(0), d, upper, kTol).empty()) << m.name;
    EXPECT_TRUE(lipschitz_violations(m.mesh, d, kTol).empty()) << m.name;
  }
}

TEST(Engine, MultiSourceIsPointwiseMin) {
  const auto mesh = shapes::bumpy(shapes::icosphere(3), 0.08, 6.0, 0.1, 8);
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<Index> pick(0, static_cast<Index>(mesh.vertex_count()) - 1);
  std::vector<Index> sources;
  for (int i = 0; i < 4; ++i) sources.push_back(pick(rng));
  DistanceField expect(mesh.vertex_count(), kInfinity);
  for (const Index s : sources) {
    const auto d = run_pch(mesh, one(s)).distances;
    for (std::size_t i = 0; i < d.size(); ++i) expect[i] = std::min(expect[i], d[i]);
  }
  const auto multi = run_pch(mesh, sources, config(512, 2)).distances;
  EXPECT_LE(max_relative_deviation(multi, expect).max_relative, kTol);
  for (const Index s : sources) EXPECT_EQ(multi[static_cast<std::size_t>(s)], 0.0);
}

TEST(Engine, DuplicateSourcesAreHarmless) {
  const auto mesh = shapes::icosphere(1);
  EXPECT_EQ(run_pch(mesh, std::vector<Index>{3, 3, 3}).distances, run_pch(mesh, one(3)).distances);
}

TEST(Engine, Determinism) {
  const auto mesh = shapes::bumpy(shapes::icosphere(3), 0.08, 6.0, 0.1, 3);
  for (const auto mode : {SelectionMode::exact, SelectionMode::approximate_strided}) {
    for (const unsigned t : {1u, 3u, 8u}) {
      const auto a = run_pch(mesh, one(7), config(200, t, mode));
      const auto b = run_pch(mesh, one(7), config(200, t, mode));
      EXPECT_TRUE(bit_identical(a.distances, b.distances));
      EXPECT_EQ(a.stats.windows_created, b.stats.windows_created);
      EXPECT_EQ(a.stats.windows_pruned, b.stats.windows_pruned);
      EXPECT_EQ(a.stats.events_applied, b.stats.events_applied);
    }
  }
}

TEST(Engine, PoolBookkeeping) {
  for (const auto& m : testing::medium_corpus()) {
    EngineConfig c = config(97, 3, SelectionMode::approximate_strided);
    c.check_invariants = true;
    const auto r = run_pch(m.mesh, one(2), c);
    const auto& s = r.stats;
    EXPECT_LE(s.events_applied, s.events_created) << m.name;
    EXPECT_LE(s.windows_pruned, s.windows_created) << m.name;
    // The pool drained: every window was dropped on creation or propagated.
    EXPECT_EQ(s.windows_created, s.pruned_by.ich + s.pruned_by.split + s.pruned_by.tiny + s.windows_propagated)
        << m.name;
    EXPECT_FALSE(s.truncated);
  }
}

TEST(Engine, SmallBuffersGrow) {
  // k = 1 gives buffers of 4 windows; a saddle fan produces more than that.
  const auto mesh = shapes::saddle_fan(12);
  const auto r = run_pch(mesh, one(1), config(1, 1));
  EXPECT_GT(r.stats.max_children, 4u);
  EXPECT_GT(r.stats.buffer_overflows, 0u);
  EXPECT_LE(max_relative_deviation(r.distances, brute_force_geodesic(mesh, one(1))).max_relative, kTol);
}

TEST(Engine, RecheckOnlySavesWork) {
  const auto mesh = shapes::radial_noise(shapes::icosphere(3), 0.03, 7);
  EngineConfig with = config(1024, 1);
  EngineConfig without = with;
  without.recheck = false;
  const auto a = run_pch(mesh, one(0), with);
  const auto b = run_pch(mesh, one(0), without);
  EXPECT_LE(max_relative_deviation(a.distances, b.distances).max_relative, kTol);
  EXPECT_LE(a.stats.windows_created, b.stats.windows_created);
  EXPECT_EQ(b.stats.pruned_by.stale, 0u);
}

TEST(Engine, FullEdgeFansAgree) {
  const auto mesh = shapes::bumpy(shapes::icosphere(2), 0.1, 5.0, 0.1, 4);
  EngineConfig c;
  c.fan_clip = FanClip::full_edges;
  const auto full = run_pch(mesh, one(0), c);
  const auto clipped = run_pch(mesh, one(0));
  EXPECT_LE(max_relative_deviation(full.distances, clipped.distances).max_relative, kTol);
  EXPECT_GE(full.stats.windows_created, clipped.stats.windows_created);
}

TEST(Engine, UnreachableComponent) {
  const std::vector<Vec3> p = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {5, 0, 0}, {6, 0, 0}, {5, 1, 0}};
  const std::vector<Triangle> f = {{0, 1, 2}, {3, 4, 5}};
  const auto mesh = SurfaceMesh::from_triangles(p, f);
  const auto d = run_pch(mesh, one(0)).distances;
  EXPECT_TRUE(std::isinf(d[3]) && std::isinf(d[4]) && std::isinf(d[5]));
  EXPECT_EQ(d[1], 1.0);
}

TEST(Engine, RejectsBadSources) {
  const auto mesh = shapes::icosahedron();
  EXPECT_THROW(run_pch(mesh, std::vector<Index>{}), std::invalid_argument);
  EXPECT_THROW(run_pch(mesh, one(12)), std::invalid_argument);
  EXPECT_THROW(run_ich(mesh, one(-1)), std::invalid_argument);
  EXPECT_THROW(run_dijkstra(mesh, one(99)), std::invalid_argument);
  EXPECT_THROW(run_pch(mesh, one(0), config(0, 1)), std::invalid_argument);
}

TEST(Stats, JsonSchema) {
  const auto r = run_pch(shapes::icosahedron(), one(0), config(8, 2));
  const auto j = nlohmann::json::parse(stats_to_json(r.stats));
  EXPECT_EQ(j.at("schema"), 1);
  EXPECT_EQ(j.at("algorithm"), "pch");
  EXPECT_EQ(j.at("windows_created"), r.stats.windows_created);
  EXPECT_EQ(j.at("k"), 8);
  EXPECT_TRUE(j.contains("seconds_propagate"));
  EXPECT_EQ(j.at("pruned_stale"), r.stats.pruned_by.stale);
}

}  // namespace
}  // namespace pchgeo
