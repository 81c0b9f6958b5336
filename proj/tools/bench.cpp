#include "bench.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <random>
#include <stdexcept>
#include <tuple>

#include <nlohmann/json.hpp>

namespace pchgeo::cli {

std::vector<Index> bench_sources(const SurfaceMesh& mesh, unsigned count, std::uint64_t seed, unsigned repetition) {
  if (mesh.vertex_count() == 0) throw std::invalid_argument("mesh has no vertices");
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), repetition};
  std::mt19937_64 rng(seq);
  std::uniform_int_distribution<Index> pick(0, static_cast<Index>(mesh.vertex_count()) - 1);
  std::vector<Index> sources(count);
  for (auto& s : sources) s = pick(rng);
  return sources;
}

namespace {

DistanceResult run_one(const std::string& algo, const SurfaceMesh& mesh, const std::vector<Index>& sources,
                       const EngineConfig& config) {
  if (algo == "pch") return run_pch(mesh, sources, config);
  if (algo == "ich") return run_ich(mesh, sources, config);
  throw std::invalid_argument("bench supports pch and ich, not " + algo);
}

BenchRow measure(const BenchMesh& m, const std::string& algo, SelectionMode sel, std::size_t k, unsigned t,
                 const BenchPlan& plan) {
  BenchRow row;
  row.mesh = m.name;
  row.vertices = m.mesh.vertex_count();
  row.faces = m.mesh.face_count();
  row.algorithm = algo;
  row.selection = algo == "pch" ? to_string(sel) : "-";
  row.k = algo == "pch" ? k : 1;
  row.threads = algo == "pch" ? t : 1;
  row.repetitions = plan.repetitions;

  EngineConfig config;
  config.k = k;
  config.workers = t;
  config.selection = sel;
  config.epsilon_window = plan.epsilon_window;
  config.seed = plan.seed;

  std::vector<double> times;
  for (unsigned r = 0; r < plan.repetitions; ++r) {
    const auto sources = bench_sources(m.mesh, plan.sources_per_run, plan.seed, r);
    const RunStats s = run_one(algo, m.mesh, sources, config).stats;
    row.windows_created += static_cast<double>(s.windows_created);
    row.windows_propagated += static_cast<double>(s.windows_propagated);
    row.peak_active += static_cast<double>(s.peak_active);
    row.iterations += static_cast<double>(s.iterations);
    row.phases.init += s.phase_seconds.init;
    row.phases.select += s.phase_seconds.select;
    row.phases.propagate += s.phase_seconds.propagate;
    row.phases.compact += s.phase_seconds.compact;
    row.phases.apply += s.phase_seconds.apply;
    times.push_back(s.total_seconds);
  }
  const double n = plan.repetitions;
  row.windows_created /= n;
  row.windows_propagated /= n;
  row.peak_active /= n;
  row.iterations /= n;
  row.phases.init /= n;
  row.phases.select /= n;
  row.phases.propagate /= n;
  row.phases.compact /= n;
  row.phases.apply /= n;
  for (const double x : times) row.mean_seconds += x / n;
  if (times.size() > 1) {
    double ss = 0.0;
    for (const double x : times) ss += (x - row.mean_seconds) * (x - row.mean_seconds);
    row.stddev_seconds = std::sqrt(ss / (n - 1.0));
  }
  row.propagate_share = row.mean_seconds > 0.0 ? row.phases.propagate / row.mean_seconds : 0.0;
  return row;
}

}  // namespace

std::vector<BenchRow> run_bench(const std::vector<BenchMesh>& meshes, const BenchPlan& plan) {
  if (plan.repetitions == 0) throw std::invalid_argument("repetitions must be positive");
  if (plan.sources_per_run == 0) throw std::invalid_argument("need at least one source per run");
  std::vector<BenchRow> rows;
  for (const auto& m : meshes) {
    for (const auto& algo : plan.algorithms) {
      if (algo != "pch") {
        rows.push_back(measure(m, algo, SelectionMode::exact, 1, 1, plan));
        continue;
      }
      for (const SelectionMode sel : plan.selections) {
        for (const std::size_t k : plan.ks) {
          for (const unsigned t : plan.threads) rows.push_back(measure(m, algo, sel, k, t, plan));
        }
      }
    }
  }
  // Propagation speedup relative to the single-worker row of the same setup.
  std::map<std::tuple<std::string, std::string, std::string, std::size_t>, double> base;
  for (const auto& r : rows) {
    if (r.threads == 1) base[{r.mesh, r.algorithm, r.selection, r.k}] = r.phases.propagate;
  }
  for (auto& r : rows) {
    const auto it = base.find({r.mesh, r.algorithm, r.selection, r.k});
    if (it != base.end() && r.phases.propagate > 0.0) r.propagate_speedup = it->second / r.phases.propagate;
  }
  return rows;
}

namespace {

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

}  // namespace

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows, bool omit_timing) {
  out << "mesh,vertices,faces,algorithm,selection,k,threads,repetitions,windows_created,windows_propagated,"
         "peak_active,iterations,mean_seconds,stddev_seconds,init_seconds,select_seconds,propagate_seconds,"
         "compact_seconds,apply_seconds,propagate_share,propagate_speedup\n";
  const auto t = [&](double x) { return omit_timing ? std::string("0") : num(x); };
  for (const auto& r : rows) {
    out << r.mesh << ',' << r.vertices << ',' << r.faces << ',' << r.algorithm << ',' << r.selection << ',' << r.k
        << ',' << r.threads << ',' << r.repetitions << ',' << num(r.windows_created) << ','
        << num(r.windows_propagated) << ',' << num(r.peak_active) << ',' << num(r.iterations) << ','
        << t(r.mean_seconds) << ',' << t(r.stddev_seconds) << ',' << t(r.phases.init) << ','
        << t(r.phases.select) << ',' << t(r.phases.propagate) << ',' << t(r.phases.compact) << ','
        << t(r.phases.apply) << ',' << t(r.propagate_share) << ',' << t(r.propagate_speedup) << '\n';
  }
}

void write_bench_json(std::ostream& out, const std::vector<BenchRow>& rows, bool omit_timing) {
  const auto t = [&](double x) { return omit_timing ? 0.0 : x; };
  nlohmann::ordered_json doc;
  doc["schema"] = 1;
  doc["rows"] = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json j;
    j["mesh"] = r.mesh;
    j["vertices"] = r.vertices;
    j["faces"] = r.faces;
    j["algorithm"] = r.algorithm;
    j["selection"] = r.selection;
    j["k"] = r.k;
    j["threads"] = r.threads;
    j["repetitions"] = r.repetitions;
    j["windows_created"] = r.windows_created;
    j["windows_propagated"] = r.windows_propagated;
    j["peak_active"] = r.peak_active;
    j["iterations"] = r.iterations;
    j["mean_seconds"] = t(r.mean_seconds);
    j["stddev_seconds"] = t(r.stddev_seconds);
    j["phase_seconds"] = {{"init", t(r.phases.init)},
                          {"select", t(r.phases.select)},
                          {"propagate", t(r.phases.propagate)},
                          {"compact", t(r.phases.compact)},
                          {"apply", t(r.phases.apply)}};
    j["propagate_share"] = t(r.propagate_share);
    j["propagate_speedup"] = t(r.propagate_speedup);
    doc["rows"].push_back(std::move(j));
  }
  out << doc.dump(2) << '\n';
}

}  // namespace pchgeo::cli
