#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "bench.hpp"
#include "pchgeo/checks.hpp"
#include "pchgeo/distance_io.hpp"
#include "pchgeo/engine.hpp"
#include "pchgeo/mesh_io.hpp"

namespace pchgeo::cli {

namespace {

constexpr std::size_t kMaxReportLines = 20;

struct RunOptions {
  std::string mesh;
  std::string format = "auto";
  std::vector<Index> sources;
  std::string sources_file;
  std::string algo = "pch";
  std::size_t k = EngineConfig{}.k;
  unsigned threads = 0;
  std::string selection = "exact";
  double epsilon = kEpsilonWindow;
  std::uint64_t seed = 0;
};

struct ComputeOptions {
  RunOptions run;
  std::string out;
  std::string stats;
  std::string ply;
  bool ascii = false;
};

struct ValidateOptions {
  RunOptions run;
  std::string distances;
  double tolerance = 1e-9;
};

struct BenchOptions {
  std::vector<std::string> meshes;
  std::string format = "auto";
  std::vector<std::string> algos{"pch"};
  std::vector<std::size_t> ks{256, 4096, 16384};
  std::vector<unsigned> threads{1};
  std::vector<std::string> selections{"exact"};
  unsigned repetitions = 1;
  unsigned sources_per_run = 1;
  std::uint64_t seed = 1;
  double epsilon = kEpsilonWindow;
  std::string report = "csv";
  std::string out = "-";
  bool omit_timing = false;
};

struct ExportOptions {
  std::string mesh;
  std::string format = "auto";
  std::string distances;
  std::string out;
  bool ascii = false;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};


void add_run_options(CLI::App& cmd, RunOptions& o, bool with_algo) {
  cmd.add_option("--mesh", o.mesh, "Triangle mesh (OBJ or PLY)")->required();
  cmd.add_option("--format", o.format, "Mesh format")->check(CLI::IsMember({"auto", "obj", "ply"}));
  cmd.add_option("--source", o.sources, "Source vertex index (repeatable)");
  cmd.add_option("--sources", o.sources_file, "File of source vertex indices");
  if (with_algo) {
    cmd.add_option("--algo", o.algo, "Algorithm")->check(CLI::IsMember({"pch", "ich", "dijkstra", "brute"}));
  }
  cmd.add_option("--k", o.k, "Windows selected per iteration")->check(CLI::PositiveNumber);
  cmd.add_option("--threads", o.threads, "Worker threads (0 = hardware concurrency)");
  cmd.add_option("--selection", o.selection, "k-selection mode")
      ->check(CLI::IsMember({"exact", "strided", "approximate_strided"}));
  cmd.add_option("--epsilon", o.epsilon, "Minimum window length")->check(CLI::NonNegativeNumber);
  cmd.add_option("--seed", o.seed, "Seed recorded in the run configuration");
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot write " + path);
  return f;
}

// Writes through `out` for "-", otherwise to the named file.
void write_to(const std::string& path, std::ostream& out, const std::function<void(std::ostream&)>& body) {
  if (path == "-") {
    body(out);
    out.flush();
    return;
  }
  auto f = open_out(path);
  body(f);
  if (!f) throw IoError("failed writing " + path);
}

SurfaceMesh load(const std::string& path, const std::string& format) {
  return load_mesh(path, parse_mesh_format(format));
}

std::vector<Index> gather_sources(const RunOptions& o) {
  std::vector<Index> sources = o.sources;
  if (!o.sources_file.empty()) {
    const auto more = load_sources(o.sources_file);
    sources.insert(sources.end(), more.begin(), more.end());
  }
  if (sources.empty()) throw std::invalid_argument("no source vertices given (use --source or --sources)");
  return sources;
}

EngineConfig engine_config(const RunOptions& o) {
  EngineConfig c;
  c.k = o.k;
  c.workers = o.threads;
  c.selection = parse_selection_mode(o.selection);
  c.epsilon_window = o.epsilon;
  c.seed = o.seed;
  return c;
}

DistanceResult run_algorithm(const std::string& algo, const SurfaceMesh& mesh, const std::vector<Index>& sources,
                             const EngineConfig& config) {
  if (algo == "pch") return run_pch(mesh, sources, config);
  if (algo == "ich") return run_ich(mesh, sources, config);

  check_sources(mesh, sources);
  DistanceResult r;
  const auto t0 = std::chrono::steady_clock::now();
  r.distances = algo == "dijkstra" ? run_dijkstra(mesh, sources) : brute_force_geodesic(mesh, sources);
  r.stats.total_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  r.stats.algorithm = algo;
  r.stats.vertices = mesh.vertex_count();
  r.stats.faces = mesh.face_count();
  r.stats.sources = sources.size();
  r.stats.k = 0;
  r.stats.workers = 1;
  r.stats.selection = "-";
  return r;
}

void warn_ignored(const CLI::App& cmd, const std::string& algo, std::ostream& err) {
  if (algo == "pch") return;
  for (const char* flag : {"--k", "--threads", "--selection"}) {
    if (cmd.count(flag) > 0) err << "warning: " << flag << " is ignored for --algo " << algo << '\n';
  }
}

std::string fmt(const char* format, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, x);
  return buf;
}

int cmd_compute(const CLI::App& cmd, const ComputeOptions& o, std::ostream& out, std::ostream& err) {
  const SurfaceMesh mesh = load(o.run.mesh, o.run.format);
  const auto sources = gather_sources(o.run);
  warn_ignored(cmd, o.run.algo, err);
  const DistanceResult r = run_algorithm(o.run.algo, mesh, sources, engine_config(o.run));

  if (!o.out.empty()) write_to(o.out, out, [&](std::ostream& s) { write_distances(s, r.distances); });
  if (!o.stats.empty()) write_to(o.stats, out, [&](std::ostream& s) { s << stats_to_json(r.stats) << '\n'; });
  if (!o.ply.empty()) {
    const auto enc = o.ascii ? PlyEncoding::ascii : PlyEncoding::binary_little_endian;
    write_to(o.ply, out, [&](std::ostream& s) { write_ply(s, mesh, std::span<const double>(r.distances), enc); });
  }

  err << o.run.algo << ": " << mesh.vertex_count() << " vertices, " << r.stats.windows_created << " windows, "
      << r.stats.iterations << " iterations, " << fmt("%.6f", r.stats.total_seconds) << " s\n";
  return kOk;
}

void report_vertices(std::ostream& err, const std::vector<Index>& bad, const std::function<std::string(Index)>& line) {
  for (std::size_t i = 0; i < bad.size() && i < kMaxReportLines; ++i) err << "  " << line(bad[i]) << '\n';
  if (bad.size() > kMaxReportLines) err << "  ... and " << bad.size() - kMaxReportLines << " more\n";
}

int compare_file(const ValidateOptions& o, const SurfaceMesh& mesh, const std::vector<Index>& sources,
                 std::ostream& err) {
  const auto given = load_distances(o.distances);
  if (given.size() != mesh.vertex_count()) {
    throw std::invalid_argument("distance file has " + std::to_string(given.size()) + " entries, mesh has " +
                                std::to_string(mesh.vertex_count()) + " vertices");
  }
  const auto ref = run_ich(mesh, sources, engine_config(o.run)).distances;
  const auto dev = max_relative_deviation(given, ref);
  const auto bad = deviating_vertices(given, ref, o.tolerance);
  err << "file vs ich: max relative deviation " << fmt("%.3g", dev.max_relative) << ", " << bad.size()
      << " vertices over " << fmt("%g", o.tolerance) << '\n';
  report_vertices(err, bad, [&](Index v) {
    const auto i = static_cast<std::size_t>(v);
    return "vertex " + std::to_string(v) + ": file " + fmt("%.17g", given[i]) + ", reference " +
           fmt("%.17g", ref[i]);
  });
  return bad.empty() ? kOk : kValidationFailed;
}

int cmd_validate(const ValidateOptions& o, std::ostream& err) {
  const SurfaceMesh mesh = load(o.run.mesh, o.run.format);
  const auto sources = gather_sources(o.run);
  if (!o.distances.empty()) return compare_file(o, mesh, sources, err);

  const EngineConfig config = engine_config(o.run);
  const auto pch = run_pch(mesh, sources, config).distances;
  const auto ich = run_ich(mesh, sources, config).distances;
  const auto dij = run_dijkstra(mesh, sources);
  bool ok = true;

  const auto compare = [&](const char* name, const DistanceField& ref) {
    const auto dev = max_relative_deviation(pch, ref);
    const bool pass = dev.max_relative <= o.tolerance;
    ok = ok && pass;
    err << "pch vs " << name << ": max relative deviation " << fmt("%.3g", dev.max_relative);
    if (dev.vertex >= 0) err << " at vertex " << dev.vertex;
    err << (pass ? "" : "  FAIL") << '\n';
  };
  compare("ich", ich);
  if (mesh.face_count() <= kBruteForceMaxFaces) {
    compare("brute", brute_force_geodesic(mesh, sources));
  } else {
    err << "pch vs brute: skipped (" << mesh.face_count() << " faces)\n";
  }

  const auto lip = lipschitz_violations(mesh, pch, o.tolerance);
  err << "edge-Lipschitz violations: " << lip.size() << '\n';
  report_vertices(err, lip, [&](Index j) {
    return "edge " + std::to_string(mesh.origin(j)) + "-" + std::to_string(mesh.target(j));
  });
  const auto sand = sandwich_violations(mesh, sources, pch, dij, o.tolerance);
  err << "sandwich violations: " << sand.size() << '\n';
  report_vertices(err, sand, [&](Index v) {
    const auto i = static_cast<std::size_t>(v);
    return "vertex " + std::to_string(v) + ": " + fmt("%.17g", pch[i]) + ", dijkstra " + fmt("%.17g", dij[i]);
  });
  ok = ok && lip.empty() && sand.empty();
  err << (ok ? "valid" : "INVALID") << '\n';
  return ok ? kOk : kValidationFailed;
}

int cmd_bench(const BenchOptions& o, std::ostream& out, std::ostream& err) {
  std::vector<BenchMesh> meshes;
  for (const auto& path : o.meshes) meshes.push_back({path, load(path, o.format)});
  BenchPlan plan;
  plan.algorithms = o.algos;
  plan.ks = o.ks;
  plan.threads = o.threads;
  plan.selections.clear();
  for (const auto& s : o.selections) plan.selections.push_back(parse_selection_mode(s));
  plan.repetitions = o.repetitions;
  plan.sources_per_run = o.sources_per_run;
  plan.seed = o.seed;
  plan.epsilon_window = o.epsilon;

  const auto rows = run_bench(meshes, plan);
  write_to(o.out, out, [&](std::ostream& s) {
    if (o.report == "json") {
      write_bench_json(s, rows, o.omit_timing);
    } else {
      write_bench_csv(s, rows, o.omit_timing);
    }
  });
  err << "bench: " << rows.size() << " configurations, " << o.repetitions << " repetitions each\n";
  return kOk;
}

int cmd_export(const ExportOptions& o, std::ostream& out, std::ostream& err) {
  const SurfaceMesh mesh = load(o.mesh, o.format);
  std::vector<double> d;
  if (!o.distances.empty()) {
    d = load_distances(o.distances);
    if (d.size() != mesh.vertex_count()) throw std::invalid_argument("distance file does not match the mesh");
  }
  const auto enc = o.ascii ? PlyEncoding::ascii : PlyEncoding::binary_little_endian;
  write_to(o.out, out, [&](std::ostream& s) {
    if (d.empty()) {
      write_ply(s, mesh, std::nullopt, enc);
    } else {
      write_ply(s, mesh, std::span<const double>(d), enc);
    }
  });
  err << "export-ply: " << mesh.vertex_count() << " vertices, " << mesh.face_count() << " faces\n";
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact geodesic distance fields on triangle meshes", "pchgeo"};
  app.require_subcommand(1);

  ComputeOptions compute;
  auto* c = app.add_subcommand("compute", "Compute a distance field");
  add_run_options(*c, compute.run, true);
  c->add_option("--out", compute.out, "Distance file ('-' for stdout)");
  c->add_option("--stats", compute.stats, "Run statistics as JSON ('-' for stdout)");
  c->add_option("--ply", compute.ply, "PLY with a geodesic_distance vertex property");
  c->add_flag("--ascii", compute.ascii, "Write ascii PLY");

  ValidateOptions validate;
  auto* v = app.add_subcommand("validate", "Cross-check engines and invariants");
  add_run_options(*v, validate.run, false);
  v->add_option("--distances", validate.distances, "Check this distance file against the reference instead");
  v->add_option("--tolerance", validate.tolerance, "Relative tolerance")->check(CLI::NonNegativeNumber);

  BenchOptions bench;
  auto* b = app.add_subcommand("bench", "Timing and window counts over k, threads and selection mode");
  b->add_option("--mesh", bench.meshes, "Mesh (repeatable)")->required();
  b->add_option("--format", bench.format, "Mesh format")->check(CLI::IsMember({"auto", "obj", "ply"}));
  b->add_option("--algo", bench.algos, "Algorithms")->delimiter(',')->check(CLI::IsMember({"pch", "ich"}));
  b->add_option("--k", bench.ks, "k values")->delimiter(',')->check(CLI::PositiveNumber);
  b->add_option("--threads", bench.threads, "Thread counts")->delimiter(',')->check(CLI::PositiveNumber);
  b->add_option("--selection", bench.selections, "Selection modes")
      ->delimiter(',')
      ->check(CLI::IsMember({"exact", "strided", "approximate_strided"}));
  b->add_option("--repetitions", bench.repetitions, "Runs per configuration")->check(CLI::PositiveNumber);
  b->add_option("--sources-per-run", bench.sources_per_run, "Random sources per run")->check(CLI::PositiveNumber);
  b->add_option("--seed", bench.seed, "Seed for the random sources");
  b->add_option("--epsilon", bench.epsilon, "Minimum window length")->check(CLI::NonNegativeNumber);
  b->add_option("--report", bench.report, "Report format")->check(CLI::IsMember({"csv", "json"}));
  b->add_option("--out", bench.out, "Report file ('-' for stdout)");
  b->add_flag("--omit-timing", bench.omit_timing, "Write zeros in the timing columns");

  ExportOptions exp;
  auto* e = app.add_subcommand("export-ply", "Write a mesh and optional distance field as PLY");
  e->add_option("--mesh", exp.mesh, "Triangle mesh")->required();
  e->add_option("--format", exp.format, "Mesh format")->check(CLI::IsMember({"auto", "obj", "ply"}));
  e->add_option("--distances", exp.distances, "Distance file to attach");
  e->add_option("--out", exp.out, "PLY file ('-' for stdout)")->required();
  e->add_flag("--ascii", exp.ascii, "Write ascii PLY");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& ex) {
    const int code = app.exit(ex, out, err);
    return code == 0 ? kOk : kBadArguments;
  }

  try {
    if (c->parsed()) return cmd_compute(*c, compute, out, err);
    if (v->parsed()) return cmd_validate(validate, err);
    if (b->parsed()) return cmd_bench(bench, out, err);
    return cmd_export(exp, out, err);
  } catch (const EngineGuardError& ex) {
    err << "error: " << ex.what() << '\n';
    return kGuard;
  } catch (const std::invalid_argument& ex) {
    err << "error: " << ex.what() << '\n';
    return kBadArguments;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << '\n';
    return kIoError;
  }
}

}  // namespace pchgeo::cli
