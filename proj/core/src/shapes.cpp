#include "pchgeo/shapes.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

namespace pchgeo::shapes {

namespace {

SurfaceMesh build(std::vector<Vec3> positions, const std::vector<Triangle>& faces) {
  return SurfaceMesh::from_triangles(std::move(positions), faces);
}

Vec3 normalized(Vec3 p) {
  const double n = std::sqrt(p.x * p.x + p.y * p.y + p.z * p.z);
  return {p.x / n, p.y / n, p.z / n};
}

std::vector<Vec3> copy_positions(const SurfaceMesh& mesh) { return {mesh.positions().begin(), mesh.positions().end()}; }

std::vector<Triangle> copy_faces(const SurfaceMesh& mesh) {
  std::vector<Triangle> faces(mesh.face_count());
  for (std::size_t f = 0; f < faces.size(); ++f) faces[f] = mesh.face_vertices(static_cast<Index>(f));
  return faces;
}

}  // namespace

SurfaceMesh single_triangle() { return build({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}, {{0, 1, 2}}); }

SurfaceMesh unit_cube() {
  std::vector<Vec3> p = {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}, {0, 0, 1}, {1, 0, 1}, {1, 1, 1}, {0, 1, 1}};
  std::vector<Triangle> f = {
      {0, 2, 1}, {0, 3, 2},  // z = 0
      {4, 5, 6}, {4, 6, 7},  // z = 1
      {0, 1, 5}, {0, 5, 4},  // y = 0
      {3, 7, 6}, {3, 6, 2},  // y = 1
      {0, 4, 7}, {0, 7, 3},  // x = 0
      {1, 2, 6}, {1, 6, 5},  // x = 1
  };
  return build(std::move(p), f);
}

SurfaceMesh tetrahedron() {
  std::vector<Vec3> p = {{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
  return build(std::move(p), {{0, 1, 2}, {0, 3, 1}, {0, 2, 3}, {1, 3, 2}});
}

SurfaceMesh octahedron() {
  std::vector<Vec3> p = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
  std::vector<Triangle> f = {{0, 2, 4}, {2, 1, 4}, {1, 3, 4}, {3, 0, 4},
                             {2, 0, 5}, {1, 2, 5}, {3, 1, 5}, {0, 3, 5}};
  return build(std::move(p), f);
}

SurfaceMesh icosahedron() {
  const double t = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Vec3> p = {{-1, t, 0}, {1, t, 0}, {-1, -t, 0}, {1, -t, 0}, {0, -1, t}, {0, 1, t},
                         {0, -1, -t}, {0, 1, -t}, {t, 0, -1}, {t, 0, 1}, {-t, 0, -1}, {-t, 0, 1}};
  for (auto& v : p) v = normalized(v);
  std::vector<Triangle> f = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
                             {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
                             {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
                             {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7}, {9, 8, 1}};
  return build(std::move(p), f);
}

SurfaceMesh icosphere(int subdivisions) {
  if (subdivisions < 0) throw std::invalid_argument("subdivisions must be non-negative");
  const auto base = icosahedron();
  auto positions = copy_positions(base);
  auto faces = copy_faces(base);
  for (int level = 0; level < subdivisions; ++level) {
    std::map<std::pair<Index, Index>, Index> midpoints;
    auto midpoint = [&](Index a, Index b) {
      const auto key = std::minmax(a, b);
      if (const auto it = midpoints.find(key); it != midpoints.end()) return it->second;
      const auto& pa = positions[static_cast<std::size_t>(a)];
      const auto& pb = positions[static_cast<std::size_t>(b)];
      positions.push_back(normalized({(pa.x + pb.x) / 2, (pa.y + pb.y) / 2, (pa.z + pb.z) / 2}));
      const auto id = static_cast<Index>(positions.size() - 1);
      midpoints.emplace(key, id);
      return id;
    };
    std::vector<Triangle> refined;
    refined.reserve(faces.size() * 4);
    for (const auto& [a, b, c] : faces) {
      const Index ab = midpoint(a, b);
      const Index bc = midpoint(b, c);
      const Index ca = midpoint(c, a);
      refined.push_back({a, ab, ca});
      refined.push_back({b, bc, ab});
      refined.push_back({c, ca, bc});
      refined.push_back({ab, bc, ca});
    }
    faces = std::move(refined);
  }
  return build(std::move(positions), faces);
}

SurfaceMesh planar_grid(int nx, int ny, double cell, bool alternate) {
  if (nx < 1 || ny < 1) throw std::invalid_argument("grid needs at least one cell");
  std::vector<Vec3> p;
  for (int j = 0; j <= ny; ++j) {
    for (int i = 0; i <= nx; ++i) p.push_back({i * cell, j * cell, 0.0});
  }
  auto id = [nx](int i, int j) { return static_cast<Index>(j * (nx + 1) + i); };
  std::vector<Triangle> f;
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const Index a = id(i, j);
      const Index b = id(i + 1, j);
      const Index c = id(i + 1, j + 1);
      const Index d = id(i, j + 1);
      if (alternate && (i + j) % 2 == 1) {
        f.push_back({a, b, d});
        f.push_back({b, c, d});
      } else {
        f.push_back({a, b, c});
        f.push_back({a, c, d});
      }
    }
  }
  return build(std::move(p), f);
}

SurfaceMesh planar_fan(int n, double radius) {
  if (n < 3) throw std::invalid_argument("fan needs at least three triangles");
  std::vector<Vec3> p = {{0, 0, 0}};
  for (int i = 0; i < n; ++i) {
    const double a = 2.0 * std::numbers::pi * i / n;
    p.push_back({radius * std::cos(a), radius * std::sin(a), 0.0});
  }
  std::vector<Triangle> f;
  for (int i = 0; i < n; ++i) f.push_back({0, static_cast<Index>(1 + i), static_cast<Index>(1 + (i + 1) % n)});
  return build(std::move(p), f);
}

SurfaceMesh saddle_fan(int n) {
  if (n < 8 || n % 2 != 0) throw std::invalid_argument("saddle fan needs an even n >= 8");
  // Ring points at radius r and heights +-h with unit spokes and unit chords:
  // r^2 + h^2 = 1 and 4 r^2 sin^2(pi/n) + 4 h^2 = 1.
  const double s = std::sin(std::numbers::pi / n);
  const double r2 = 3.0 / (4.0 * (1.0 - s * s));
  const double r = std::sqrt(r2);
  const double h = std::sqrt(1.0 - r2);
  std::vector<Vec3> p = {{0, 0, 0}};
  for (int i = 0; i < n; ++i) {
    const double a = 2.0 * std::numbers::pi * i / n;
    p.push_back({r * std::cos(a), r * std::sin(a), (i % 2 == 0) ? h : -h});
  }
  std::vector<Triangle> f;
  for (int i = 0; i < n; ++i) f.push_back({0, static_cast<Index>(1 + i), static_cast<Index>(1 + (i + 1) % n)});
  return build(std::move(p), f);
}

SurfaceMesh l_shape() {
  // Cells (0,0), (1,0), (0,1); the vertex (1,1) is the reflex corner.
  std::vector<Vec3> p = {{0, 0, 0}, {1, 0, 0}, {2, 0, 0}, {0, 1, 0}, {1, 1, 0},
                         {2, 1, 0}, {0, 2, 0}, {1, 2, 0}};
  std::vector<Triangle> f = {{0, 1, 4}, {0, 4, 3}, {1, 2, 5}, {1, 5, 4}, {3, 4, 7}, {3, 7, 6}};
  return build(std::move(p), f);
}

SurfaceMesh l_prism(double height) {
  // Outline (counter-clockwise): (0,0) (2,0) (2,1) (1,1) (1,2) (0,2).
  const double xs[6] = {0, 2, 2, 1, 1, 0};
  const double ys[6] = {0, 0, 1, 1, 2, 2};
  std::vector<Vec3> p;
  for (int i = 0; i < 6; ++i) p.push_back({xs[i], ys[i], 0.0});
  for (int i = 0; i < 6; ++i) p.push_back({xs[i], ys[i], height});
  // Top and bottom caps split along the diagonals from the reflex corner (index 3).
  std::vector<Triangle> f = {{6 + 0, 6 + 1, 6 + 3}, {6 + 1, 6 + 2, 6 + 3}, {6 + 0, 6 + 3, 6 + 4}, {6 + 0, 6 + 4, 6 + 5},
                             {0, 3, 1},             {1, 3, 2},             {0, 4, 3},             {0, 5, 4}};
  for (int i = 0; i < 6; ++i) {
    const auto a = static_cast<Index>(i);
    const auto b = static_cast<Index>((i + 1) % 6);
    f.push_back({a, b, static_cast<Index>(b + 6)});
    f.push_back({a, static_cast<Index>(b + 6), static_cast<Index>(a + 6)});
  }
  return build(std::move(p), f);
}

SurfaceMesh torus(double major_radius, double minor_radius, int u_segments, int v_segments) {
  if (u_segments < 3 || v_segments < 3) throw std::invalid_argument("torus needs at least 3x3 segments");
  std::vector<Vec3> p;
  for (int i = 0; i < u_segments; ++i) {
    const double u = 2.0 * std::numbers::pi * i / u_segments;
    for (int j = 0; j < v_segments; ++j) {
      const double v = 2.0 * std::numbers::pi * j / v_segments;
      const double ring = major_radius + minor_radius * std::cos(v);
      p.push_back({ring * std::cos(u), ring * std::sin(u), minor_radius * std::sin(v)});
    }
  }
  auto id = [&](int i, int j) {
    return static_cast<Index>(((i + u_segments) % u_segments) * v_segments + (j + v_segments) % v_segments);
  };
  std::vector<Triangle> f;
  for (int i = 0; i < u_segments; ++i) {
    for (int j = 0; j < v_segments; ++j) {
      f.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      f.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  }
  return build(std::move(p), f);
}

SurfaceMesh radial_noise(const SurfaceMesh& mesh, double amplitude, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> jitter(-amplitude, amplitude);
  auto positions = copy_positions(mesh);
  for (auto& v : positions) {
    const double scale = 1.0 + jitter(rng);
    v = {v.x * scale, v.y * scale, v.z * scale};
  }
  return build(std::move(positions), copy_faces(mesh));
}

SurfaceMesh bumpy(const SurfaceMesh& mesh, double amplitude, double frequency, double jitter, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  const double a = phase(rng);
  const double b = phase(rng);
  const double c = phase(rng);

  std::vector<Vec3> normals(mesh.vertex_count());
  double edge_sum = 0.0;
  for (std::size_t f = 0; f < mesh.face_count(); ++f) {
    const auto [i, j, k] = mesh.face_vertices(static_cast<Index>(f));
    const Vec3& p = mesh.position(i);
    const Vec3& q = mesh.position(j);
    const Vec3& r = mesh.position(k);
    const Vec3 u{q.x - p.x, q.y - p.y, q.z - p.z};
    const Vec3 v{r.x - p.x, r.y - p.y, r.z - p.z};
    const Vec3 n{u.y * v.z - u.z * v.y, u.z * v.x - u.x * v.z, u.x * v.y - u.y * v.x};
    for (const Index w : {i, j, k}) {
      auto& acc = normals[static_cast<std::size_t>(w)];
      acc = {acc.x + n.x, acc.y + n.y, acc.z + n.z};
    }
    for (int e = 0; e < 3; ++e) edge_sum += mesh.length(static_cast<Index>(3 * f + static_cast<std::size_t>(e)));
  }
  const double mean_edge = mesh.half_edge_count() ? edge_sum / static_cast<double>(mesh.half_edge_count()) : 0.0;

  auto positions = copy_positions(mesh);
  for (std::size_t v = 0; v < positions.size(); ++v) {
    auto& p = positions[v];
    const Vec3 n = normalized(normals[v]);
    const double h = amplitude * std::sin(frequency * p.x + a) * std::sin(frequency * p.y + b) *
                         std::sin(frequency * p.z + c) +
                     jitter * mean_edge * unit(rng);
    p = {p.x + h * n.x, p.y + h * n.y, p.z + h * n.z};
  }
  return build(std::move(positions), copy_faces(mesh));
}

}  // namespace pchgeo::shapes
