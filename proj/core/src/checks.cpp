#include "pchgeo/checks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace pchgeo {

double relative_deviation(double a, double b) {
  if (a == b) return 0.0;
  if (std::isinf(a) || std::isinf(b)) return std::numeric_limits<double>::infinity();
  return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}

Deviation max_relative_deviation(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("distance fields differ in length");
  Deviation dev;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double r = relative_deviation(a[i], b[i]);
    if (r > dev.max_relative || (std::isnan(r) && dev.vertex < 0)) {
      dev.max_relative = r;
      dev.vertex = static_cast<Index>(i);
    }
  }
  return dev;
}

std::vector<Index> deviating_vertices(std::span<const double> a, std::span<const double> b, double tolerance) {
  if (a.size() != b.size()) throw std::invalid_argument("distance fields differ in length");
  std::vector<Index> bad;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(relative_deviation(a[i], b[i]) <= tolerance)) bad.push_back(static_cast<Index>(i));
  }
  return bad;
}

std::vector<Index> lipschitz_violations(const SurfaceMesh& mesh, std::span<const double> d, double tolerance) {
  std::vector<Index> bad;
  for (Index j = 0; j < static_cast<Index>(mesh.half_edge_count()); ++j) {
    const Index o = mesh.opposite(j);
    if (o != kBoundary && o < j) continue;  // each edge once
    const double du = d[static_cast<std::size_t>(mesh.origin(j))];
    const double dv = d[static_cast<std::size_t>(mesh.target(j))];
    if (std::isinf(du) && std::isinf(dv)) continue;
    const double len = mesh.length(j);
    if (!(std::abs(du - dv) <= len + tolerance * std::max(1.0, len))) bad.push_back(j);
  }
  return bad;
}

std::vector<Index> sandwich_violations(const SurfaceMesh& mesh, std::span<const Index> sources,
                                       std::span<const double> d, std::span<const double> upper, double tolerance) {
  std::vector<Index> bad;
  for (Index v = 0; v < static_cast<Index>(mesh.vertex_count()); ++v) {
    const auto i = static_cast<std::size_t>(v);
    double chord = std::numeric_limits<double>::infinity();
    for (const Index s : sources) chord = std::min(chord, distance(mesh.position(v), mesh.position(s)));
    const double value = d[i];
    const bool below = value < chord - tolerance * std::max(1.0, chord);
    const bool above = value > upper[i] + tolerance * std::max(1.0, upper[i]);
    // Unreachable vertices must be unreachable for the upper bound as well.
    const bool reach = std::isinf(value) != std::isinf(upper[i]);
    if (below || above || reach) bad.push_back(v);
  }
  return bad;
}

}  // namespace pchgeo
