#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pchgeo/mesh.hpp"

namespace pchgeo {

/// |a - b| / max(|a|, |b|), 0 when both are equal (including both +inf) and
/// +inf when only one is infinite.
double relative_deviation(double a, double b);

struct Deviation {
  double max_relative = 0.0;
  Index vertex = -1;  // where the maximum occurs, -1 if all equal
};

/// Largest relative_deviation over matching entries. Sizes must agree.
Deviation max_relative_deviation(std::span<const double> a, std::span<const double> b);

/// Vertices whose relative deviation exceeds `tolerance`.
std::vector<Index> deviating_vertices(std::span<const double> a, std::span<const double> b, double tolerance);

/// Edges (one half-edge per edge) where |d(u) - d(v)| exceeds the edge length
/// by more than tolerance * max(1, edge length). Infinite pairs are skipped.
std::vector<Index> lipschitz_violations(const SurfaceMesh& mesh, std::span<const double> d, double tolerance);

/// Vertices breaking  chord - tol <= d <= upper + tol,  where chord is the
/// straight-line distance to the nearest source and tol scales with
/// max(1, value).
std::vector<Index> sandwich_violations(const SurfaceMesh& mesh, std::span<const Index> sources,
                                       std::span<const double> d, std::span<const double> upper, double tolerance);

}  // namespace pchgeo
