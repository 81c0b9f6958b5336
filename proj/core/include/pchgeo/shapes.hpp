#pragma once

#include <cstdint>

#include "pchgeo/mesh.hpp"

// Procedural meshes. All faces are counter-clockwise seen from outside (or
// from +z for planar shapes).
namespace pchgeo::shapes {

/// (0,0,0), (1,0,0), (0,1,0).
SurfaceMesh single_triangle();

/// Axis-aligned unit cube [0,1]^3, 8 vertices and 12 triangles.
SurfaceMesh unit_cube();

SurfaceMesh tetrahedron();
SurfaceMesh octahedron();
SurfaceMesh icosahedron();

/// Unit icosphere with 20 * 4^subdivisions faces.
SurfaceMesh icosphere(int subdivisions);

/// Planar grid of nx by ny square cells of the given size, each split along a
/// diagonal. `alternate` flips the diagonal in a checkerboard pattern.
SurfaceMesh planar_grid(int nx, int ny, double cell = 1.0, bool alternate = false);

/// Planar fan: a centre vertex surrounded by n triangles on a circle of the
/// given radius. n = 6 with radius 1 gives equilateral triangles.
SurfaceMesh planar_fan(int n, double radius = 1.0);

/// n unit equilateral triangles around a centre vertex; the ring zig-zags in z
/// so the centre's angle sum is n * pi / 3. Requires an even n >= 8.
SurfaceMesh saddle_fan(int n);

/// Planar L-shaped region made of three unit squares; the inner corner is a
/// boundary vertex with a 3*pi/2 wedge.
SurfaceMesh l_shape();

/// Closed prism over the L-shaped region with the given height. The two ends of
/// the reflex edge are saddle vertices.
SurfaceMesh l_prism(double height = 1.0);

/// Torus with major radius R and minor radius r sampled on a u x v grid.
SurfaceMesh torus(double major_radius, double minor_radius, int u_segments, int v_segments);

/// Copy of `mesh` with each vertex pushed along its direction from the origin by
/// a uniform random factor in [-amplitude, amplitude]. Deterministic in `seed`.
SurfaceMesh radial_noise(const SurfaceMesh& mesh, double amplitude, std::uint64_t seed);

/// Copy of `mesh` with every vertex moved along its area-weighted normal by
///   amplitude * sin(f x + a) * sin(f y + b) * sin(f z + c)
/// plus a uniform jitter of up to `jitter` times the mean edge length. The
/// phases come from `seed`. Smooth bumps with a little noise, roughly what a
/// scanned surface looks like.
SurfaceMesh bumpy(const SurfaceMesh& mesh, double amplitude, double frequency, double jitter, std::uint64_t seed);

}  // namespace pchgeo::shapes
