#pragma once

// Triangulated geodesic spheres in the Euclidean model, for OBJ export.

#include <array>
#include <iosfwd>
#include <vector>

#include "s2xr/packing.hpp"

namespace s2xr {

struct Mesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> faces;  ///< zero-based, counter-clockwise seen from outside
};

/// Sphere of radius rho about the base point (1, 0, 0), fibre 0: grid bands
/// in altitude v and 2 * grid segments in longitude u, with single pole
/// vertices at v = -pi/2 and v = pi/2. Throws DomainError unless
/// 0 < rho < pi and grid >= 3.
Mesh geodesic_sphere(double rho, int grid);

/// Moves a mesh built about the base point to the ball centred at `center`:
/// rotate (1, 0, 0) onto the center's direction and scale by e^fibre.
Mesh place(const Mesh& m, const S2RPoint& center);

void append(Mesh& into, const Mesh& m);

/// Kernel ball plus the balls touching it.
Mesh orbit_mesh(const PackingConfiguration& c, int grid);

/// Signed volume enclosed by the mesh (positive for outward orientation).
double signed_volume(const Mesh& m);

void write_obj(const Mesh& m, std::ostream& os);

}  // namespace s2xr
