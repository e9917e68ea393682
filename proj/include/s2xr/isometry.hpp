#pragma once

#include "s2xr/geometry.hpp"
#include "s2xr/linalg.hpp"

namespace s2xr {

/// Isometry A x (R, r) of S^2 x R: a rotation A of the base sphere, the
/// R-part R in {+1, -1} (identity or point reflection of the line) and the
/// fibre translation r.
struct Isometry {
  Mat3 linear = Mat3::identity();
  int r_flag = 1;
  double shift = 0.0;

  static Isometry identity() { return {}; }
  static Isometry rotation(const Vec3& axis, double angle, double shift = 0.0) {
    return {rotation_matrix(axis, angle), 1, shift};
  }
  static Isometry fibre_translation(double t) { return {Mat3::identity(), 1, t}; }
};

/// Product (A1 A2 x R1 R2, r1 R2 + r2).
Isometry compose(const Isometry& a, const Isometry& b);

Isometry inverse(const Isometry& g);

/// direction -> A * direction, fibre -> R * fibre + r.
S2RPoint apply(const Isometry& g, const S2RPoint& p);

/// Orthogonality and unit determinant of the linear part, within `tol`.
bool is_valid(const Isometry& g, double tol = 1e-10);

}  // namespace s2xr
