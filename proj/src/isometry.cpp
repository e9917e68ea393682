#include "s2xr/isometry.hpp"

#include <cmath>

namespace s2xr {

Isometry compose(const Isometry& a, const Isometry& b) {
  return {a.linear * b.linear, a.r_flag * b.r_flag, a.shift * b.r_flag + b.shift};
}

Isometry inverse(const Isometry& g) {
  return {transpose(g.linear), g.r_flag, -g.shift * g.r_flag};
}

S2RPoint apply(const Isometry& g, const S2RPoint& p) {
  return S2RPoint(g.linear * p.direction(), g.r_flag * p.fibre() + g.shift);
}

bool is_valid(const Isometry& g, double tol) {
  if (g.r_flag != 1 && g.r_flag != -1) return false;
  if (frobenius_distance(transpose(g.linear) * g.linear, Mat3::identity()) > tol) return false;
  return std::abs(determinant(g.linear) - 1.0) <= tol;
}

}  // namespace s2xr
