#include "s2xr/linalg.hpp"

namespace s2xr {

Vec3 rotation_axis(const Mat3& r) {
  Vec3 axis{r(2, 1) - r(1, 2), r(0, 2) - r(2, 0), r(1, 0) - r(0, 1)};
  if (norm(axis) > 1e-9) return normalized(axis);
  // Half turn (or identity): R + I has rank one with columns along the axis.
  Vec3 best{1.0, 0.0, 0.0};
  double best_norm = -1.0;
  for (int c = 0; c < 3; ++c) {
    const Vec3 col{r(0, c) + (c == 0 ? 1.0 : 0.0), r(1, c) + (c == 1 ? 1.0 : 0.0),
                   r(2, c) + (c == 2 ? 1.0 : 0.0)};
    if (norm(col) > best_norm) {
      best_norm = norm(col);
      best = col;
    }
  }
  return normalized(best);
}

}  // namespace s2xr
