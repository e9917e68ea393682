#include "s2xr/geometry.hpp"

#include <cmath>
#include <string>

#include "s2xr/quadrature.hpp"

namespace s2xr {

S2RPoint::S2RPoint(const Vec3& direction, double fibre) : fibre_(fibre) {
  const double n = norm(direction);
  if (!(n > 0.0)) throw DomainError("S2RPoint: zero direction vector");
  direction_ = (1.0 / n) * direction;
}

GeographicDirection::GeographicDirection(double longitude, double altitude)
    : u_(longitude), v_(altitude) {
  if (!(longitude > -kPi && longitude <= kPi) ||
      !(altitude >= -kPi / 2 && altitude <= kPi / 2)) {
    throw DomainError("GeographicDirection: (u, v) out of range");
  }
}

ModelPoint to_model(const S2RPoint& p) {
  const double r = std::exp(p.fibre());
  const Vec3& d = p.direction();
  return {r * d.x, r * d.y, r * d.z};
}

S2RPoint from_model(const ModelPoint& m) {
  const Vec3 v{m.x, m.y, m.z};
  const double r = norm(v);
  if (!(r > 0.0)) throw DomainError("ModelPoint at the origin has no preimage");
  return S2RPoint((1.0 / r) * v, std::log(r));
}

double distance(const S2RPoint& p, const S2RPoint& q) {
  const double theta = unit_angle(p.direction(), q.direction());
  return std::hypot(theta, p.fibre() - q.fibre());
}

ModelPoint geodesic_point(double rho, const GeographicDirection& dir) {
  if (rho < 0.0) throw DomainError("geodesic_point: negative length");
  const double radial = std::exp(rho * std::sin(dir.v()));
  const double angle = rho * std::cos(dir.v());
  return {radial * std::cos(angle), radial * std::sin(angle) * std::cos(dir.u()),
          radial * std::sin(angle) * std::sin(dir.u())};
}

namespace {

void check_ball_radius(double rho) {
  if (!(rho > 0.0) || !(rho < kPi)) {
    throw DomainError("geodesic ball of radius " + std::to_string(rho) +
                      " does not exist; radius must lie in (0, pi)");
  }
}

}  // namespace

double ball_volume(double rho) {
  check_ball_radius(rho);
  const auto r = integrate_2d(
      [](double t, double v) { return std::abs(t * std::sin(t * std::cos(v))); }, 0.0, rho,
      -kPi / 2, kPi / 2, 1e-10 / (2 * kPi));
  if (!r.converged) throw QuadratureError("ball_volume: quadrature did not converge");
  return 2 * kPi * r.value;
}

double ball_volume_series(double rho) {
  check_ball_radius(rho);
  // term_k = rho^(2k+3) / ((2k+1)!!)^2, updated multiplicatively.
  const double rho2 = rho * rho;
  double power = rho * rho2;
  double sum = 0.0;
  for (int k = 0; k < 200; ++k) {
    const double t = power / (2 * k + 3);
    sum += (k % 2 == 0) ? t : -t;
    if (t < 1e-18 * std::abs(sum)) break;
    const double odd = 2 * k + 3;
    power *= rho2 / (odd * odd);
  }
  return 4 * kPi * sum;
}

double prism_volume(double base_area, double height) {
  if (!(base_area > 0.0) || base_area > 4 * kPi + 1e-12 || !(height > 0.0)) {
    throw DomainError("prism_volume: base area must lie in (0, 4 pi] and height be positive");
  }
  return base_area * height;
}

double fundamental_area(int point_group_order) {
  if (point_group_order < 1) throw DomainError("fundamental_area: order must be positive");
  return 4 * kPi / point_group_order;
}

double spherical_triangle_area(const Vec3& a, const Vec3& b, const Vec3& c) {
  // Van Oosterom-Strackee form of the solid angle.
  const double numer = std::abs(dot(a, cross(b, c)));
  const double denom = 1.0 + dot(a, b) + dot(b, c) + dot(c, a);
  return 2.0 * std::atan2(numer, denom);
}

}  // namespace s2xr
