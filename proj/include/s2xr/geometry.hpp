#pragma once

// Metric model of the product geometry S^2 x R: points, geodesic distance,
// geodesic spheres in the Euclidean model and volumes of balls and prisms.

#include <numbers>
#include <stdexcept>

#include "s2xr/linalg.hpp"

namespace s2xr {

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Point of S^2 x R: a unit direction on the base sphere and a fibre coordinate.
class S2RPoint {
 public:
  S2RPoint() = default;
  /// The direction is renormalized; a zero vector is rejected.
  S2RPoint(const Vec3& direction, double fibre);

  const Vec3& direction() const { return direction_; }
  double fibre() const { return fibre_; }

 private:
  Vec3 direction_{1.0, 0.0, 0.0};
  double fibre_ = 0.0;
};

/// Image of a point in the Euclidean model: |(x, y, z)| = e^fibre.
struct ModelPoint {
  double x = 1.0;
  double y = 0.0;
  double z = 0.0;
};

/// Longitude u in (-pi, pi], altitude v in [-pi/2, pi/2] of a geodesic
/// direction at the base point (1, 0, 0).
class GeographicDirection {
 public:
  GeographicDirection() = default;
  GeographicDirection(double longitude, double altitude);

  double u() const { return u_; }
  double v() const { return v_; }

 private:
  double u_ = 0.0;
  double v_ = 0.0;
};

ModelPoint to_model(const S2RPoint& p);
/// Throws DomainError for the origin, which is not the image of any point.
S2RPoint from_model(const ModelPoint& m);

/// Geodesic distance sqrt(theta^2 + dt^2), theta the spherical angle.
double distance(const S2RPoint& p, const S2RPoint& q);

/// Endpoint of the unit-speed geodesic of length rho leaving the base point
/// (1, 0, 0), fibre 0, in direction (u, v).
ModelPoint geodesic_point(double rho, const GeographicDirection& dir);

/// Volume of the geodesic ball of radius rho in (0, pi), by adaptive
/// quadrature of 2 pi * int_0^rho int_{-pi/2}^{pi/2} |t sin(t cos v)| dv dt.
double ball_volume(double rho);

/// The same volume from the termwise-integrated alternating series
///   4 pi * sum_k (-1)^k rho^(2k+3) / ((2k+3) ((2k+1)!!)^2).
double ball_volume_series(double rho);

double prism_volume(double base_area, double height);

/// Area of a fundamental domain of a rotation group of the given order on S^2.
double fundamental_area(int point_group_order);

/// Area of the spherical triangle with unit-vector vertices (Girard excess).
double spherical_triangle_area(const Vec3& a, const Vec3& b, const Vec3& c);

inline constexpr double kPi = std::numbers::pi;

}  // namespace s2xr
