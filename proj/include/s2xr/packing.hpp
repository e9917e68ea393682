#pragma once

// Packing radius, Dirichlet-Voronoi cell volume, density and kissing number
// of the simply transitive ball packing generated by a kernel point.

#include <array>
#include <stdexcept>
#include <vector>

#include "s2xr/groups.hpp"

namespace s2xr {

class StabilizerNotTrivial : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Distance tolerance for ties in the minimum (argmin membership, kissing).
inline constexpr double kTieTolerance = 1e-9;

struct RadiusResult {
  double radius = 0.0;
  std::vector<GroupElement> argmin_elements;
  int k_max_used = 1;
  /// k_max_used * tau >= 2 * radius: no element outside the window can be closer.
  bool certified = false;
};

struct PackingConfiguration {
  SpaceGroupSpec spec;
  double tau = 0.0;
  S2RPoint kernel;
  double radius = 0.0;
  double density = 0.0;
  int kissing = 0;
  std::vector<GroupElement> argmin_elements;
  int k_max_used = 1;
  bool k_max_certified = false;
};

/// Half of the minimum distance from the kernel to its images under the
/// enumerated elements; the window grows until it is certified.
RadiusResult packing_radius(const SpaceGroupSpec& spec, double tau, const S2RPoint& kernel,
                            int k_max = 2);

/// Volume of the prism over the point group's fundamental domain with height tau.
double dv_cell_volume(const SpaceGroupSpec& spec, double tau);

/// Full packing evaluation; the ball volume comes from adaptive quadrature.
PackingConfiguration density(const SpaceGroupSpec& spec, double tau, const S2RPoint& kernel,
                             int k_max = 2);

/// Fast evaluator for the optimizer's inner loops.
///
/// For a point-group element with translation part s in [0, 1), the closest
/// of its lattice copies has |s + m| = min(s, 1 - s); pure translations have
/// |m| >= 1. So the packing radius only needs one angle per point-group
/// element, and those angles do not depend on tau.
class OrbitEvaluator {
 public:
  explicit OrbitEvaluator(const SpaceGroupSpec& spec);

  const SpaceGroupSpec& spec() const { return spec_; }
  std::size_t size() const { return linear_.size(); }

  /// Spherical angles between K and its images, one per point-group element
  /// (the identity contributes 0).
  void angles(const Vec3& kernel, std::vector<double>& out) const;
  double radius_from_angles(const std::vector<double>& angles, double tau) const;
  double radius(const Vec3& kernel, double tau) const;
  /// Distance from K to its nearest image under point-group element i.
  double element_distance(const std::vector<double>& angles, std::size_t i, double tau) const;
  /// 0 when the radius would reach pi (no such ball exists).
  double density_from_radius(double radius, double tau) const;
  double density(const Vec3& kernel, double tau) const;

 private:
  SpaceGroupSpec spec_;
  std::vector<Mat3> linear_;
  std::vector<double> nearest_shift_;  ///< min |s + m| in units of tau
  double area_ = 0.0;
};

/// Residuals of the touching requirements of group 8.I.2:
///   d(K, K^g1) = 2R = d(K, K^{g2 t2}) = d(K, K^{g1 g2 t2}),
///   d(K, K^tau) >= 2R,
///   d(K^{g2 g2 t2 t2}, K^{g1 g2 g1 g2 t2 t2}) >= 2R,
/// with 2R := d(K, K^g1).
struct TouchingRequirements {
  std::array<double, 3> residuals{};  ///< d1 - d2, d2 - d3, d1 - d3
  std::array<double, 3> distances{};  ///< d1, d2, d3
  double translation_distance = 0.0;
  double side_distance = 0.0;
  bool translation_ok = false;  ///< d(K, K^tau) >= 2R
  bool side_ok = false;         ///< second side condition
};

TouchingRequirements touching_requirements_8i2(const S2RPoint& kernel, double tau);

}  // namespace s2xr
