#include "s2xr/packing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace s2xr {

RadiusResult packing_radius(const SpaceGroupSpec& spec, double tau, const S2RPoint& kernel,
                            int k_max) {
  if (!(tau > 0.0)) throw DomainError("packing_radius: tau must be positive");
  RadiusResult out;
  for (int window = std::max(k_max, 1);; ++window) {
    const auto elements = enumerate_elements(spec, tau, window);
    std::vector<double> dist(elements.size());
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < elements.size(); ++i) {
      dist[i] = distance(kernel, apply(elements[i].iso, kernel));
      if (dist[i] < kTieTolerance) {
        throw StabilizerNotTrivial("kernel is fixed by a nonidentity element of " + spec.name +
                                   "; perturb it off the rotation axes");
      }
      best = std::min(best, dist[i]);
    }
    out.radius = 0.5 * best;
    out.k_max_used = window;
    out.certified = window * tau >= best;
    if (!out.certified) continue;
    out.argmin_elements.clear();
    for (std::size_t i = 0; i < elements.size(); ++i) {
      if (dist[i] <= best + kTieTolerance) out.argmin_elements.push_back(elements[i]);
    }
    return out;
  }
}

double dv_cell_volume(const SpaceGroupSpec& spec, double tau) {
  if (!(tau > 0.0)) throw DomainError("dv_cell_volume: tau must be positive");
  return prism_volume(fundamental_area(spec.point_group_order), tau);
}

PackingConfiguration density(const SpaceGroupSpec& spec, double tau, const S2RPoint& kernel,
                             int k_max) {
  RadiusResult r = packing_radius(spec, tau, kernel, k_max);
  PackingConfiguration c;
  c.spec = spec;
  c.tau = tau;
  c.kernel = kernel;
  c.radius = r.radius;
  c.density = ball_volume(r.radius) / dv_cell_volume(spec, tau);
  c.kissing = static_cast<int>(r.argmin_elements.size());
  c.argmin_elements = std::move(r.argmin_elements);
  c.k_max_used = r.k_max_used;
  c.k_max_certified = r.certified;
  return c;
}

OrbitEvaluator::OrbitEvaluator(const SpaceGroupSpec& spec)
    : spec_(spec), area_(fundamental_area(spec.point_group_order)) {
  for (const auto& pge : build_point_group(spec)) {
    linear_.push_back(pge.linear);
    const double s = pge.frac.value();
    nearest_shift_.push_back(pge.word.empty() ? 1.0 : std::min(s, 1.0 - s));
  }
}

void OrbitEvaluator::angles(const Vec3& kernel, std::vector<double>& out) const {
  out.resize(linear_.size());
  for (std::size_t i = 0; i < linear_.size(); ++i) {
    out[i] = i == 0 ? 0.0 : unit_angle(kernel, linear_[i] * kernel);
  }
}

double OrbitEvaluator::radius_from_angles(const std::vector<double>& angles, double tau) const {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < angles.size(); ++i) {
    const double t = nearest_shift_[i] * tau;
    best = std::min(best, std::sqrt(angles[i] * angles[i] + t * t));
  }
  return 0.5 * best;
}

double OrbitEvaluator::element_distance(const std::vector<double>& angles, std::size_t i,
                                        double tau) const {
  return std::hypot(angles[i], nearest_shift_[i] * tau);
}

double OrbitEvaluator::radius(const Vec3& kernel, double tau) const {
  std::vector<double> a;
  angles(kernel, a);
  return radius_from_angles(a, tau);
}

double OrbitEvaluator::density_from_radius(double radius, double tau) const {
  if (!(radius > 0.0) || radius >= kPi || !(tau > 0.0)) return 0.0;
  return ball_volume_series(radius) / (area_ * tau);
}

double OrbitEvaluator::density(const Vec3& kernel, double tau) const {
  return density_from_radius(radius(kernel, tau), tau);
}

TouchingRequirements touching_requirements_8i2(const S2RPoint& kernel, double tau) {
  static const SpaceGroupSpec spec = make_group("8.I.2");
  auto image = [&](const std::vector<int>& word) {
    return apply(word_isometry(spec, word, tau), kernel);
  };
  TouchingRequirements t;
  t.distances = {distance(kernel, image({0})), distance(kernel, image({1})),
                 distance(kernel, image({0, 1}))};
  t.residuals = {t.distances[0] - t.distances[1], t.distances[1] - t.distances[2],
                 t.distances[0] - t.distances[2]};
  const double two_r = t.distances[0];
  t.translation_distance = tau;
  // The pair (K^{g2 g2}, K^{g1 g2 g1 g2}) is congruent to (K, K^h) with h the
  // half turn g2 g2 g1 g2 brought back by one lattice translation.
  const Isometry h = compose(word_isometry(spec, {1, 1, 0, 1}, tau), Isometry::fibre_translation(-tau));
  t.side_distance = distance(kernel, apply(h, kernel));
  t.translation_ok = t.translation_distance >= two_r - kTieTolerance;
  t.side_ok = t.side_distance >= two_r - kTieTolerance;
  return t;
}

}  // namespace s2xr
