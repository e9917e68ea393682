#include <cmath>
#include <random>

#include "doctest.h"
#include "s2xr/geometry.hpp"
#include "s2xr/quadrature.hpp"

using namespace s2xr;

namespace {

Vec3 random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  return normalized({n(rng), n(rng), n(rng)});
}

S2RPoint random_point(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> t(-3.0, 3.0);
  return S2RPoint(random_unit(rng), t(rng));
}

// Ball volume from the product structure: the ball is the set of
// (theta, phi, t) with theta^2 + t^2 <= rho^2 and volume element
// sin(theta) dtheta dphi dt. With theta = rho sin(s):
//   V = 4 pi rho^2 int_0^{pi/2} sin(rho sin s) cos^2 s ds,
// integrated here by composite Simpson.
double volume_by_slices(double rho) {
  const int n = 4000;
  const double h = (kPi / 2) / n;
  auto f = [&](double s) { return std::sin(rho * std::sin(s)) * std::cos(s) * std::cos(s); };
  double sum = f(0.0) + f(kPi / 2);
  for (int i = 1; i < n; ++i) sum += (i % 2 ? 4.0 : 2.0) * f(i * h);
  return 4 * kPi * rho * rho * sum * h / 3;
}

}  // namespace

TEST_CASE("distance examples") {
  const S2RPoint base({1, 0, 0}, 0);
  CHECK(distance(base, S2RPoint({1, 0, 0}, 2.5)) == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(distance(base, S2RPoint({-1, 0, 0}, 0)) == doctest::Approx(kPi).epsilon(1e-15));
  CHECK(distance(base, base) == 0.0);
}

TEST_CASE("distance agrees with the arc length of the model geodesic") {
  // Geodesic from (1,0,0), fibre 0 to ((0,1,0), 1): longitude 0, altitude
  // atan2(1, pi/2), length L. Integrate the speed of the model curve,
  // measured point to point with the product metric, and check the endpoint.
  const S2RPoint p({1, 0, 0}, 0), q({0, 1, 0}, 1);
  const double v = std::atan2(1.0, kPi / 2);
  const double length = std::hypot(kPi / 2, 1.0);
  const GeographicDirection dir(0.0, v);
  auto at = [&](double s) { return from_model(geodesic_point(s, dir)); };
  const S2RPoint end = at(length);
  CHECK(end.fibre() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(dot(end.direction(), q.direction()) - 1.0) < 1e-12);
  const double h = 1e-5;
  const auto arc = integrate_gk15(
      [&](double s) { return distance(at(s - h), at(s + h)) / (2 * h); }, h, length - h, 1e-11);
  const double total = arc.value + 2 * h;  // speed is 1 on the two end slivers
  CHECK(std::abs(total - distance(p, q)) < 1e-8);
  CHECK(distance(p, q) == doctest::Approx(1.8621).epsilon(1e-4));
}

TEST_CASE("metric axioms on random triples") {
  std::mt19937_64 rng(7);
  double worst_slack = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const S2RPoint a = random_point(rng), b = random_point(rng), c = random_point(rng);
    const double ab = distance(a, b), ba = distance(b, a);
    REQUIRE(ab == ba);
    REQUIRE(ab > 0.0);
    REQUIRE(distance(a, a) == 0.0);
    worst_slack = std::min(worst_slack, distance(a, b) + distance(b, c) - distance(a, c));
  }
  CHECK(worst_slack >= -1e-12);
}

TEST_CASE("model round trip") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 1000; ++i) {
    const S2RPoint p = random_point(rng);
    const S2RPoint r = from_model(to_model(p));
    REQUIRE(r.fibre() == doctest::Approx(p.fibre()).epsilon(1e-12));
    REQUIRE(norm(r.direction() - p.direction()) < 1e-12);
  }
  CHECK_THROWS_AS(from_model({0, 0, 0}), DomainError);
  CHECK_THROWS_AS(S2RPoint({0, 0, 0}, 1.0), DomainError);
}

TEST_CASE("geodesic_point examples and geometry") {
  const ModelPoint z = geodesic_point(0.0, {1.0, 0.3});
  CHECK(z.x == 1.0);
  CHECK(z.y == 0.0);
  CHECK(z.z == 0.0);
  const ModelPoint e = geodesic_point(kPi / 2, {0.0, 0.0});
  CHECK(std::abs(e.x) < 1e-15);
  CHECK(e.y == doctest::Approx(1.0));
  CHECK(std::abs(e.z) < 1e-15);
  const ModelPoint f = geodesic_point(1.0, {0.0, kPi / 2});
  CHECK(f.x == doctest::Approx(std::exp(1.0)).epsilon(1e-15));
  CHECK_THROWS_AS(GeographicDirection(4.0, 0.0), DomainError);
  CHECK_THROWS_AS(GeographicDirection(0.0, 2.0), DomainError);

  // Angle rho cos v and fibre rho sin v from the base point.
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> uu(-kPi + 1e-9, kPi), vv(-kPi / 2, kPi / 2),
      rr(0.0, 3.0);
  const S2RPoint base({1, 0, 0}, 0);
  for (int i = 0; i < 2000; ++i) {
    const double rho = rr(rng);
    const GeographicDirection d(uu(rng), vv(rng));
    const S2RPoint p = from_model(geodesic_point(rho, d));
    REQUIRE(p.fibre() == doctest::Approx(rho * std::sin(d.v())).epsilon(1e-12));
    REQUIRE(unit_angle(p.direction(), base.direction()) ==
            doctest::Approx(rho * std::cos(d.v())).epsilon(1e-9));
    if (rho * std::cos(d.v()) <= kPi) REQUIRE(std::abs(distance(base, p) - rho) < 1e-12);
  }
}

TEST_CASE("ball volume against independent oracles") {
  // Termwise series versus adaptive quadrature.
  for (int i = 0; i < 100; ++i) {
    const double rho = 0.01 + (kPi - 0.02) * i / 99.0;
    REQUIRE(std::abs(ball_volume(rho) - ball_volume_series(rho)) < 1e-8);
  }
  // Slice integration, a third route.
  for (double rho : {0.1, 0.55357, 1.0, kPi / 3, 2.0, 3.0}) {
    CHECK(std::abs(ball_volume(rho) - volume_by_slices(rho)) < 1e-9);
  }
  CHECK(ball_volume(0.55357) == doctest::Approx(0.6962).epsilon(1e-4));
  CHECK(ball_volume_series(0.1) == doctest::Approx(0.0041860).epsilon(1e-5));
  CHECK(std::abs(ball_volume(kPi / 2) - ball_volume_series(kPi / 2)) < 1e-8);
}

TEST_CASE("ball volume at pi/3 by Monte Carlo") {
  // Uniform samples of (theta, t) over [0, rho] x [-rho, rho].
  const double rho = kPi / 3;
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> th(0.0, rho), tt(-rho, rho);
  const int n = 2'000'000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double a = th(rng), b = tt(rng);
    if (a * a + b * b <= rho * rho) sum += std::sin(a);
  }
  const double mc = 2 * kPi * (sum / n) * (rho * 2 * rho);
  CHECK(std::abs(mc - ball_volume(rho)) < 5e-3);
  CHECK(ball_volume(rho) == doctest::Approx(4.46948).epsilon(1e-6));
}

TEST_CASE("ball volume domain, monotonicity and Euclidean bound") {
  CHECK_THROWS_AS(ball_volume(0.0), DomainError);
  CHECK_THROWS_AS(ball_volume(-1.0), DomainError);
  CHECK_THROWS_AS(ball_volume(kPi), DomainError);
  CHECK_THROWS_AS(ball_volume(4.0), DomainError);
  CHECK_THROWS_AS(ball_volume_series(kPi), DomainError);
  double prev = 0.0;
  for (int i = 1; i < 200; ++i) {
    const double rho = kPi * i / 200;
    const double v = ball_volume_series(rho);
    REQUIRE(v > prev);
    REQUIRE(v < 4.0 / 3.0 * kPi * rho * rho * rho);
    prev = v;
  }
  const double small = 1e-3;
  CHECK(ball_volume(small) / (4.0 / 3.0 * kPi * std::pow(small, 3)) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("prism and fundamental areas") {
  CHECK(prism_volume(kPi / 3, 1.10714) == doctest::Approx(1.15939).epsilon(1e-5));
  CHECK(prism_volume(4 * kPi, 1.0) == doctest::Approx(4 * kPi));
  CHECK(prism_volume(4 * kPi / 3, 2 * kPi / 3) == doctest::Approx(8 * kPi * kPi / 9));
  CHECK(prism_volume(4 * kPi / 3, 2 * kPi / 3) == doctest::Approx(8.7730).epsilon(1e-4));
  CHECK_THROWS_AS(prism_volume(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(prism_volume(1.0, -1.0), DomainError);
  CHECK_THROWS_AS(prism_volume(13.0, 1.0), DomainError);
  CHECK(fundamental_area(12) == doctest::Approx(kPi / 3));
  CHECK(fundamental_area(1) == doctest::Approx(4 * kPi));
  CHECK(fundamental_area(60) == doctest::Approx(kPi / 15));
}

TEST_CASE("Girard excess of the Moebius triangles") {
  // Right triangle with angles pi/2, pi/3, pi/n: area is the angle excess,
  // and two of them tile a fundamental domain of [2,3,n].
  for (int n : {3, 4, 5}) {
    const double excess = kPi / 2 + kPi / 3 + kPi / n - kPi;
    const int order = n == 3 ? 12 : (n == 4 ? 24 : 60);
    CHECK(2 * excess == doctest::Approx(fundamental_area(order)).epsilon(1e-14));
  }
  // Octant: three right angles.
  CHECK(spherical_triangle_area({1, 0, 0}, {0, 1, 0}, {0, 0, 1}) == doctest::Approx(kPi / 2));
}
