#include "s2xr/mesh.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace s2xr {

Mesh geodesic_sphere(double rho, int grid) {
  if (!(rho > 0.0) || !(rho < kPi)) throw DomainError("geodesic_sphere: rho must lie in (0, pi)");
  if (grid < 3) throw DomainError("geodesic_sphere: grid must be at least 3");
  const int bands = grid;
  const int segments = 2 * grid;
  auto to_vec = [](const ModelPoint& p) { return Vec3{p.x, p.y, p.z}; };
  Mesh m;
  m.vertices.push_back(to_vec(geodesic_point(rho, {0.0, -kPi / 2})));
  for (int i = 1; i < bands; ++i) {
    const double v = -kPi / 2 + kPi * i / bands;
    for (int j = 0; j < segments; ++j) {
      const double u = -kPi + 2 * kPi * (j + 1) / segments;
      m.vertices.push_back(to_vec(geodesic_point(rho, {u, v})));
    }
  }
  const int north = static_cast<int>(m.vertices.size());
  m.vertices.push_back(to_vec(geodesic_point(rho, {0.0, kPi / 2})));

  auto ring = [&](int i, int j) { return 1 + (i - 1) * segments + (j % segments); };
  for (int j = 0; j < segments; ++j) m.faces.push_back({0, ring(1, j + 1), ring(1, j)});
  for (int i = 1; i + 1 < bands; ++i) {
    for (int j = 0; j < segments; ++j) {
      const int a = ring(i, j), b = ring(i, j + 1), c = ring(i + 1, j + 1), d = ring(i + 1, j);
      m.faces.push_back({a, b, c});
      m.faces.push_back({a, c, d});
    }
  }
  for (int j = 0; j < segments; ++j) m.faces.push_back({north, ring(bands - 1, j), ring(bands - 1, j + 1)});

  if (signed_volume(m) < 0) {
    for (auto& f : m.faces) std::swap(f[1], f[2]);
  }
  return m;
}

Mesh place(const Mesh& m, const S2RPoint& center) {
  const Vec3 ex{1, 0, 0};
  const Vec3& d = center.direction();
  const Vec3 axis = cross(ex, d);
  Mat3 r = Mat3::identity();
  if (norm(axis) > 1e-15) {
    r = rotation_matrix(axis, unit_angle(ex, d));
  } else if (d.x < 0) {
    r = rotation_matrix({0, 0, 1}, kPi);
  }
  const double scale = std::exp(center.fibre());
  Mesh out;
  out.faces = m.faces;
  out.vertices.reserve(m.vertices.size());
  for (const auto& v : m.vertices) out.vertices.push_back(scale * (r * v));
  return out;
}

void append(Mesh& into, const Mesh& m) {
  const int offset = static_cast<int>(into.vertices.size());
  into.vertices.insert(into.vertices.end(), m.vertices.begin(), m.vertices.end());
  for (const auto& f : m.faces) into.faces.push_back({f[0] + offset, f[1] + offset, f[2] + offset});
}

Mesh orbit_mesh(const PackingConfiguration& c, int grid) {
  const Mesh ball = geodesic_sphere(c.radius, grid);
  Mesh out = place(ball, c.kernel);
  for (const auto& e : c.argmin_elements) append(out, place(ball, apply(e.iso, c.kernel)));
  return out;
}

double signed_volume(const Mesh& m) {
  double v = 0.0;
  for (const auto& f : m.faces) {
    v += dot(m.vertices[f[0]], cross(m.vertices[f[1]], m.vertices[f[2]]));
  }
  return v / 6.0;
}

void write_obj(const Mesh& m, std::ostream& os) {
  char line[128];
  for (const auto& v : m.vertices) {
    std::snprintf(line, sizeof line, "v %.17g %.17g %.17g\n", v.x, v.y, v.z);
    os << line;
  }
  for (const auto& f : m.faces) os << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
}

}  // namespace s2xr
