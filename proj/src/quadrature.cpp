#include "s2xr/quadrature.hpp"

#include <array>
#include <cmath>
#include <queue>
#include <vector>

namespace s2xr {
namespace {

// Kronrod nodes on [0, 1] (symmetric), with Kronrod and embedded Gauss weights.
constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrod = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kGauss = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gk15(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double kron = fc * kKronrod[7];
  double gauss = fc * kGauss[3];
  for (int i = 0; i < 7; ++i) {
    const double dx = h * kNodes[i];
    const double s = f(c - dx) + f(c + dx);
    kron += kKronrod[i] * s;
    if (i % 2 == 1) gauss += kGauss[i / 2] * s;
  }
  return {a, b, kron * h, std::abs((kron - gauss) * h)};
}

}  // namespace

QuadratureResult integrate_gk15(const std::function<double(double)>& f, double a, double b,
                                double abs_tol, std::size_t max_evaluations) {
  QuadratureResult out;
  if (a == b) {
    out.converged = true;
    return out;
  }
  std::priority_queue<Panel> heap;
  heap.push(gk15(f, a, b));
  out.evaluations = 15;
  double total = heap.top().value;
  double error = heap.top().error;
  while (error > abs_tol && out.evaluations + 30 <= max_evaluations) {
    const Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const Panel left = gk15(f, worst.a, mid);
    const Panel right = gk15(f, mid, worst.b);
    out.evaluations += 30;
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }
  // Re-sum to shed the cancellation accumulated by the running updates.
  total = 0.0;
  error = 0.0;
  while (!heap.empty()) {
    total += heap.top().value;
    error += heap.top().error;
    heap.pop();
  }
  out.value = total;
  out.error = error;
  out.converged = error <= abs_tol;
  return out;
}

QuadratureResult integrate_2d(const std::function<double(double, double)>& f, double x0,
                              double x1, double y0, double y1, double abs_tol,
                              std::size_t max_evaluations) {
  std::size_t evaluations = 0;
  bool inner_ok = true;
  const double inner_tol = 0.1 * abs_tol / std::max(1.0, std::abs(x1 - x0));
  auto inner = [&](double x) {
    const auto r = integrate_gk15([&](double y) { return f(x, y); }, y0, y1, inner_tol,
                                  max_evaluations);
    evaluations += r.evaluations;
    inner_ok = inner_ok && r.converged;
    return r.value;
  };
  QuadratureResult outer = integrate_gk15(inner, x0, x1, 0.9 * abs_tol, max_evaluations);
  outer.evaluations = evaluations;
  outer.converged = outer.converged && inner_ok && evaluations <= max_evaluations;
  return outer;
}

}  // namespace s2xr
