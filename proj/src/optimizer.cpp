#include "s2xr/optimizer.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <random>
#include <thread>

namespace s2xr {

std::string method_name(Method m) {
  switch (m) {
    case Method::GridSimplex: return "grid+simplex";
    case Method::ConstrainedFamily: return "constrained-family";
    case Method::ClosedForm: return "closed-form";
  }
  return "unknown";
}

unsigned worker_count() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("S2XR_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
  }
  return n;
}

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body) {
  if (threads == 0) threads = worker_count();
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  // Static interleaved partition; results are written by index so the
  // outcome does not depend on scheduling.
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < n; i += threads) body(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

Vec3 triangle_point(const SpaceGroupSpec& spec, double b1, double b2) {
  const auto& t = spec.search_triangle;
  return normalized((1.0 - b1 - b2) * t[0] + b1 * t[1] + b2 * t[2]);
}

std::vector<Vec3> symmetric_copies(const SpaceGroupSpec& spec, const Vec3& kernel) {
  std::vector<Vec3> out;
  const Vec3 mirrored{kernel.x, kernel.y, -kernel.z};
  for (const auto& pge : build_point_group(spec)) {
    out.push_back(pge.linear * kernel);
    out.push_back(pge.linear * mirrored);
  }
  return out;
}

namespace {

using Vector = std::vector<double>;

// Solves the square system a x = b by Gaussian elimination with partial
// pivoting; returns false when singular.
bool solve_linear(std::vector<Vector> a, Vector b, Vector& x) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a[r][c]) > std::abs(a[p][c])) p = r;
    if (std::abs(a[p][c]) < 1e-300) return false;
    std::swap(a[p], a[c]);
    std::swap(b[p], b[c]);
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  x.assign(n, 0.0);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t k = i + 1; k < n; ++k) s -= a[i][k] * x[k];
    x[i] = s / a[i][i];
  }
  return true;
}

double norm2(const Vector& v) {
  double s = 0.0;
  for (double e : v) s += e * e;
  return std::sqrt(s);
}

// Gauss-Newton with central-difference Jacobian. Overdetermined systems are
// solved in the least-squares sense, underdetermined ones by the minimum-norm
// step. Returns the final residual norm.
double gauss_newton(const std::function<Vector(const Vector&)>& f, Vector& x, double tol,
                    int max_iter, double h = 1e-7) {
  Vector r = f(x);
  double rn = norm2(r);
  for (int it = 0; it < max_iter && rn > tol; ++it) {
    const std::size_t m = r.size();
    const std::size_t n = x.size();
    std::vector<Vector> jac(m, Vector(n));
    for (std::size_t j = 0; j < n; ++j) {
      Vector xp = x, xm = x;
      xp[j] += h;
      xm[j] -= h;
      const Vector rp = f(xp), rm = f(xm);
      for (std::size_t i = 0; i < m; ++i) jac[i][j] = (rp[i] - rm[i]) / (2 * h);
    }
    Vector step;
    if (m >= n) {
      std::vector<Vector> a(n, Vector(n, 0.0));
      Vector b(n, 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
          for (std::size_t k = 0; k < m; ++k) a[i][j] += jac[k][i] * jac[k][j];
        for (std::size_t k = 0; k < m; ++k) b[i] -= jac[k][i] * r[k];
      }
      if (!solve_linear(a, b, step)) break;
    } else {
      std::vector<Vector> a(m, Vector(m, 0.0));
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
          for (std::size_t k = 0; k < n; ++k) a[i][j] += jac[i][k] * jac[j][k];
      Vector y;
      Vector neg(m);
      for (std::size_t i = 0; i < m; ++i) neg[i] = -r[i];
      if (!solve_linear(a, neg, y)) break;
      step.assign(n, 0.0);
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < m; ++i) step[j] += jac[i][j] * y[i];
    }
    // Damped: halve until the residual decreases.
    double lambda = 1.0;
    bool improved = false;
    for (int k = 0; k < 30; ++k, lambda *= 0.5) {
      Vector xn = x;
      for (std::size_t j = 0; j < n; ++j) xn[j] += lambda * step[j];
      const Vector rn_vec = f(xn);
      const double nn = norm2(rn_vec);
      if (nn < rn) {
        x = xn;
        r = rn_vec;
        rn = nn;
        improved = true;
        break;
      }
    }
    if (!improved) break;
  }
  return rn;
}

// Nelder-Mead minimization; stops when the simplex diameter drops below tol.
struct SimplexResult {
  Vector x;
  double value = 0.0;
  long evaluations = 0;
};

SimplexResult nelder_mead(const std::function<double(const Vector&)>& f,
                          std::vector<Vector> simplex, double tol, int max_iter = 20000) {
  const std::size_t n = simplex.size() - 1;
  std::vector<double> v(simplex.size());
  long evals = 0;
  auto eval = [&](const Vector& x) {
    ++evals;
    return f(x);
  };
  for (std::size_t i = 0; i <= n; ++i) v[i] = eval(simplex[i]);
  std::vector<std::size_t> order(n + 1);
  for (int it = 0; it < max_iter; ++it) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    {
      std::vector<Vector> s2;
      std::vector<double> v2;
      for (auto i : order) {
        s2.push_back(simplex[i]);
        v2.push_back(v[i]);
      }
      simplex.swap(s2);
      v.swap(v2);
    }
    double diam = 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
      double d = 0.0;
      for (std::size_t j = 0; j < n; ++j) d = std::max(d, std::abs(simplex[i][j] - simplex[0][j]));
      diam = std::max(diam, d);
    }
    if (diam < tol) break;

    Vector centroid(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) centroid[j] += simplex[i][j] / n;
    auto along = [&](double t) {
      Vector x(n);
      for (std::size_t j = 0; j < n; ++j) x[j] = centroid[j] + t * (simplex[n][j] - centroid[j]);
      return x;
    };
    const Vector xr = along(-1.0);
    const double fr = eval(xr);
    if (fr < v[0]) {
      const Vector xe = along(-2.0);
      const double fe = eval(xe);
      if (fe < fr) {
        simplex[n] = xe;
        v[n] = fe;
      } else {
        simplex[n] = xr;
        v[n] = fr;
      }
    } else if (fr < v[n - 1]) {
      simplex[n] = xr;
      v[n] = fr;
    } else {
      const bool outside = fr < v[n];
      const Vector xc = along(outside ? -0.5 : 0.5);
      const double fc = eval(xc);
      if (fc < (outside ? fr : v[n])) {
        simplex[n] = xc;
        v[n] = fc;
      } else {
        for (std::size_t i = 1; i <= n; ++i) {
          for (std::size_t j = 0; j < n; ++j)
            simplex[i][j] = simplex[0][j] + 0.5 * (simplex[i][j] - simplex[0][j]);
          v[i] = eval(simplex[i]);
        }
      }
    }
  }
  const auto best = std::min_element(v.begin(), v.end()) - v.begin();
  return {simplex[best], v[best], evals};
}

// Projects barycentric (b1, b2) onto the closed triangle.
std::array<double, 2> project_barycentric(double b1, double b2) {
  double b0 = 1.0 - b1 - b2;
  b0 = std::max(b0, 0.0);
  b1 = std::max(b1, 0.0);
  b2 = std::max(b2, 0.0);
  const double s = b0 + b1 + b2;
  return {b1 / s, b2 / s};
}

struct Candidate {
  double b1 = 0.0;
  double b2 = 0.0;
  double tau = 0.0;
  double density = 0.0;
};

// Maximizes the density over tau for fixed element angles: a logarithmic
// scan followed by golden-section search around the best sample.
std::pair<double, double> best_tau(const OrbitEvaluator& ev, const std::vector<double>& angles,
                                   double lo, double hi, long& evals) {
  auto g = [&](double tau) {
    ++evals;
    return ev.density_from_radius(ev.radius_from_angles(angles, tau), tau);
  };
  constexpr int kScan = 48;
  const double ratio = std::pow(hi / lo, 1.0 / (kScan - 1));
  std::vector<double> ts(kScan), ds(kScan);
  int best = 0;
  for (int i = 0; i < kScan; ++i) {
    ts[i] = i == kScan - 1 ? hi : lo * std::pow(ratio, i);
    ds[i] = g(ts[i]);
    if (ds[i] > ds[best]) best = i;
  }
  double a = ts[std::max(best - 1, 0)];
  double b = ts[std::min(best + 1, kScan - 1)];
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - phi * (b - a), d = a + phi * (b - a);
  double fc = g(c), fd = g(d);
  for (int it = 0; it < 80 && b - a > 1e-12 * b; ++it) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - phi * (b - a);
      fc = g(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + phi * (b - a);
      fd = g(d);
    }
  }
  double t = fc > fd ? c : d;
  double v = std::max(fc, fd);
  if (ds[best] > v) {
    t = ts[best];
    v = ds[best];
  }
  return {t, v};
}

bool better(const Candidate& a, const Candidate& b, const SpaceGroupSpec& spec) {
  if (std::abs(a.density - b.density) > 1e-12) return a.density > b.density;
  if (std::abs(a.tau - b.tau) > 1e-12) return a.tau < b.tau;
  const Vec3 ka = triangle_point(spec, a.b1, a.b2);
  const Vec3 kb = triangle_point(spec, b.b1, b.b2);
  for (int i = 0; i < 3; ++i)
    if (ka[i] != kb[i]) return ka[i] < kb[i];
  return false;
}

// Moves (b1, b2, tau) onto the exact tie of the distance functions that are
// active at the optimum. Accepted only when the density increases.
Candidate polish(const OrbitEvaluator& ev, const SearchParams& params, const Candidate& c) {
  const SpaceGroupSpec& spec = ev.spec();
  // Per-element distance function D_i(b1, b2, tau) = sqrt(theta_i^2 + (f_i tau)^2).
  const std::size_t n_el = ev.size();
  auto element_distances = [&](double b1, double b2, double tau) {
    std::vector<double> a;
    ev.angles(triangle_point(spec, b1, b2), a);
    std::vector<double> d(n_el);
    for (std::size_t i = 0; i < n_el; ++i) d[i] = ev.element_distance(a, i, tau);
    return d;
  };
  const auto d0 = element_distances(c.b1, c.b2, c.tau);
  const double dmin = *std::min_element(d0.begin(), d0.end());
  // Distinct active functions: elements and their inverses coincide, so
  // compare values at the optimum and at a nearby probe.
  const auto probe = element_distances(c.b1 + 3.1e-4, c.b2 - 1.7e-4, c.tau * (1 + 2.3e-4));
  Candidate best = c;
  std::vector<std::size_t> previous;
  // The simplex may stop short of the vertex, so widen the activity band
  // until the tie system is complete.
  for (double band : {1e-6, 1e-5, 1e-4, 1e-3}) {
    std::vector<std::size_t> active;
    for (std::size_t i = 0; i < n_el; ++i) {
      if (d0[i] > dmin + band) continue;
      bool dup = false;
      for (std::size_t j : active)
        if (std::abs(d0[i] - d0[j]) < 1e-12 && std::abs(probe[i] - probe[j]) < 1e-12) dup = true;
      if (!dup) active.push_back(i);
    }
    if (active.size() < 2 || active == previous) continue;
    previous = active;

    auto residual = [&](const Vector& x) {
      const auto d = element_distances(x[0], x[1], x[2]);
      Vector r;
      for (std::size_t k = 1; k < active.size(); ++k) r.push_back(d[active[k]] - d[active[0]]);
      return r;
    };
    Vector x{c.b1, c.b2, c.tau};
    const double rn = gauss_newton(residual, x, 1e-15, 60, 1e-8);
    if (!(rn < 1e-10)) continue;
    const auto pb = project_barycentric(x[0], x[1]);
    if (pb[0] != x[0] || pb[1] != x[1]) continue;
    if (x[2] < params.tau_min || x[2] > params.tau_max) continue;
    const Candidate out{x[0], x[1], x[2], ev.density(triangle_point(spec, x[0], x[1]), x[2])};
    if (out.density > best.density) best = out;
  }
  return best;
}

}  // namespace

OptimizationResult optimize(const SpaceGroupSpec& spec, const SearchParams& params) {
  const auto t0 = std::chrono::steady_clock::now();
  if (spec.family == Family::Cyclic && spec.q.value_or(0) < 3) {
    throw NoPackingExists(spec.name + ": no ball packing exists for q=" +
                          std::to_string(spec.q.value_or(0)) + " (q must be at least 3)");
  }
  if (params.grid < 1 || params.starts < 1 || params.restarts < 0 ||
      !(params.tau_min > 0.0) || !(params.tau_max > params.tau_min)) {
    throw std::invalid_argument("optimize: invalid search parameters");
  }
  const OrbitEvaluator ev(spec);
  const int n = params.grid;
  constexpr double kMargin = 1e-4;

  // 1. Grid over the search triangle with the inner tau maximization.
  std::vector<std::array<double, 2>> nodes;
  for (int i = 0; i <= n; ++i)
    for (int j = 0; i + j <= n; ++j) {
      const double s = 1.0 - 3.0 * kMargin;
      nodes.push_back({kMargin + s * i / n, kMargin + s * j / n});
    }
  std::vector<Candidate> grid(nodes.size());
  std::vector<long> grid_evals(nodes.size(), 0);
  parallel_for(nodes.size(), params.threads, [&](std::size_t idx) {
    std::vector<double> angles;
    ev.angles(triangle_point(spec, nodes[idx][0], nodes[idx][1]), angles);
    const auto [tau, dens] = best_tau(ev, angles, params.tau_min, params.tau_max, grid_evals[idx]);
    grid[idx] = {nodes[idx][0], nodes[idx][1], tau, dens};
  });
  long evaluations = std::accumulate(grid_evals.begin(), grid_evals.end(), 0L);

  std::vector<std::size_t> order(grid.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return better(grid[a], grid[b], spec); });
  const Candidate grid_best = grid[order[0]];

  // 2. Nelder-Mead from the best grid samples, with jittered restarts.
  auto objective = [&](const Vector& x) {
    const auto pb = project_barycentric(x[0], x[1]);
    const double tau = std::clamp(x[2], params.tau_min, params.tau_max);
    return -ev.density(triangle_point(spec, pb[0], pb[1]), tau);
  };
  const int starts = std::min<int>(params.starts, static_cast<int>(grid.size()));
  struct StartOutcome {
    Candidate best;
    std::vector<double> restarts;
    long evaluations = 0;
  };
  std::vector<StartOutcome> outcomes(starts);
  parallel_for(starts, params.threads, [&](std::size_t s) {
    std::mt19937_64 rng(params.seed * 0x9E3779B97F4A7C15ULL + s);
    std::uniform_real_distribution<double> jitter(0.5, 1.5);
    const Candidate& g = grid[order[s]];
    Vector x{g.b1, g.b2, g.tau};
    const double hb = 0.5 / n;
    StartOutcome out;
    double previous = g.density;
    for (int r = 0; r <= params.restarts; ++r) {
      std::vector<Vector> simplex{x};
      const std::array<double, 3> steps{hb, hb, 0.05 * x[2]};
      for (int k = 0; k < 3; ++k) {
        Vector v = x;
        const double sign = (rng() & 1) ? 1.0 : -1.0;
        v[k] += sign * steps[k] * jitter(rng);
        simplex.push_back(v);
      }
      const auto res = nelder_mead(objective, simplex, 1e-10);
      out.evaluations += res.evaluations;
      const auto pb = project_barycentric(res.x[0], res.x[1]);
      Candidate c{pb[0], pb[1], std::clamp(res.x[2], params.tau_min, params.tau_max), 0.0};
      c.density = ev.density(triangle_point(spec, c.b1, c.b2), c.tau);
      c = polish(ev, params, c);
      if (c.density >= previous) {
        x = {c.b1, c.b2, c.tau};
        previous = c.density;
        out.best = c;
      }
      out.restarts.push_back(previous);
    }
    if (out.restarts.empty() || out.best.tau == 0.0) out.best = g;
    outcomes[s] = std::move(out);
  });

  std::size_t win = 0;
  for (std::size_t s = 0; s < outcomes.size(); ++s) {
    evaluations += outcomes[s].evaluations;
    if (better(outcomes[s].best, outcomes[win].best, spec)) win = s;
  }
  const auto& rd = outcomes[win].restarts;
  if (rd.size() >= 2 && rd.back() - rd[rd.size() - 2] > 1e-6) {
    throw ConvergenceFailure(spec.name + ": simplex restarts still improving the density by " +
                             std::to_string(rd.back() - rd[rd.size() - 2]));
  }
  Candidate best = outcomes[win].best;
  if (better(grid_best, best, spec)) best = grid_best;

  OptimizationResult result;
  result.spec = spec;
  result.best = density(spec, best.tau, S2RPoint(triangle_point(spec, best.b1, best.b2), 0.0),
                        params.k_max);
  result.method = Method::GridSimplex;
  result.evaluations = evaluations;
  result.restart_densities = rd;
  result.grid_density = grid_best.density;
  result.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

std::vector<OptimizationResult> optimize_over_q(std::string_view name, const std::vector<int>& qs,
                                                const SearchParams& params, std::optional<int> k) {
  if (!has_q_parameter(name)) throw UnknownGroup(std::string(name) + " has no parameter q");
  std::vector<OptimizationResult> out;
  for (int q : qs) out.push_back(optimize(make_group(name, q, k), params));
  return out;
}

std::size_t argmax_density(const std::vector<OptimizationResult>& results) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < results.size(); ++i)
    if (results[i].best.density > results[best].best.density) best = i;
  return best;
}

namespace {

// Local chart around a kernel direction: K(a, b) = normalize(K0 + a e1 + b e2).
struct Chart {
  Vec3 origin, e1, e2;
  explicit Chart(const Vec3& k) : origin(normalized(k)) {
    const Vec3 helper = std::abs(origin.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
    e1 = normalized(cross(origin, helper));
    e2 = cross(origin, e1);
  }
  Vec3 at(double a, double b) const { return normalized(origin + a * e1 + b * e2); }
};

const SpaceGroupSpec& group_8i2() {
  static const SpaceGroupSpec spec = make_group("8.I.2");
  return spec;
}

RegimeEndpoint endpoint(double tau, const S2RPoint& k) {
  const auto c = density(group_8i2(), tau, k, 2);
  return {tau, k, c.radius, c.density, c.kissing};
}

// Solves the family equations plus one extra condition for (K, tau).
std::pair<S2RPoint, double> solve_endpoint(
    const S2RPoint& guess, double tau_guess,
    const std::function<double(const TouchingRequirements&)>& extra) {
  const Chart chart(guess.direction());
  auto f = [&](const Vector& x) {
    const auto t = touching_requirements_8i2(S2RPoint(chart.at(x[0], x[1]), 0.0), x[2]);
    return Vector{t.residuals[0], t.residuals[1], extra(t)};
  };
  Vector x{0.0, 0.0, tau_guess};
  const double rn = gauss_newton(f, x, 1e-14, 100);
  if (!(rn < 1e-10)) throw ConvergenceFailure("8.I.2 endpoint solve did not converge");
  return {S2RPoint(chart.at(x[0], x[1]), 0.0), x[2]};
}

}  // namespace

S2RPoint requirement_family_8i2(double tau, const S2RPoint& guess) {
  const Chart chart(guess.direction());
  auto f = [&](const Vector& x) {
    const auto t = touching_requirements_8i2(S2RPoint(chart.at(x[0], x[1]), 0.0), tau);
    return Vector{t.residuals[0], t.residuals[1]};
  };
  Vector x{0.0, 0.0};
  const double rn = gauss_newton(f, x, 1e-14, 100);
  if (!(rn < 1e-10)) throw ConvergenceFailure("8.I.2 requirement family: no kernel at tau=" + std::to_string(tau));
  return S2RPoint(chart.at(x[0], x[1]), 0.0);
}

TwoRegimeAnalysis two_regime_8i2(int samples) {
  if (samples < 3) throw std::invalid_argument("two_regime_8i2: need at least 3 samples");
  TwoRegimeAnalysis out;
  // Start on the mirror y = z, where the family lives.
  const double phi = 0.6;
  const S2RPoint start({std::cos(phi), std::sin(phi) / std::sqrt(2.0), std::sin(phi) / std::sqrt(2.0)}, 0.0);
  auto [ka, tau_a] = solve_endpoint(start, 1.2, [](const TouchingRequirements& t) {
    return t.distances[0] - t.translation_distance;
  });
  out.a = endpoint(tau_a, ka);

  // Continue along the family until the second side condition is violated.
  constexpr double kStep = 0.02;
  S2RPoint k = ka;
  double tau = tau_a;
  auto side_gap = [](const S2RPoint& kk, double t) {
    const auto r = touching_requirements_8i2(kk, t);
    return r.side_distance - r.distances[0];
  };
  double gap = side_gap(k, tau);
  while (true) {
    const double next = tau + kStep;
    if (next > 2 * kPi) throw ConvergenceFailure("8.I.2: side condition never becomes active");
    const S2RPoint kn = requirement_family_8i2(next, k);
    const double gn = side_gap(kn, next);
    if (gap > 0 && gn <= 0) {
      const double guess = tau + kStep * gap / (gap - gn);
      auto [kb, tau_b] = solve_endpoint(kn, guess, [](const TouchingRequirements& t) {
        return t.side_distance - t.distances[0];
      });
      out.b = endpoint(tau_b, kb);
      break;
    }
    k = kn;
    tau = next;
    gap = gn;
  }

  const double h = (out.b.tau - out.a.tau) / (samples - 1);
  k = out.a.kernel;
  std::vector<double> dens;
  for (int i = 0; i < samples; ++i) {
    const double t = i == samples - 1 ? out.b.tau : out.a.tau + i * h;
    if (i == 0) {
      k = out.a.kernel;
    } else if (i == samples - 1) {
      k = out.b.kernel;
    } else {
      k = requirement_family_8i2(t, k);
    }
    const auto c = density(group_8i2(), t, k, 2);
    out.curve.samples.push_back({t, c.density, c.radius, c.kissing, k});
    dens.push_back(c.density);
  }
  for (int i = 1; i + 1 < samples; ++i)
    out.second_derivatives.push_back((dens[i + 1] - 2 * dens[i] + dens[i - 1]) / (h * h));
  return out;
}

DensityCurve density_curve(const SpaceGroupSpec& spec, double tau_lo, double tau_hi, int n,
                           const SearchParams& params) {
  if (!(tau_lo > 0.0) || !(tau_hi > tau_lo) || n < 2) {
    throw std::invalid_argument("density_curve: need 0 < tau_lo < tau_hi and n >= 2");
  }
  std::vector<double> taus(n);
  for (int i = 0; i < n; ++i)
    taus[i] = i == n - 1 ? tau_hi : tau_lo + (tau_hi - tau_lo) * i / (n - 1);
  DensityCurve curve;
  curve.samples.resize(n);

  if (spec.name == "8.I.2") {
    const auto reg = two_regime_8i2(3);
    S2RPoint k = reg.a.kernel;
    // Walk from the family's known point towards each sample in small steps.
    double at = reg.a.tau;
    auto follow = [&](double target) {
      const double step = 0.02;
      while (std::abs(target - at) > step) {
        at += target > at ? step : -step;
        k = requirement_family_8i2(at, k);
      }
      at = target;
      k = requirement_family_8i2(at, k);
      return k;
    };
    for (int i = 0; i < n; ++i) {
      const S2RPoint ki = follow(taus[i]);
      const auto c = density(spec, taus[i], ki, params.k_max);
      curve.samples[i] = {taus[i], c.density, c.radius, c.kissing, ki};
    }
    return curve;
  }

  const OrbitEvaluator ev(spec);
  const int g = std::max(params.grid / 2, 4);
  constexpr double kMargin = 1e-4;
  std::vector<std::array<double, 2>> nodes;
  for (int i = 0; i <= g; ++i)
    for (int j = 0; i + j <= g; ++j) {
      const double s = 1.0 - 3.0 * kMargin;
      nodes.push_back({kMargin + s * i / g, kMargin + s * j / g});
    }
  parallel_for(taus.size(), params.threads, [&](std::size_t idx) {
    const double tau = taus[idx];
    std::vector<std::pair<double, std::size_t>> scored;
    for (std::size_t m = 0; m < nodes.size(); ++m)
      scored.push_back({ev.density(triangle_point(spec, nodes[m][0], nodes[m][1]), tau), m});
    std::stable_sort(scored.begin(), scored.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    auto objective = [&](const Vector& x) {
      const auto pb = project_barycentric(x[0], x[1]);
      return -ev.density(triangle_point(spec, pb[0], pb[1]), tau);
    };
    double best_val = scored[0].first;
    std::array<double, 2> best = nodes[scored[0].second];
    for (std::size_t s = 0; s < std::min<std::size_t>(3, scored.size()); ++s) {
      const auto& p = nodes[scored[s].second];
      const double hb = 0.5 / g;
      const auto res = nelder_mead(objective, {{p[0], p[1]}, {p[0] + hb, p[1]}, {p[0], p[1] + hb}}, 1e-11);
      if (-res.value > best_val) {
        best_val = -res.value;
        best = project_barycentric(res.x[0], res.x[1]);
      }
    }
    const S2RPoint k(triangle_point(spec, best[0], best[1]), 0.0);
    const auto c = density(spec, tau, k, params.k_max);
    curve.samples[idx] = {tau, c.density, c.radius, c.kissing, k};
  });
  return curve;
}

ClosedFormReport8i1 closed_form_check_8i1(const SearchParams& params) {
  const SpaceGroupSpec spec = make_group("8.I.1");
  ClosedFormReport8i1 rep;
  const double s5 = std::sqrt(5.0);
  const double x = std::sqrt((5 + s5) / 10);
  const double y = 0.5 * std::sqrt((s5 - 1) / s5);
  rep.kernel = S2RPoint({x, y, y}, 0.0);
  rep.radius = std::acos(x);
  rep.tau = 2 * rep.radius;
  rep.volume = ball_volume(rep.radius);
  rep.density = rep.volume / dv_cell_volume(spec, rep.tau);

  const Vec3& k = rep.kernel.direction();
  auto axis_chord = [&](const Vec3& axis) { return std::sin(unit_angle(k, axis)); };
  const Vec3 a1 = spec.generators[0].axis;
  // The generator's axis lies in [x, y]; pick the sense facing the kernel.
  Vec3 a2 = spec.generators[1].axis;
  const Vec3 a2m{a2.x, -a2.y, a2.z};
  if (dot(k, a2m) > dot(k, a2)) a2 = a2m;
  rep.condition1_residual = std::sqrt(3.0) / 2 * axis_chord(a2) - axis_chord(a1);

  const SpaceGroupSpec spec_mirror = [&] {
    SpaceGroupSpec s = spec;
    s.generators[1].axis = a2;
    return s;
  }();
  const double d1 = distance(rep.kernel, apply(word_isometry(spec_mirror, {0}, rep.tau), rep.kernel));
  const double d2 = distance(rep.kernel, apply(word_isometry(spec_mirror, {1}, rep.tau), rep.kernel));
  rep.condition1_geodesic_residual = d1 - d2;
  const double dt = distance(rep.kernel, apply(Isometry::fibre_translation(rep.tau), rep.kernel));
  rep.condition2_residual = std::max(std::abs(2 * rep.radius - d1), std::abs(2 * rep.radius - dt));

  rep.numeric = optimize(spec, params);
  rep.kernel_gap = std::numeric_limits<double>::infinity();
  for (const Vec3& c : symmetric_copies(spec, k))
    rep.kernel_gap = std::min(rep.kernel_gap, unit_angle(c, rep.numeric.best.kernel.direction()));
  rep.radius_gap = std::abs(rep.numeric.best.radius - rep.radius);
  rep.density_gap = std::abs(rep.numeric.best.density - rep.density);
  return rep;
}

}  // namespace s2xr
