#pragma once

// Density maximization over the kernel point and the lattice parameter.

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "s2xr/packing.hpp"

namespace s2xr {

class NoPackingExists : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class ConvergenceFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SearchParams {
  int grid = 40;              ///< barycentric subdivisions of the search triangle
  double tau_min = 0.05;
  double tau_max = 2 * kPi;
  int starts = 5;             ///< best grid samples refined by Nelder-Mead
  int restarts = 3;           ///< jittered simplex restarts after the first run of each start
  std::uint64_t seed = 1;
  int k_max = 2;
  unsigned threads = 0;       ///< 0: worker_count()
};

enum class Method { GridSimplex, ConstrainedFamily, ClosedForm };
std::string method_name(Method m);

struct CurveSample {
  double tau = 0.0;
  double density = 0.0;
  double radius = 0.0;
  int kissing = 0;
  S2RPoint kernel;
};

struct DensityCurve {
  std::vector<CurveSample> samples;
};

struct OptimizationResult {
  SpaceGroupSpec spec;
  PackingConfiguration best;
  std::optional<DensityCurve> curve;
  Method method = Method::GridSimplex;
  long evaluations = 0;
  double wall_time = 0.0;
  double grid_density = 0.0;  ///< best density on the initial grid
  /// Density after the first simplex run and each restart of the winning start.
  std::vector<double> restart_densities;
};

/// Number of worker threads: hardware concurrency, capped by S2XR_THREADS.
unsigned worker_count();

/// Runs body(i) for i in [0, n) on up to `threads` workers.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body);

/// Kernel for barycentric coordinates (b1, b2) on the search triangle
/// (b0 = 1 - b1 - b2), fibre 0.
Vec3 triangle_point(const SpaceGroupSpec& spec, double b1, double b2);

/// Maximizes the density over the kernel point and tau.
/// Throws NoPackingExists for the 1q family with q < 3.
OptimizationResult optimize(const SpaceGroupSpec& spec, const SearchParams& params = {});

/// optimize() for each q; k applies to 1q.I.2 only.
std::vector<OptimizationResult> optimize_over_q(std::string_view name, const std::vector<int>& qs,
                                                const SearchParams& params = {},
                                                std::optional<int> k = std::nullopt);

/// Index of the densest result (first one on ties).
std::size_t argmax_density(const std::vector<OptimizationResult>& results);

/// Density as a function of tau, maximized over the kernel at each sample.
/// 8.I.2 follows its touching-requirement family instead (see
/// requirement_family_8i2). n >= 2 samples, endpoints included.
DensityCurve density_curve(const SpaceGroupSpec& spec, double tau_lo, double tau_hi, int n,
                           const SearchParams& params = {});

/// Kernel on the 8.I.2 requirement family at lattice parameter tau:
/// d(K, K^g1) = d(K, K^{g2 t2}) = d(K, K^{g1 g2 t2}), found by Newton iteration
/// from `guess`. Throws ConvergenceFailure.
S2RPoint requirement_family_8i2(double tau, const S2RPoint& guess);

struct RegimeEndpoint {
  double tau = 0.0;
  S2RPoint kernel;
  double radius = 0.0;
  double density = 0.0;
  int kissing = 0;
};

/// The one-parameter family of 8.I.2 packings. Endpoint a is where the
/// lattice translation starts touching (tau = 2R); endpoint b is where the
/// second side condition becomes an equality, beyond which the family stops
/// being a packing with radius d(K, K^g1) / 2.
struct TwoRegimeAnalysis {
  RegimeEndpoint a;
  RegimeEndpoint b;
  DensityCurve curve;  ///< along the family on [tau_a, tau_b]
  /// Finite-difference second derivatives of density along the family at
  /// interior samples.
  std::vector<double> second_derivatives;
};

TwoRegimeAnalysis two_regime_8i2(int samples = 100);

struct ClosedFormReport8i1 {
  S2RPoint kernel;      ///< closed-form optimum
  double radius = 0.0;  ///< arccos sqrt((5 + sqrt 5) / 10)
  double tau = 0.0;     ///< 2 * radius
  double volume = 0.0;
  double density = 0.0;
  /// (sqrt3 / 2) * dist(K, axis g2) - dist(K, axis g1), distances to the
  /// axes measured as chords sin(angle); equivalent to d(K, K^g1) = d(K, K^g2).
  double condition1_residual = 0.0;
  double condition1_geodesic_residual = 0.0;  ///< d(K, K^g1) - d(K, K^g2)
  double condition2_residual = 0.0;           ///< max |2R - d(K, K^g1)|, |2R - d(K, K^tau)|
  OptimizationResult numeric;
  /// Spherical angle from the optimizer's kernel to the nearest symmetric
  /// copy of the closed-form kernel.
  double kernel_gap = 0.0;
  double radius_gap = 0.0;
  double density_gap = 0.0;
};

ClosedFormReport8i1 closed_form_check_8i1(const SearchParams& params = {});

/// Images of K under the point group and the coordinate mirrors that
/// normalize the catalog groups.
std::vector<Vec3> symmetric_copies(const SpaceGroupSpec& spec, const Vec3& kernel);

}  // namespace s2xr
