#pragma once

// Geometric density functionals on simplicial manifolds:
//
//   * entropy: sup over Gaussian windows (center, scale_time) of the
//     window-weighted area; suprema attained only in degenerate limits
//     (scale_time -> 0 sheet counting, scale_time -> inf point counting)
//     are detected and reported with a boundary flag.
//   * cone density: density at the vertex of the cone over a shifted mesh,
//     computed in closed form (subtended angle / solid angle per simplex).
//   * maximal cone density (mcd): sup of cone density over shifts.
//   * ball density ratio: measure inside a closed ball over omega_d r^d,
//     exact per-simplex clipping.
//   * maximal density ratio (mdr): sup of the ball density ratio over
//     centers and radii.
//
// All suprema are located by deterministic multistart compass search.

#include <Eigen/Dense>

#include <cstdint>
#include <string>

#include "gaussflow/optimize.hpp"
#include "gaussflow/simplicial.hpp"

namespace gaussflow {

// Volume of the unit ball in R^d.
double unit_ball_volume(int d);

struct DensityReport {
  double value = 0;
  double error = 0;             // best-effort bound: quadrature + search residual
  Eigen::VectorXd arg_center;   // maximizing center / shift
  double arg_scale = 0;         // maximizing scale_time or radius, 0 in degenerate limits
  bool boundary_flag = false;   // supremum attained only as a degenerate limit
  std::string note;
  std::int64_t evaluations = 0;
};

struct SearchOptions {
  double quad_tol = 1e-5;        // absolute tolerance per objective evaluation
  int max_center_starts = 6;     // vertex starts (strided) in addition to the centroid
  int scale_count = 7;           // geometric grid of scale starts
  double scale_lo_rel = 1e-4;    // scale grid bounds relative to diameter^2 (entropy)
  double scale_hi_rel = 1e4;     //   or to diameter (mdr radii)
  double step_tol = 1e-6;
  std::int64_t max_evals = 20000;  // per start
};

// sup_{c, t0} of the Gaussian window functional.
DensityReport entropy(const SimplicialManifold& m, const SearchOptions& opts = {});

// Density at the origin of the cone over (m - shift). Closed form; supports
// intrinsic dimension 0, 1, 2. Throws SingularConeError when a vertex of the
// shifted mesh lies at the cone point.
double cone_density(const SimplicialManifold& m, const Eigen::VectorXd& shift);

// sup over shifts of cone_density.
DensityReport max_cone_density(const SimplicialManifold& m, const SearchOptions& opts = {});

// measure(m intersect closed B_r(center)) / (omega_d r^d). Exact clipping for
// intrinsic dimension <= 1; recursively subdivided (deterministic) for
// triangles.
double ball_density_ratio(const SimplicialManifold& m, const Eigen::VectorXd& center, double r);

// sup over centers and radii of the ball density ratio.
DensityReport max_density_ratio(const SimplicialManifold& m, const SearchOptions& opts = {});

}  // namespace gaussflow
