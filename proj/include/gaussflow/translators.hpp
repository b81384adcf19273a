#pragma once

// Exact and ODE-accurate translating-soliton meshes with horizontal planar
// boundary, boundary extraction, and the end-to-end entropy bound report.

#include <Eigen/Dense>
#include <vector>

#include "gaussflow/densities.hpp"
#include "gaussflow/simplicial.hpp"

namespace gaussflow {

// Polyline sampling of the translating curve y = -(1/v) ln cos(v x),
// truncated at height y_cut, uniform in arc length with res vertices.
// Every vertex lies on the curve to rounding; the two endpoints sit at
// height y_cut exactly.
SimplicialManifold grim_reaper(double v, double y_cut, int res);

// Radial profile u(r) of the rotationally symmetric translator in R^{m+1}:
//   u'' / (1 + u'^2) + (m - 1) u' / r = v,  u(0) = u'(0) = 0.
// Integrated with an adaptive embedded Runge-Kutta pair from a series start
// near r = 0; nodes are the accepted steps plus an exact landing at r_max.
struct BowlProfile {
  int m = 2;
  double v = 1;
  Eigen::VectorXd r;
  Eigen::VectorXd u;
  Eigen::VectorXd du;  // u' at the nodes
};

// max_step 0: capped at r_max / 64 so cubic interpolation between nodes
// stays far below the integration tolerance.
BowlProfile bowl_profile(int m, double v, double r_max, double tol = 1e-10,
                         double max_step = 0);

// Cubic Hermite evaluation between profile nodes; the series expansion
// covers radii below the first node.
double bowl_profile_height(const BowlProfile& profile, double r);
double bowl_profile_slope(const BowlProfile& profile, double r);

// Surface of revolution of the m = 2 profile: triangle mesh in R^3 with an
// apex fan, res profile stations spaced by arc length, and 2 res sectors.
// The boundary circle of radius r_max lies in one horizontal plane exactly.
SimplicialManifold bowl_cap(int m, double v, double r_max, int res);

// One horizontal-plane piece of a mesh boundary: the free codimension-one
// faces grouped by plane, with the height coordinate dropped (sigma lives in
// R^{n-1}, the plane's own coordinates).
struct BoundaryGroup {
  SimplicialManifold sigma;
  double height = 0;
  int component_count = 0;  // connected components merged into this plane
};

// Extracts the free (d-1)-faces, splits them into connected components, and
// groups the components by plane height within plane_tol (0: 1e-8 times the
// bounding-box diameter). A component whose heights spread beyond plane_tol
// is not horizontal-planar and raises UnsupportedBoundaryError.
std::vector<BoundaryGroup> boundary_components(const SimplicialManifold& m,
                                               double plane_tol = 0);

struct EntropyBoundConfig {
  SearchOptions search;
  double plane_tol = 0;
};

struct BoundaryTermReport {
  double height = 0;
  int component_count = 0;
  DensityReport entropy;
  DensityReport mcd;
  DensityReport mdr;
};

// entropy(M) against the summed boundary bounds. `bound` adds entropy + mcd
// per plane; `bound_coeff2` doubles the entropy term (the constant the
// stepwise estimate gives before tightening); `bound_mdr` replaces entropy
// with the density ratio; `convex_bound` is the closed form
// k (1 + m w_m / w_{m-1}), sharp when every piece bounds a convex region.
struct EntropyBoundReport {
  DensityReport entropy_M;
  std::vector<BoundaryTermReport> components;
  double bound = 0;
  double bound_coeff2 = 0;
  double bound_mdr = 0;
  double convex_bound = 0;
  double margin = 0;  // bound - entropy_M
  double margin_mdr = 0;
  double margin_convex = 0;
  double tol = 0;  // combined error budget for the margins
};

EntropyBoundReport verify_entropy_bound(const SimplicialManifold& m,
                                        const EntropyBoundConfig& cfg = {});

}  // namespace gaussflow
