#pragma once

// Swept boundary surfaces under parabolic rescaling.
//
// A boundary motion carries a fixed combinatorial boundary (intrinsic
// dimension m-1) through negative time, either as a vertical translator
// F(x, t) = (x, 0) + (a + t) v e_n or as sampled positions. Rescaling by
// |t|^{-1/2} turns the track of the boundary into an m-dimensional surface;
// its Gaussian area controls how much entropy the boundary can inject into
// a flow. The translator track has the closed form
//
//   S = { (r x, (r a - 1/r) v) : r > 0, x in Sigma },   r = |t|^{-1/2},
//
// whose horizontal projection is the cone over Sigma and whose horizontal
// slices are dilates of Sigma. The number of dilates at height y is the
// number of positive roots of a quadratic in r; two sign conventions for its
// constant term coexist deliberately:
//
//   * root_count / root_count_integral use  a v r^2 - y r + v = 0, the form
//     the calculus bound is stated in (integral 1 for a < 0, erfc(sqrt(a)|v|)
//     for a > 0, both <= 1);
//   * sweep_ring_radii solves  a v r^2 - y r - v = 0, the equation the
//     surface's heights actually satisfy, used for slice cross-checks and the
//     per-term verification chain.

#include <Eigen/Dense>

#include <vector>

#include "gaussflow/densities.hpp"
#include "gaussflow/quadrature.hpp"
#include "gaussflow/simplicial.hpp"

namespace gaussflow {

struct BoundaryMotion {
  enum class Kind { Translator, General };
  Kind kind = Kind::Translator;
  // Combinatorics and multiplicities of the moving boundary. For the
  // Translator kind the vertices are the fixed horizontal profile in
  // R^{n-1}; for the General kind they are ignored in favor of samples.
  SimplicialManifold sigma;
  // Translator parameters: F(x, t) = (x, 0) + (a + t) v e_n.
  double offset_a = 0;
  double speed_v = 1;
  // General kind: strictly increasing negative times with one full vertex
  // position matrix (ambient x vertex_count) per sample; positions between
  // samples interpolate linearly.
  std::vector<double> sample_times;
  std::vector<Eigen::MatrixXd> sample_positions;
};

BoundaryMotion translator_motion(SimplicialManifold sigma, double offset_a, double speed_v);
BoundaryMotion general_motion(SimplicialManifold sigma, std::vector<double> times,
                              std::vector<Eigen::MatrixXd> positions);

// Unrescaled boundary positions at time t (ambient x vertex_count).
Eigen::MatrixXd motion_positions(const BoundaryMotion& motion, double t);

// The boundary at time t < 0, rescaled by |t|^{-1/2}.
SimplicialManifold rescaled_boundary(const BoundaryMotion& motion, double t);

struct SweepOptions {
  double tol = 1e-4;        // target agreement between the two evaluations
  int initial_slabs = 64;   // time slabs on the first pass (log-spaced in |t|)
  int max_refinements = 5;  // grid doublings before giving up
  QuadratureOptions quad;
};

struct SweepResult {
  double value = 0;           // swept Gaussian area (mesh evaluation)
  double error = 0;           // route disagreement plus quadrature errors
  double mesh_route = 0;      // Gaussian area of the lofted space-time mesh
  double integral_route = 0;  // slab-wise integral of |velocity_perp| Phi
  int slabs = 0;
};

// Gaussian area of the rescaled track over [a, b], a < b < 0, evaluated two
// independent ways and refined in time until they agree within tol.
SweepResult swept_phi_area(const BoundaryMotion& motion, double a, double b,
                           const SweepOptions& opts = {});

struct RingGridOptions {
  int rings = 512;      // geometric radius grid resolution
  double r_cut = 13.0;  // Gaussian kernel negligible beyond this distance
  double r_min = 0;     // 0: choose from the tail bound
  double r_max = 0;     // 0: choose from the tail bound
};

// Mesh of the translator track S over a truncated radius grid; sigma lives in
// R^{n-1} and the result in R^n with intrinsic dimension dim(sigma) + 1.
SimplicialManifold translator_sweep(const SimplicialManifold& sigma, double offset_a,
                                    double speed_v, const RingGridOptions& opts = {});

// Number of positive roots of a v r^2 - y r + v = 0 (double roots once;
// a = 0 treated as the linear equation).
int root_count(double y, double offset_a, double speed_v);

// Positive roots of a v r^2 - y r - v = 0, ascending: the ring radii of the
// translator track at height y.
std::vector<double> sweep_ring_radii(double y, double offset_a, double speed_v);

struct RootCountIntegral {
  double closed_form = 0;   // 1 (a < 0), erfc(sqrt(a)|v|) (a > 0), 1/2 (a = 0)
  double quadrature = 0;    // direct integral of root_count(y) Phi_1(y)
  double error = 0;         // quadrature error estimate
  bool linear_case = false; // a = 0: the quadratic degenerates to linear
};

RootCountIntegral root_count_integral(double offset_a, double speed_v);

struct MainCalculationOptions {
  double quad_tol = 1e-4;
  SearchOptions search;
  RingGridOptions grid;
};

// Per-term verification of the track-area bound chain:
//   phi_S <= theta_cone + entropy * n_surface <= theta_cone + entropy
//          <= mcd + entropy.
// n_surface is the Gaussian integral of the surface's own ring counts;
// n_lemma is the calculus-bound value (the two differ by the sign convention
// above and both are reported).
struct MainCalculationReport {
  double phi_S = 0;
  double phi_S_error = 0;
  DensityReport entropy_sigma;
  DensityReport mcd_sigma;
  double theta_cone = 0;         // cone density of the projection at 0
  double n_surface_quad = 0;     // integral of ring counts against Phi_1
  double n_surface_closed = 0;   // its closed form
  double n_lemma = 0;            // root_count_integral closed form
  bool linear_case = false;
  double bound_chain = 0;        // theta + entropy * n_surface
  double bound_cone = 0;         // theta + entropy
  double bound_mcd = 0;          // mcd + entropy
  double margin_chain = 0;       // bound_chain - phi_S
  double margin_cone = 0;
  double margin_mcd = 0;
  double tol = 0;                // combined error budget for the margins
};

MainCalculationReport verify_main_calculation(const SimplicialManifold& sigma, double offset_a,
                                              double speed_v,
                                              const MainCalculationOptions& opts = {});

}  // namespace gaussflow
