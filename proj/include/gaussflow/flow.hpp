#pragma once

// Explicit curve-shortening flow for open planar polylines with a prescribed
// boundary motion, and the difference-form monotonicity verification built
// on the rescaled Gaussian length and the recorded boundary sweep.

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "gaussflow/boundary_sweep.hpp"
#include "gaussflow/simplicial.hpp"

namespace gaussflow {

struct FlowState {
  double time = -1;
  SimplicialManifold curve;  // d = 1 path-ordered polyline in R^2
  BoundaryMotion motion;     // prescribes the two endpoint positions
  double h_target = 1e-2;
  // Endpoint positions recorded at every accepted time, consumed by the
  // boundary sweep as a sampled motion.
  std::vector<double> history_times;
  std::vector<Eigen::MatrixXd> history_positions;
};

// Resamples the curve to h_target and snaps its endpoints onto the motion.
// Endpoints further than 1e-8 of the curve scale from the prescribed
// positions reject the pairing.
FlowState init_flow(const SimplicialManifold& initial_curve, const BoundaryMotion& motion,
                    double t_start, double h_target);

// Largest stable explicit step for the current mesh: min |edge|^2 / 2.
double stable_dt(const FlowState& state);

// One explicit step of size dt: interior vertices move by the discrete
// curvature vector kappa_i = 2 (T_{i+1} - T_i) / (|e_i| + |e_{i+1}|), the
// endpoints follow the motion exactly, and the curve is resampled to
// h_target (edges stay within [h_target/4, 2 h_target]). A dt above the
// stability cap is rejected with the suggested value in the message.
FlowState step(FlowState state, double dt);

struct MonotonicityConfig {
  double a = -2;
  double b = -0.5;
  double dt = 2e-5;
  double h = 1e-2;
  int report_count = 16;
  double tol_constant = 10;  // C in tol_model = C (h^2 + dt) (b - a)
  double quad_tol = 1e-5;
  SweepOptions sweep;
};

struct MonotonicityRow {
  double t = 0;
  double phi_rescaled = 0;      // Gaussian length of the rescaled curve
  double swept_cumulative = 0;  // boundary sweep over [a, t] from the history
  double margin = 0;            // swept_cumulative - (phi(t) - phi(a))
};

// The difference-form decrease statement: phi(t) - phi(a) never exceeds the
// boundary sweep, up to the discretization budget tol_model.
struct MonotonicityReport {
  std::vector<MonotonicityRow> rows;
  double tol_model = 0;
  double tol_constant = 10;
  double worst_margin = 0;
  bool ok = false;  // every margin >= -tol_model
};

MonotonicityReport run_and_verify(const SimplicialManifold& initial_curve,
                                  const BoundaryMotion& motion, const MonotonicityConfig& cfg);

// Schema-versioned CSV: comment line, header, one row per report time.
std::string monotonicity_csv(const MonotonicityReport& report);

}  // namespace gaussflow
