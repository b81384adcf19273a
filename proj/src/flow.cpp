#include "gaussflow/flow.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "gaussflow/gaussian.hpp"

namespace gaussflow {

namespace {

void check_path_polyline(const SimplicialManifold& curve) {
  validate(curve);
  if (curve.intrinsic_dim != 1 || curve.ambient_dim() != 2)
    throw std::invalid_argument("flow: the curve must be a polyline in the plane");
  if (curve.vertex_count() < 3)
    throw std::invalid_argument("flow: the curve needs interior vertices");
  for (Eigen::Index s = 0; s < curve.simplex_count(); ++s)
    if (curve.simplices(0, s) != s || curve.simplices(1, s) != s + 1)
      throw std::invalid_argument("flow: the curve must be path-ordered");
}

// Uniform arc-length resampling; first and last vertices are kept exactly.
SimplicialManifold resample_path(const Eigen::MatrixXd& pts, double h_target) {
  const Eigen::Index v = pts.cols();
  Eigen::VectorXd arc(v);
  arc[0] = 0;
  for (Eigen::Index i = 1; i < v; ++i)
    arc[i] = arc[i - 1] + (pts.col(i) - pts.col(i - 1)).norm();
  const double length = arc[v - 1];
  const Eigen::Index segments = std::max<Eigen::Index>(
      2, static_cast<Eigen::Index>(std::llround(length / h_target)));

  SimplicialManifold out;
  out.intrinsic_dim = 1;
  out.vertices.resize(2, segments + 1);
  out.vertices.col(0) = pts.col(0);
  out.vertices.col(segments) = pts.col(v - 1);
  Eigen::Index cursor = 0;
  for (Eigen::Index j = 1; j < segments; ++j) {
    const double target = length * static_cast<double>(j) / static_cast<double>(segments);
    while (cursor + 2 < v && arc[cursor + 1] < target) ++cursor;
    const double span = arc[cursor + 1] - arc[cursor];
    const double w = span > 0 ? (target - arc[cursor]) / span : 0.0;
    out.vertices.col(j) = pts.col(cursor) * (1 - w) + pts.col(cursor + 1) * w;
  }
  out.simplices.resize(2, segments);
  for (Eigen::Index s = 0; s < segments; ++s) out.simplices.col(s) << s, s + 1;
  out.multiplicities = Eigen::VectorXd::Ones(segments);
  return out;
}

double min_edge(const SimplicialManifold& curve) {
  double lo = std::numeric_limits<double>::infinity();
  for (Eigen::Index s = 0; s < curve.simplex_count(); ++s)
    lo = std::min(lo, (curve.vertices.col(s + 1) - curve.vertices.col(s)).norm());
  return lo;
}

}  // namespace

FlowState init_flow(const SimplicialManifold& initial_curve, const BoundaryMotion& motion,
                    double t_start, double h_target) {
  check_path_polyline(initial_curve);
  if (!(t_start < 0)) throw std::invalid_argument("init_flow: start time must be negative");
  if (!(h_target > 0)) throw std::invalid_argument("init_flow: resolution must be positive");

  const Eigen::MatrixXd ends = motion_positions(motion, t_start);
  if (ends.cols() != 2 || ends.rows() != 2)
    throw std::invalid_argument("init_flow: the motion must prescribe two endpoints in the plane");
  const Eigen::VectorXd lo = initial_curve.vertices.rowwise().minCoeff();
  const Eigen::VectorXd hi = initial_curve.vertices.rowwise().maxCoeff();
  const double tol = 1e-8 * (1 + (hi - lo).norm());
  const Eigen::Index last = initial_curve.vertex_count() - 1;
  if ((initial_curve.vertices.col(0) - ends.col(0)).norm() > tol ||
      (initial_curve.vertices.col(last) - ends.col(1)).norm() > tol)
    throw std::invalid_argument("init_flow: curve endpoints do not match the boundary motion");

  FlowState state;
  state.time = t_start;
  state.motion = motion;
  state.h_target = h_target;
  state.curve = resample_path(initial_curve.vertices, h_target);
  state.curve.vertices.col(0) = ends.col(0);
  state.curve.vertices.col(state.curve.vertex_count() - 1) = ends.col(1);
  state.history_times.push_back(t_start);
  state.history_positions.push_back(ends);
  return state;
}

double stable_dt(const FlowState& state) {
  const double e = min_edge(state.curve);
  return 0.5 * e * e;
}

FlowState step(FlowState state, double dt) {
  if (!(dt > 0)) throw std::invalid_argument("step: the step must be positive");
  if (!(state.time + dt < 0)) throw std::invalid_argument("step: the flow stops before time zero");
  const double cap = stable_dt(state);
  if (dt > cap * (1 + 1e-12)) {
    std::ostringstream msg;
    msg << "step: dt " << dt << " exceeds the stability cap; suggested dt " << cap;
    throw std::invalid_argument(msg.str());
  }

  const Eigen::MatrixXd& p = state.curve.vertices;
  const Eigen::Index v = p.cols();
  Eigen::MatrixXd moved = p;
  for (Eigen::Index i = 1; i + 1 < v; ++i) {
    const Eigen::Vector2d e0 = p.col(i) - p.col(i - 1);
    const Eigen::Vector2d e1 = p.col(i + 1) - p.col(i);
    const double l0 = e0.norm(), l1 = e1.norm();
    if (l0 == 0 || l1 == 0) continue;
    const Eigen::Vector2d kappa = 2 * (e1 / l1 - e0 / l0) / (l0 + l1);
    moved.col(i) += dt * kappa;
  }

  const double t_new = state.time + dt;
  const Eigen::MatrixXd ends = motion_positions(state.motion, t_new);
  moved.col(0) = ends.col(0);
  moved.col(v - 1) = ends.col(1);

  state.time = t_new;
  state.curve = resample_path(moved, state.h_target);
  state.curve.vertices.col(0) = ends.col(0);
  state.curve.vertices.col(state.curve.vertex_count() - 1) = ends.col(1);
  state.history_times.push_back(t_new);
  state.history_positions.push_back(ends);
  return state;
}

MonotonicityReport run_and_verify(const SimplicialManifold& initial_curve,
                                  const BoundaryMotion& motion, const MonotonicityConfig& cfg) {
  if (!(cfg.a < cfg.b) || !(cfg.b < 0))
    throw std::invalid_argument("run_and_verify: need a < b < 0");
  if (cfg.report_count < 1) throw std::invalid_argument("run_and_verify: need report times");

  FlowState state = init_flow(initial_curve, motion, cfg.a, cfg.h);
  const auto phi_rescaled = [&cfg](const FlowState& s) {
    SimplicialManifold scaled = s.curve;
    scaled.vertices /= std::sqrt(-s.time);
    return phi_area(scaled, cfg.quad_tol).value;
  };

  MonotonicityReport rep;
  rep.tol_constant = cfg.tol_constant;
  rep.tol_model = cfg.tol_constant * (cfg.h * cfg.h + cfg.dt) * (cfg.b - cfg.a);

  const double phi_start = phi_rescaled(state);
  rep.rows.push_back({cfg.a, phi_start, 0.0, 0.0});
  rep.worst_margin = 0.0;

  for (int k = 1; k <= cfg.report_count; ++k) {
    const double t_k = cfg.a + (cfg.b - cfg.a) * k / cfg.report_count;
    while (t_k - state.time > 1e-15) {
      const double dt_k = std::min(cfg.dt, t_k - state.time);
      state = step(std::move(state), dt_k);
    }
    MonotonicityRow row;
    row.t = state.time;
    row.phi_rescaled = phi_rescaled(state);
    const auto recorded =
        general_motion(state.motion.sigma, state.history_times, state.history_positions);
    row.swept_cumulative = swept_phi_area(recorded, cfg.a, state.time, cfg.sweep).value;
    row.margin = row.swept_cumulative - (row.phi_rescaled - phi_start);
    rep.worst_margin = std::min(rep.worst_margin, row.margin);
    rep.rows.push_back(row);
  }
  rep.ok = rep.worst_margin >= -rep.tol_model;
  return rep;
}

std::string monotonicity_csv(const MonotonicityReport& report) {
  std::ostringstream out;
  out << "# schema: gaussflow.monotonicity.csv.v1\n";
  out << "t,phi_rescaled,swept_cumulative,margin\n";
  out.precision(12);
  for (const auto& row : report.rows)
    out << row.t << ',' << row.phi_rescaled << ',' << row.swept_cumulative << ',' << row.margin
        << '\n';
  return out.str();
}

}  // namespace gaussflow
