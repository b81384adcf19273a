#include "gaussflow/densities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "gaussflow/errors.hpp"
#include "gaussflow/gaussian.hpp"

namespace gaussflow {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kInf = std::numeric_limits<double>::infinity();
// Density searches run in low ambient dimension; capping it lets all hot-path
// vectors live on the stack.
constexpr int kMaxAmbient = 16;
using SmallVec = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxAmbient, 1>;

void check_ambient(const SimplicialManifold& m, const char* who) {
  if (m.ambient_dim() > kMaxAmbient)
    throw std::invalid_argument(std::string(who) + ": ambient dimension above 16 not supported");
}

Eigen::VectorXd centroid(const SimplicialManifold& m) {
  if (m.vertex_count() == 0) return Eigen::VectorXd::Zero(m.ambient_dim());
  return m.vertices.rowwise().mean();
}

// Centroid plus up to `cap` vertices at even stride.
std::vector<Eigen::VectorXd> center_starts(const SimplicialManifold& m, int cap) {
  std::vector<Eigen::VectorXd> out;
  out.push_back(centroid(m));
  const Eigen::Index v = m.vertex_count();
  const Eigen::Index stride = std::max<Eigen::Index>(1, v / std::max(1, cap));
  for (Eigen::Index i = 0; i < v; i += stride) out.push_back(m.vertices.col(i));
  return out;
}

// Interior 3^n grid over the bounding box (quarter points), for searches whose
// objective is blind far from the mesh.
std::vector<Eigen::VectorXd> box_grid_starts(const SimplicialManifold& m) {
  auto [lo, hi] = bounding_box(m);
  const int n = m.ambient_dim();
  std::vector<Eigen::VectorXd> out;
  std::vector<int> idx(static_cast<size_t>(n), 0);
  const double fracs[3] = {0.25, 0.5, 0.75};
  while (true) {
    Eigen::VectorXd p(n);
    for (int i = 0; i < n; ++i) p[i] = lo[i] + fracs[idx[static_cast<size_t>(i)]] * (hi[i] - lo[i]);
    out.push_back(std::move(p));
    int k = 0;
    while (k < n) {
      auto& slot = idx[static_cast<size_t>(k)];
      if (++slot < 3) break;
      slot = 0;
      ++k;
    }
    if (k == n) break;
  }
  return out;
}

Eigen::VectorXd search_scale(const SimplicialManifold& m, int extra_coords, double extra_scale) {
  auto [lo, hi] = bounding_box(m);
  const double diam = std::max(diameter_hint(m), 1e-9);
  Eigen::VectorXd s(m.ambient_dim() + extra_coords);
  for (int i = 0; i < m.ambient_dim(); ++i) s[i] = std::max(hi[i] - lo[i], 0.05 * diam);
  for (int i = 0; i < extra_coords; ++i) s[m.ambient_dim() + i] = extra_scale;
  return s;
}

// Closest distance from c to the triangle (A, B, C); dot products only, so
// it works in any ambient dimension (Ericson's closest-point construction).
double dist_point_triangle(const SmallVec& c, const SmallVec& A, const SmallVec& B, const SmallVec& C) {
  const SmallVec ab = B - A, ac = C - A, ap = c - A;
  const double d1 = ab.dot(ap), d2 = ac.dot(ap);
  if (d1 <= 0 && d2 <= 0) return ap.norm();
  const SmallVec bp = c - B;
  const double d3 = ab.dot(bp), d4 = ac.dot(bp);
  if (d3 >= 0 && d4 <= d3) return bp.norm();
  const double vc = d1 * d4 - d3 * d2;
  if (vc <= 0 && d1 >= 0 && d3 <= 0) {
    const double v = d1 / (d1 - d3);
    return (ap - v * ab).norm();
  }
  const SmallVec cp = c - C;
  const double d5 = ab.dot(cp), d6 = ac.dot(cp);
  if (d6 >= 0 && d5 <= d6) return cp.norm();
  const double vb = d5 * d2 - d1 * d6;
  if (vb <= 0 && d2 >= 0 && d6 <= 0) {
    const double w = d2 / (d2 - d6);
    return (ap - w * ac).norm();
  }
  const double va = d3 * d6 - d5 * d4;
  if (va <= 0 && d4 - d3 >= 0 && d5 - d6 >= 0) {
    const double w = (d4 - d3) / ((d4 - d3) + (d5 - d6));
    return (cp + w * (B - C)).norm();
  }
  const double denom = 1.0 / (va + vb + vc);
  const double v = vb * denom, w = vc * denom;
  return (ap - v * ab - w * ac).norm();
}

// Exact length of segment [a, b] inside the closed ball B_r(c).
double segment_ball_length(const SmallVec& a, const SmallVec& b, const SmallVec& c, double r) {
  const SmallVec e = b - a, w = a - c;
  const double ee = e.squaredNorm();
  if (ee <= 0) return 0;
  const double half_p = e.dot(w);
  const double q = w.squaredNorm() - r * r;
  const double disc = half_p * half_p - ee * q;
  if (disc < 0) return 0;
  const double sq = std::sqrt(disc);
  const double t0 = std::max((-half_p - sq) / ee, 0.0);
  const double t1 = std::min((-half_p + sq) / ee, 1.0);
  return t1 > t0 ? (t1 - t0) * std::sqrt(ee) : 0;
}

// Area of triangle inside the closed ball, by longest-edge subdivision.
// Undecided leaves resolve by their centroid, so the absolute error is
// bounded by the leaf area budget.
double triangle_ball_area(const SmallVec& A, const SmallVec& B, const SmallVec& C, const SmallVec& c,
                          double r, double area, double area_floor, int depth) {
  if (dist_point_triangle(c, A, B, C) >= r) return 0;
  if ((A - c).norm() <= r && (B - c).norm() <= r && (C - c).norm() <= r) return area;
  if (depth <= 0 || area <= area_floor) {
    return ((A + B + C) / 3.0 - c).norm() <= r ? area : 0;
  }
  const double ab = (A - B).squaredNorm(), bc = (B - C).squaredNorm(), ca = (C - A).squaredNorm();
  if (ab >= bc && ab >= ca) {
    const SmallVec mid = (A + B) / 2;
    return triangle_ball_area(A, mid, C, c, r, area / 2, area_floor, depth - 1) +
           triangle_ball_area(mid, B, C, c, r, area / 2, area_floor, depth - 1);
  }
  if (bc >= ca) {
    const SmallVec mid = (B + C) / 2;
    return triangle_ball_area(A, B, mid, c, r, area / 2, area_floor, depth - 1) +
           triangle_ball_area(A, mid, C, c, r, area / 2, area_floor, depth - 1);
  }
  const SmallVec mid = (C + A) / 2;
  return triangle_ball_area(mid, B, C, c, r, area / 2, area_floor, depth - 1) +
         triangle_ball_area(A, B, mid, c, r, area / 2, area_floor, depth - 1);
}

// Per-simplex bounding data for cheap ball rejection: centroid and the
// distance to the farthest vertex.
struct SimplexBounds {
  Eigen::MatrixXd center;  // n x S
  Eigen::VectorXd radius;  // S
};

SimplexBounds simplex_bounds(const SimplicialManifold& m) {
  SimplexBounds b;
  const int n = m.ambient_dim();
  const int k = m.intrinsic_dim + 1;
  b.center.resize(n, m.simplex_count());
  b.radius.resize(m.simplex_count());
  for (Eigen::Index s = 0; s < m.simplex_count(); ++s) {
    SmallVec c = SmallVec::Zero(n);
    for (int j = 0; j < k; ++j) c += m.vertices.col(m.simplices(j, s));
    c /= k;
    double rad = 0;
    for (int j = 0; j < k; ++j) rad = std::max(rad, (m.vertices.col(m.simplices(j, s)) - c).norm());
    b.center.col(s) = c;
    b.radius[s] = rad;
  }
  return b;
}

// Measure of one simplex inside the closed ball (multiplicity not applied).
double clip_simplex_ball(const SimplicialManifold& m, Eigen::Index s, const SmallVec& c, double r) {
  const int d = m.intrinsic_dim;
  if (d == 0) {
    return (SmallVec(m.vertices.col(m.simplices(0, s))) - c).norm() <= r * (1 + 1e-12) ? 1.0 : 0.0;
  }
  if (d == 1) {
    return segment_ball_length(m.vertices.col(m.simplices(0, s)), m.vertices.col(m.simplices(1, s)), c, r);
  }
  const SmallVec A = m.vertices.col(m.simplices(0, s));
  const SmallVec B = m.vertices.col(m.simplices(1, s));
  const SmallVec C = m.vertices.col(m.simplices(2, s));
  const SmallVec ab = B - A, ac = C - A;
  const double g = ab.squaredNorm() * ac.squaredNorm() - ab.dot(ac) * ab.dot(ac);
  const double area = 0.5 * std::sqrt(std::max(g, 0.0));
  return triangle_ball_area(A, B, C, c, r, area, area * 1e-9, 40);
}

double ball_ratio_impl(const SimplicialManifold& m, const SimplexBounds& b, const SmallVec& c, double r) {
  double inside = 0;
  const double slack = r * 1e-12;
  for (Eigen::Index s = 0; s < m.simplex_count(); ++s) {
    const double gap = (b.center.col(s) - c).norm() - b.radius[s];
    if (gap > r + slack) continue;
    inside += m.multiplicity(s) * clip_simplex_ball(m, s, c, r);
  }
  return inside / (unit_ball_volume(m.intrinsic_dim) * std::pow(r, m.intrinsic_dim));
}

}  // namespace

double unit_ball_volume(int d) {
  if (d < 0) throw std::invalid_argument("unit_ball_volume: dimension must be non-negative");
  static const bool sane = [] {
    const auto omega = [](int k) { return std::pow(kPi, k / 2.0) / std::tgamma(k / 2.0 + 1.0); };
    if (std::abs(omega(0) - 1.0) > 1e-14 || std::abs(omega(1) - 2.0) > 1e-14 ||
        std::abs(omega(2) - kPi) > 1e-13 || std::abs(omega(3) - 4.0 * kPi / 3.0) > 1e-13)
      throw NumericError("unit_ball_volume: gamma-function identity check failed");
    return true;
  }();
  (void)sane;
  return std::pow(kPi, d / 2.0) / std::tgamma(d / 2.0 + 1.0);
}

double cone_density(const SimplicialManifold& m, const Eigen::VectorXd& shift) {
  if (shift.size() != m.ambient_dim()) throw std::invalid_argument("cone_density: shift dimension mismatch");
  check_ambient(m, "cone_density");
  const int d = m.intrinsic_dim;
  if (d > 2) throw std::invalid_argument("cone_density: intrinsic dimension above 2 not supported");

  const SmallVec sh = shift;
  double max_norm = 0;
  for (Eigen::Index i = 0; i < m.vertex_count(); ++i)
    max_norm = std::max(max_norm, (m.vertices.col(i) - sh).norm());
  const double eps = kEpsConeVertex * max_norm;
  for (Eigen::Index i = 0; i < m.vertex_count(); ++i)
    if ((m.vertices.col(i) - sh).norm() <= eps)
      throw SingularConeError("cone_density: mesh vertex at the cone point");

  // Per-simplex closed forms for the cone's density at its vertex:
  //   d = 0: each point contributes one ray,
  //   d = 1: a segment contributes the angle it subtends at the origin,
  //   d = 2: a triangle contributes the solid angle it subtends.
  // The density is the multiplicity-weighted total over (d+1) omega_{d+1}.
  double acc = 0;
  for (Eigen::Index s = 0; s < m.simplex_count(); ++s) {
    const double mult = m.multiplicity(s);
    if (d == 0) {
      acc += mult;
    } else if (d == 1) {
      const SmallVec a = m.vertices.col(m.simplices(0, s)) - sh;
      const SmallVec b = m.vertices.col(m.simplices(1, s)) - sh;
      // Kahan's angle formula: stable for nearly parallel and nearly opposite rays.
      const double na = a.norm(), nb = b.norm();
      const SmallVec p = a * nb - b * na;
      const SmallVec q = a * nb + b * na;
      acc += mult * 2.0 * std::atan2(p.norm(), q.norm());
    } else {
      const SmallVec v1 = m.vertices.col(m.simplices(0, s)) - sh;
      const SmallVec v2 = m.vertices.col(m.simplices(1, s)) - sh;
      const SmallVec v3 = m.vertices.col(m.simplices(2, s)) - sh;
      const double g11 = v1.squaredNorm(), g22 = v2.squaredNorm(), g33 = v3.squaredNorm();
      const double g12 = v1.dot(v2), g13 = v1.dot(v3), g23 = v2.dot(v3);
      const double det = g11 * (g22 * g33 - g23 * g23) - g12 * (g12 * g33 - g23 * g13) +
                         g13 * (g12 * g23 - g22 * g13);
      const double numer = std::sqrt(std::max(det, 0.0));
      const double l1 = std::sqrt(g11), l2 = std::sqrt(g22), l3 = std::sqrt(g33);
      const double denom = l1 * l2 * l3 + g12 * l3 + g13 * l2 + g23 * l1;
      acc += mult * std::abs(2.0 * std::atan2(numer, denom));
    }
  }
  const int cone_dim = d + 1;
  return acc / (cone_dim * unit_ball_volume(cone_dim));
}

DensityReport max_cone_density(const SimplicialManifold& m, const SearchOptions& opts) {
  if (m.simplex_count() == 0) throw std::invalid_argument("max_cone_density: empty mesh");
  auto objective = [&](const Eigen::VectorXd& x) {
    try {
      return cone_density(m, x);
    } catch (const SingularConeError&) {
      return -kInf;
    }
  };
  std::vector<Eigen::VectorXd> starts = center_starts(m, opts.max_center_starts);
  for (auto& p : box_grid_starts(m)) starts.push_back(std::move(p));

  PatternSearchOptions popt;
  popt.scale = search_scale(m, 0, 1.0);
  popt.step_tol = opts.step_tol;
  popt.max_evals = opts.max_evals;
  OptimResult best = maximize_multistart(objective, starts, popt);

  DensityReport rep;
  rep.value = best.value;
  rep.arg_center = best.x;
  rep.evaluations = best.evals;
  rep.error = opts.step_tol * diameter_hint(m);  // integrand is mesh-exact; only the search truncates
  rep.note = "cone density closed form; supremum located by compass search";
  return rep;
}

double ball_density_ratio(const SimplicialManifold& m, const Eigen::VectorXd& center, double r) {
  if (center.size() != m.ambient_dim())
    throw std::invalid_argument("ball_density_ratio: center dimension mismatch");
  if (!(r > 0)) throw std::invalid_argument("ball_density_ratio: radius must be positive");
  check_ambient(m, "ball_density_ratio");
  if (m.intrinsic_dim > 2)
    throw std::invalid_argument("ball_density_ratio: intrinsic dimension above 2 not supported");
  const SimplexBounds b = simplex_bounds(m);
  return ball_ratio_impl(m, b, SmallVec(center), r);
}

DensityReport max_density_ratio(const SimplicialManifold& m, const SearchOptions& opts) {
  if (m.simplex_count() == 0) throw std::invalid_argument("max_density_ratio: empty mesh");
  check_ambient(m, "max_density_ratio");
  if (m.intrinsic_dim > 2)
    throw std::invalid_argument("max_density_ratio: intrinsic dimension above 2 not supported");
  const int n = m.ambient_dim();
  const double diam = std::max(diameter_hint(m), 1e-9);
  const SimplexBounds bnd = simplex_bounds(m);

  // Radius grid: geometric between sqrt(scale_lo_rel) and sqrt(scale_hi_rel)
  // (clamped to [1e-3, 4]) times the diameter. The search may drift one
  // e-fold past either end; centers stay near the bounding box.
  const double r_lo = std::clamp(std::sqrt(opts.scale_lo_rel), 1e-3, 1.0) * diam;
  const double r_hi = std::clamp(std::sqrt(opts.scale_hi_rel), 1.0, 4.0) * diam;
  auto [box_lo, box_hi] = bounding_box(m);
  auto objective = [&, lo = box_lo, hi = box_hi](const Eigen::VectorXd& x) {
    if (x[n] < std::log(r_lo) - 1 || x[n] > std::log(r_hi) + 1) return -kInf;
    for (int i = 0; i < n; ++i)
      if (x[i] < lo[i] - diam || x[i] > hi[i] + diam) return -kInf;
    return ball_ratio_impl(m, bnd, SmallVec(x.head(n)), std::exp(x[n]));
  };

  std::vector<Eigen::VectorXd> starts;
  for (const auto& c : center_starts(m, opts.max_center_starts)) {
    for (int k = 0; k < opts.scale_count; ++k) {
      const double f = opts.scale_count == 1 ? 0.5 : static_cast<double>(k) / (opts.scale_count - 1);
      Eigen::VectorXd x(n + 1);
      x.head(n) = c;
      x[n] = std::log(r_lo) + f * (std::log(r_hi) - std::log(r_lo));
      starts.push_back(std::move(x));
    }
  }

  PatternSearchOptions popt;
  popt.scale = search_scale(m, 1, 1.0);  // log-radius coordinate moves in e-folds
  popt.step_tol = opts.step_tol;
  popt.max_evals = opts.max_evals;
  OptimResult best = maximize_multistart(objective, starts, popt);

  DensityReport rep;
  rep.value = best.value;
  rep.arg_center = best.x.head(n);
  rep.arg_scale = std::exp(best.x[n]);
  rep.evaluations = best.evals;
  rep.error = 2 * opts.step_tol * std::max(1.0, best.value);
  rep.note = "ball clipping exact (d <= 1) or subdivided (d = 2); supremum by compass search";
  return rep;
}

DensityReport entropy(const SimplicialManifold& m, const SearchOptions& opts) {
  if (m.simplex_count() == 0) throw std::invalid_argument("entropy: empty mesh");
  check_ambient(m, "entropy");
  const int n = m.ambient_dim();
  const int d = m.intrinsic_dim;
  const double diam = std::max(diameter_hint(m), 1e-6);
  const double diam2 = diam * diam;

  // The interior search is confined to the scale grid's span and a slightly
  // enlarged bounding box; the degenerate ends (scale_time -> 0 or inf) are
  // evaluated in closed form below, so chasing them numerically only burns
  // quadrature effort on ever-sharper kernels. Each objective evaluation also
  // runs under a fixed rule budget: a truncated integral still steers the
  // search, and the final value is re-evaluated accurately.
  const double lt_lo = std::log(opts.scale_lo_rel * diam2);
  const double lt_hi = std::log(opts.scale_hi_rel * diam2);
  QuadratureOptions search_quad;
  search_quad.max_rule_applications = 200'000;
  auto [box_lo, box_hi] = bounding_box(m);
  auto objective = [&, lo = box_lo, hi = box_hi](const Eigen::VectorXd& x) {
    if (x[n] < lt_lo || x[n] > lt_hi) return -kInf;
    for (int i = 0; i < n; ++i)
      if (x[i] < lo[i] - diam || x[i] > hi[i] + diam) return -kInf;
    GaussianWindow w;
    w.center = x.head(n);
    w.scale_time = std::exp(x[n]);
    return f_functional(m, w, opts.quad_tol, search_quad).value;
  };

  std::vector<Eigen::VectorXd> starts;
  for (const auto& c : center_starts(m, opts.max_center_starts)) {
    for (int k = 0; k < opts.scale_count; ++k) {
      const double f = opts.scale_count == 1 ? 0.5 : static_cast<double>(k) / (opts.scale_count - 1);
      Eigen::VectorXd x(n + 1);
      x.head(n) = c;
      x[n] = lt_lo + f * (lt_hi - lt_lo);
      starts.push_back(std::move(x));
    }
  }

  PatternSearchOptions popt;
  popt.scale = search_scale(m, 1, 2.0);  // log-time coordinate
  popt.step_tol = opts.step_tol;
  popt.max_evals = opts.max_evals;
  OptimResult best = maximize_multistart(objective, starts, popt);

  DensityReport rep;
  GaussianWindow best_w;
  best_w.center = best.x.head(n);
  best_w.scale_time = std::exp(best.x[n]);
  const IntegralResult refined = f_functional(m, best_w, opts.quad_tol);
  rep.value = refined.value;
  rep.arg_center = best.x.head(n);
  rep.arg_scale = best_w.scale_time;
  rep.evaluations = best.evals;
  rep.error = refined.error + opts.quad_tol + opts.step_tol;

  // Degenerate-limit suprema. For point clouds the kernel has no area decay,
  // so scale_time -> inf recovers the total multiplicity. For d >= 1 the
  // scale_time -> 0 limit is the local sheet count, detected as a small-ball
  // density ratio at each vertex and barycenter.
  if (d == 0) {
    double total = 0;
    for (Eigen::Index s = 0; s < m.simplex_count(); ++s) total += m.multiplicity(s);
    if (total >= rep.value - 1e-9) {
      rep.value = total;
      rep.boundary_flag = true;
      rep.arg_scale = 0;
      rep.note = "supremum attained only as scale_time -> infinity (total multiplicity)";
    }
  } else {
    const SimplexBounds bnd = simplex_bounds(m);
    double lim0 = 0;
    Eigen::VectorXd lim_at = Eigen::VectorXd::Zero(n);
    SmallVec cand(n);
    for (Eigen::Index s = 0; s < m.simplex_count(); ++s) {
      const double r_loc = 0.25 * longest_edge(m, s);
      if (!(r_loc > 0)) continue;
      for (int k = 0; k <= d + 1; ++k) {
        if (k <= d) {
          cand = m.vertices.col(m.simplices(k, s));
        } else {
          cand = bnd.center.col(s);
        }
        const double v = ball_ratio_impl(m, bnd, cand, r_loc);
        if (v > lim0) {
          lim0 = v;
          lim_at = cand;
        }
      }
    }
    if (lim0 >= rep.value - 1e-9) {
      rep.value = lim0;
      rep.boundary_flag = true;
      rep.arg_center = lim_at;
      rep.arg_scale = 0;
      rep.note = "supremum attained only as scale_time -> 0 (sheet multiplicity)";
    }
  }
  return rep;
}

}  // namespace gaussflow
