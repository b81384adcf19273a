#include "gaussflow/boundary_sweep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include "gaussflow/errors.hpp"
#include "gaussflow/gaussian.hpp"

namespace gaussflow {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr int kMaxAmbient = 16;
using SmallVec = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxAmbient, 1>;

double phi_prefactor(int m) { return std::pow(4.0 * kPi, -m / 2.0); }

void check_motion(const BoundaryMotion& motion) {
  if (motion.sigma.simplex_count() == 0)
    throw std::invalid_argument("boundary motion: empty boundary");
  if (motion.kind == BoundaryMotion::Kind::Translator) {
    if (motion.speed_v == 0) throw std::invalid_argument("boundary motion: zero speed");
    return;
  }
  const auto& times = motion.sample_times;
  if (times.size() < 2) throw std::invalid_argument("boundary motion: need at least two samples");
  if (times.size() != motion.sample_positions.size())
    throw std::invalid_argument("boundary motion: sample count mismatch");
  for (size_t k = 0; k < times.size(); ++k) {
    if (!(times[k] < 0)) throw std::invalid_argument("boundary motion: sample times must be negative");
    if (k > 0 && !(times[k - 1] < times[k]))
      throw std::invalid_argument("boundary motion: sample times must increase strictly");
    if (motion.sample_positions[k].cols() != motion.sigma.vertex_count())
      throw std::invalid_argument("boundary motion: sample vertex count mismatch");
    if (motion.sample_positions[k].rows() != motion.sample_positions.front().rows())
      throw std::invalid_argument("boundary motion: sample ambient dimension mismatch");
  }
}

std::pair<double, double> motion_time_range(const BoundaryMotion& motion) {
  if (motion.kind == BoundaryMotion::Kind::Translator)
    return {-std::numeric_limits<double>::infinity(), 0.0};
  return {motion.sample_times.front(), motion.sample_times.back()};
}

}  // namespace

BoundaryMotion translator_motion(SimplicialManifold sigma, double offset_a, double speed_v) {
  BoundaryMotion out;
  out.kind = BoundaryMotion::Kind::Translator;
  out.sigma = std::move(sigma);
  out.offset_a = offset_a;
  out.speed_v = speed_v;
  check_motion(out);
  validate(out.sigma);
  return out;
}

BoundaryMotion general_motion(SimplicialManifold sigma, std::vector<double> times,
                              std::vector<Eigen::MatrixXd> positions) {
  BoundaryMotion out;
  out.kind = BoundaryMotion::Kind::General;
  out.sigma = std::move(sigma);
  out.sample_times = std::move(times);
  out.sample_positions = std::move(positions);
  check_motion(out);
  return out;
}

Eigen::MatrixXd motion_positions(const BoundaryMotion& motion, double t) {
  check_motion(motion);
  if (motion.kind == BoundaryMotion::Kind::Translator) {
    const int n = motion.sigma.ambient_dim() + 1;
    Eigen::MatrixXd pos(n, motion.sigma.vertex_count());
    pos.topRows(n - 1) = motion.sigma.vertices;
    pos.row(n - 1).setConstant((motion.offset_a + t) * motion.speed_v);
    return pos;
  }
  const auto& times = motion.sample_times;
  if (t < times.front() - 1e-12 || t > times.back() + 1e-12)
    throw std::invalid_argument("motion_positions: time outside the sample range");
  const double tc = std::clamp(t, times.front(), times.back());
  const auto it = std::upper_bound(times.begin(), times.end(), tc);
  const size_t hi = std::min(static_cast<size_t>(std::max<std::ptrdiff_t>(it - times.begin(), 1)),
                             times.size() - 1);
  const size_t lo = hi - 1;
  const double w = (tc - times[lo]) / (times[hi] - times[lo]);
  return motion.sample_positions[lo] * (1 - w) + motion.sample_positions[hi] * w;
}

SimplicialManifold rescaled_boundary(const BoundaryMotion& motion, double t) {
  if (!(t < 0)) throw std::invalid_argument("rescaled_boundary: time must be negative");
  SimplicialManifold out;
  out.intrinsic_dim = motion.sigma.intrinsic_dim;
  out.vertices = motion_positions(motion, t) / std::sqrt(-t);
  out.simplices = motion.sigma.simplices;
  out.multiplicities = motion.sigma.multiplicities;
  return out;
}

SweepResult swept_phi_area(const BoundaryMotion& motion, double a, double b,
                           const SweepOptions& opts) {
  check_motion(motion);
  if (!(a < b) || !(b < 0)) throw std::invalid_argument("swept_phi_area: need a < b < 0");
  auto [t_lo, t_hi] = motion_time_range(motion);
  if (a < t_lo - 1e-12 || b > t_hi + 1e-12)
    throw std::invalid_argument("swept_phi_area: window outside the sample range");
  const SimplicialManifold& sigma = motion.sigma;
  const int d = sigma.intrinsic_dim;
  if (d > 2) throw std::invalid_argument("swept_phi_area: boundary dimension above 2 not supported");
  const Eigen::Index v_count = sigma.vertex_count();
  const Eigen::Index s_count = sigma.simplex_count();

  const double s_a = std::log(-a), s_b = std::log(-b);
  const double pre = phi_prefactor(d + 1);
  const double quad_tol = opts.tol / 4;

  SweepResult res;
  int slabs = std::max(2, opts.initial_slabs);
  for (int pass = 0; pass <= opts.max_refinements; ++pass, slabs *= 2) {
    // Shared time grid, geometric in |t| so huge windows resolve near t -> 0.
    std::vector<double> t_grid(static_cast<size_t>(slabs) + 1);
    for (int k = 0; k <= slabs; ++k)
      t_grid[static_cast<size_t>(k)] = -std::exp(s_a + (s_b - s_a) * k / slabs);
    t_grid.front() = a;
    t_grid.back() = b;

    std::vector<Eigen::MatrixXd> rings(t_grid.size());
    for (size_t k = 0; k < t_grid.size(); ++k)
      rings[k] = motion_positions(motion, t_grid[k]) / std::sqrt(-t_grid[k]);
    const int n = static_cast<int>(rings.front().rows());
    if (n > kMaxAmbient) throw std::invalid_argument("swept_phi_area: ambient dimension above 16");

    // Route one: Gaussian area of the lofted space-time mesh.
    const SimplicialManifold track =
        loft_rings<double>(rings, sigma.simplices, sigma.multiplicities);
    const IntegralResult mesh_int =
        track.simplex_count() ? phi_area(track, quad_tol, opts.quad) : IntegralResult{};

    // Route two: slab-wise integral of |velocity perp to the ring| times the
    // kernel. One combined mesh carries every slab's midpoint ring, with the
    // slab duration folded into the multiplicity, so a single adaptive pass
    // spreads effort across slabs.
    SimplicialManifold mid;
    mid.intrinsic_dim = d;
    mid.vertices.resize(n, v_count * slabs);
    mid.simplices.resize(d + 1, s_count * slabs);
    mid.multiplicities.resize(s_count * slabs);
    Eigen::MatrixXd velocity(n, v_count * slabs);
    for (int k = 0; k < slabs; ++k) {
      const double dt = t_grid[static_cast<size_t>(k) + 1] - t_grid[static_cast<size_t>(k)];
      const double t_mid = 0.5 * (t_grid[static_cast<size_t>(k)] + t_grid[static_cast<size_t>(k) + 1]);
      mid.vertices.middleCols(k * v_count, v_count) =
          motion_positions(motion, t_mid) / std::sqrt(-t_mid);
      velocity.middleCols(k * v_count, v_count) =
          (rings[static_cast<size_t>(k) + 1] - rings[static_cast<size_t>(k)]) / dt;
      for (Eigen::Index s = 0; s < s_count; ++s) {
        for (int i = 0; i <= d; ++i)
          mid.simplices(i, k * s_count + s) = sigma.simplices(i, s) + static_cast<int>(k * v_count);
        mid.multiplicities[k * s_count + s] = sigma.multiplicity(s) * dt;
      }
    }

    auto speed_perp = [&](Eigen::Index cs, const Eigen::VectorXd& x) {
      const Eigen::Index k = cs / s_count, s = cs % s_count;
      const Eigen::Index base = k * v_count;
      const int id0 = sigma.simplices(0, s);
      SmallVec w = velocity.col(base + id0);
      if (d >= 1) {
        const SmallVec v0 = mid.vertices.col(base + id0);
        if (d == 1) {
          const SmallVec e = SmallVec(mid.vertices.col(base + sigma.simplices(1, s))) - v0;
          const double g = e.squaredNorm();
          if (!(g > 0)) return 0.0;
          const SmallVec dw = SmallVec(velocity.col(base + sigma.simplices(1, s))) - w;
          w += dw * (e.dot(x - v0) / g);
          w -= e * (e.dot(w) / g);
        } else {
          const SmallVec e1 = SmallVec(mid.vertices.col(base + sigma.simplices(1, s))) - v0;
          const SmallVec e2 = SmallVec(mid.vertices.col(base + sigma.simplices(2, s))) - v0;
          const double g11 = e1.squaredNorm(), g22 = e2.squaredNorm(), g12 = e1.dot(e2);
          const double det = g11 * g22 - g12 * g12;
          if (!(det > 1e-28 * (g11 + g22) * (g11 + g22))) return 0.0;
          const SmallVec dw1 = SmallVec(velocity.col(base + sigma.simplices(1, s))) - w;
          const SmallVec dw2 = SmallVec(velocity.col(base + sigma.simplices(2, s))) - w;
          const SmallVec rel = x - v0;
          const double b1 = e1.dot(rel), b2 = e2.dot(rel);
          w += dw1 * ((g22 * b1 - g12 * b2) / det) + dw2 * ((g11 * b2 - g12 * b1) / det);
          const double c1 = e1.dot(w), c2 = e2.dot(w);
          w -= e1 * ((g22 * c1 - g12 * c2) / det) + e2 * ((g11 * c2 - g12 * c1) / det);
        }
      }
      return w.norm() * pre * std::exp(-x.squaredNorm() / 4);
    };
    const IntegralResult slab_int = integrate_mesh<double>(mid, speed_perp, quad_tol, opts.quad);

    res.mesh_route = mesh_int.value;
    res.integral_route = slab_int.value;
    res.value = mesh_int.value;
    res.error = std::abs(mesh_int.value - slab_int.value) + mesh_int.error + slab_int.error;
    res.slabs = slabs;
    if (std::abs(mesh_int.value - slab_int.value) <= opts.tol) break;
  }
  return res;
}

SimplicialManifold translator_sweep(const SimplicialManifold& sigma, double offset_a,
                                    double speed_v, const RingGridOptions& opts) {
  validate(sigma);
  if (speed_v == 0) throw std::invalid_argument("translator_sweep: zero speed");
  if (sigma.simplex_count() == 0) throw std::invalid_argument("translator_sweep: empty boundary");
  if (opts.rings < 2) throw std::invalid_argument("translator_sweep: need at least two rings");
  const int n = sigma.ambient_dim() + 1;

  double min_norm = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < sigma.vertex_count(); ++i)
    min_norm = std::min(min_norm, sigma.vertices.col(i).norm());

  // Truncation window: outside it one coordinate of (r x, (r a - 1/r) v)
  // exceeds r_cut, where the kernel is negligible. Small r is controlled by
  // the height |v|(1/r - |a| r); large r by the spatial radius (when the
  // boundary avoids the origin) or the height (when a is nonzero). A boundary
  // through the origin with a = 0 has only a polynomially decaying tail; a
  // wide fixed window stands in for it.
  const double c = opts.r_cut / std::abs(speed_v);
  const double disc = std::sqrt(c * c + 4 * std::abs(offset_a));
  const double r_min = opts.r_min > 0 ? opts.r_min : 2.0 / (c + disc);
  double r_max = opts.r_max;
  if (r_max <= 0) {
    r_max = std::numeric_limits<double>::infinity();
    if (min_norm > 0) r_max = std::min(r_max, opts.r_cut / min_norm);
    if (offset_a != 0) r_max = std::min(r_max, (c + disc) / (2 * std::abs(offset_a)));
    if (!std::isfinite(r_max)) r_max = 1e5;
  }
  if (!(r_max > r_min)) throw NumericError("translator_sweep: empty radius window");

  std::vector<Eigen::MatrixXd> rings(static_cast<size_t>(opts.rings));
  const double log_ratio = std::log(r_max / r_min);
  for (int k = 0; k < opts.rings; ++k) {
    const double r = r_min * std::exp(log_ratio * k / (opts.rings - 1));
    Eigen::MatrixXd ring(n, sigma.vertex_count());
    ring.topRows(n - 1) = r * sigma.vertices;
    ring.row(n - 1).setConstant((r * offset_a - 1 / r) * speed_v);
    rings[static_cast<size_t>(k)] = std::move(ring);
  }
  return loft_rings<double>(rings, sigma.simplices, sigma.multiplicities);
}

int root_count(double y, double offset_a, double speed_v) {
  if (speed_v == 0) throw std::invalid_argument("root_count: zero speed");
  if (offset_a == 0) {
    if (y == 0) return 0;
    return speed_v / y > 0 ? 1 : 0;
  }
  const double disc = y * y - 4 * offset_a * speed_v * speed_v;
  if (disc < 0) return 0;
  const double s = std::sqrt(disc);
  const double denom = 2 * offset_a * speed_v;
  const double r1 = (y + s) / denom, r2 = (y - s) / denom;
  if (disc == 0) return r1 > 0 ? 1 : 0;
  return (r1 > 0 ? 1 : 0) + (r2 > 0 ? 1 : 0);
}

std::vector<double> sweep_ring_radii(double y, double offset_a, double speed_v) {
  if (speed_v == 0) throw std::invalid_argument("sweep_ring_radii: zero speed");
  std::vector<double> out;
  if (offset_a == 0) {
    if (y != 0 && -speed_v / y > 0) out.push_back(-speed_v / y);
    return out;
  }
  const double disc = y * y + 4 * offset_a * speed_v * speed_v;
  if (disc < 0) return out;
  const double s = std::sqrt(disc);
  const double denom = 2 * offset_a * speed_v;
  for (double r : {(y - s) / denom, (y + s) / denom})
    if (r > 0) out.push_back(r);
  std::sort(out.begin(), out.end());
  if (out.size() == 2 && out[0] == out[1]) out.pop_back();
  return out;
}

RootCountIntegral root_count_integral(double offset_a, double speed_v) {
  if (speed_v == 0) throw std::invalid_argument("root_count_integral: zero speed");
  RootCountIntegral out;
  const double av = std::abs(speed_v);
  if (offset_a < 0) {
    out.closed_form = 1.0;
  } else if (offset_a > 0) {
    out.closed_form = std::erfc(std::sqrt(offset_a) * av);
  } else {
    out.closed_form = 0.5;
    out.linear_case = true;
  }

  std::vector<double> breaks;
  if (offset_a > 0) {
    const double kink = 2 * std::sqrt(offset_a) * av;
    if (kink < 26) {
      breaks.push_back(-kink);
      breaks.push_back(kink);
    }
  } else if (offset_a == 0) {
    breaks.push_back(0);
  }
  const double pre = phi_prefactor(1);
  const IntegralResult q = integrate_interval(
      [&](double y) { return root_count(y, offset_a, speed_v) * pre * std::exp(-y * y / 4); },
      -26.0, 26.0, 1e-9, breaks);
  out.quadrature = q.value;
  out.error = q.error;
  return out;
}

MainCalculationReport verify_main_calculation(const SimplicialManifold& sigma, double offset_a,
                                              double speed_v, const MainCalculationOptions& opts) {
  MainCalculationReport rep;
  const SimplicialManifold track = translator_sweep(sigma, offset_a, speed_v, opts.grid);
  const IntegralResult pa = phi_area(track, opts.quad_tol);
  rep.phi_S = pa.value;
  rep.phi_S_error = pa.error;

  rep.entropy_sigma = entropy(sigma, opts.search);
  rep.mcd_sigma = max_cone_density(sigma, opts.search);
  rep.theta_cone = cone_density(sigma, Eigen::VectorXd::Zero(sigma.ambient_dim()));

  const RootCountIntegral lemma = root_count_integral(offset_a, speed_v);
  rep.n_lemma = lemma.closed_form;
  rep.linear_case = lemma.linear_case;

  // Ring-count integral of the surface itself (sign convention of the track).
  rep.n_surface_closed = offset_a > 0   ? 1.0
                         : offset_a == 0 ? 0.5
                                         : std::erfc(std::sqrt(-offset_a) * std::abs(speed_v));
  {
    std::vector<double> breaks;
    if (offset_a < 0) {
      const double kink = -2 * std::sqrt(-offset_a) * std::abs(speed_v) *
                          (speed_v > 0 ? 1.0 : -1.0);
      if (std::abs(kink) < 26) breaks.push_back(kink);
    } else if (offset_a == 0) {
      breaks.push_back(0);
    }
    const double pre = phi_prefactor(1);
    const IntegralResult q = integrate_interval(
        [&](double y) {
          return static_cast<double>(sweep_ring_radii(y, offset_a, speed_v).size()) * pre *
                 std::exp(-y * y / 4);
        },
        -26.0, 26.0, 1e-9, breaks);
    rep.n_surface_quad = q.value;
  }

  rep.bound_chain = rep.theta_cone + rep.entropy_sigma.value * rep.n_surface_closed;
  rep.bound_cone = rep.theta_cone + rep.entropy_sigma.value;
  rep.bound_mcd = rep.mcd_sigma.value + rep.entropy_sigma.value;
  rep.margin_chain = rep.bound_chain - rep.phi_S;
  rep.margin_cone = rep.bound_cone - rep.phi_S;
  rep.margin_mcd = rep.bound_mcd - rep.phi_S;
  rep.tol = rep.phi_S_error + rep.entropy_sigma.error + rep.mcd_sigma.error + lemma.error + 1e-4;
  return rep;
}

}  // namespace gaussflow
