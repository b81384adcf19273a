#include "gaussflow/translators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "gaussflow/errors.hpp"

namespace gaussflow {

namespace {

constexpr double kPi = 3.14159265358979323846;

// ln cosh(w) without overflow.
double log_cosh(double w) {
  const double aw = std::abs(w);
  return aw + std::log1p(std::exp(-2 * aw)) - std::log(2.0);
}

struct ProfileRhs {
  int m;
  double v;
  Eigen::Vector2d operator()(double r, const Eigen::Vector2d& s) const {
    const double p = s[1];
    return {p, (1 + p * p) * (v - (m - 1) * p / r)};
  }
};

}  // namespace

SimplicialManifold grim_reaper(double v, double y_cut, int res) {
  if (!(v > 0)) throw std::invalid_argument("grim_reaper: speed must be positive");
  if (!(y_cut > 0)) throw std::invalid_argument("grim_reaper: cut height must be positive");
  if (v * y_cut > 300) throw std::invalid_argument("grim_reaper: cut height too large for the profile width");
  if (res < 8) throw std::invalid_argument("grim_reaper: need at least 8 vertices");

  // Arc-length parametrization: x(s) = atan(sinh(v s)) / v, y(s) = ln cosh(v s) / v.
  // y = y_cut at w = v s_max with cosh(w) = exp(v y_cut).
  const double vy = v * y_cut;
  const double w_max = vy + std::log1p(std::sqrt(1 - std::exp(-2 * vy)));

  SimplicialManifold out;
  out.intrinsic_dim = 1;
  out.vertices.resize(2, res);
  for (int i = 0; i < res; ++i) {
    const double w = -w_max + 2 * w_max * i / (res - 1);
    out.vertices(0, i) = std::atan(std::sinh(w)) / v;
    out.vertices(1, i) = log_cosh(w) / v;
  }
  out.vertices(1, 0) = y_cut;
  out.vertices(1, res - 1) = y_cut;
  out.simplices.resize(2, res - 1);
  for (int i = 0; i + 1 < res; ++i) out.simplices.col(i) << i, i + 1;
  out.multiplicities = Eigen::VectorXd::Ones(res - 1);
  validate(out);
  return out;
}

BowlProfile bowl_profile(int m, double v, double r_max, double tol, double max_step) {
  if (m < 2) throw std::invalid_argument("bowl_profile: need rotation dimension at least 2");
  if (!(v > 0)) throw std::invalid_argument("bowl_profile: speed must be positive");
  if (!(r_max > 0)) throw std::invalid_argument("bowl_profile: radius must be positive");
  if (!(tol > 0)) throw std::invalid_argument("bowl_profile: tolerance must be positive");
  if (max_step <= 0) max_step = r_max / 64;

  BowlProfile prof;
  prof.m = m;
  prof.v = v;

  // Series start u = alpha r^2 + beta r^4 resolves the u'/r singularity.
  const double alpha = v / (2 * m);
  const double beta = 2 * alpha * alpha * alpha / (m + 2);
  const double r0 = std::min(1e-3, r_max / 16);
  std::vector<double> rs{0.0, r0};
  std::vector<double> us{0.0, alpha * r0 * r0 + beta * r0 * r0 * r0 * r0};
  std::vector<double> ps{0.0, 2 * alpha * r0 + 4 * beta * r0 * r0 * r0};

  // Cash-Karp embedded 4(5) pair with standard step control.
  const ProfileRhs rhs{m, v};
  double r = r0;
  Eigen::Vector2d y(us.back(), ps.back());
  double h = std::min(max_step, r_max / 1024);
  for (int steps = 0; r < r_max; ++steps) {
    if (steps > 200000) throw NumericError("bowl_profile: step budget exhausted");
    h = std::min({h, max_step, r_max - r});
    const Eigen::Vector2d k1 = rhs(r, y);
    const Eigen::Vector2d k2 = rhs(r + h / 5, y + h * (k1 / 5));
    const Eigen::Vector2d k3 = rhs(r + 3 * h / 10, y + h * (3 * k1 / 40 + 9 * k2 / 40));
    const Eigen::Vector2d k4 = rhs(r + 3 * h / 5, y + h * (3 * k1 / 10 - 9 * k2 / 10 + 6 * k3 / 5));
    const Eigen::Vector2d k5 =
        rhs(r + h, y + h * (-11 * k1 / 54 + 5 * k2 / 2 - 70 * k3 / 27 + 35 * k4 / 27));
    const Eigen::Vector2d k6 =
        rhs(r + 7 * h / 8, y + h * (1631 * k1 / 55296 + 175 * k2 / 512 + 575 * k3 / 13824 +
                                    44275 * k4 / 110592 + 253 * k5 / 4096));
    const Eigen::Vector2d y5 =
        y + h * (37 * k1 / 378 + 250 * k3 / 621 + 125 * k4 / 594 + 512 * k6 / 1771);
    const Eigen::Vector2d y4 =
        y + h * (2825 * k1 / 27648 + 18575 * k3 / 48384 + 13525 * k4 / 55296 + 277 * k5 / 14336 +
                 k6 / 4);
    const double err = (y5 - y4).cwiseAbs().maxCoeff();
    const double scale = tol * (1 + y.cwiseAbs().maxCoeff());
    if (err <= scale) {
      r += h;
      y = y5;
      rs.push_back(r);
      us.push_back(y[0]);
      ps.push_back(y[1]);
    }
    const double grow = err > 0 ? 0.9 * std::pow(scale / err, 0.2) : 5.0;
    h *= std::clamp(grow, 0.2, 5.0);
    if (!(h > 1e-14 * r_max)) throw NumericError("bowl_profile: step size underflow");
  }

  prof.r = Eigen::Map<Eigen::VectorXd>(rs.data(), static_cast<Eigen::Index>(rs.size()));
  prof.u = Eigen::Map<Eigen::VectorXd>(us.data(), static_cast<Eigen::Index>(us.size()));
  prof.du = Eigen::Map<Eigen::VectorXd>(ps.data(), static_cast<Eigen::Index>(ps.size()));
  return prof;
}

namespace {

// Node interval lookup shared by the two evaluators; the first interval is
// the series range.
Eigen::Index profile_interval(const BowlProfile& prof, double r) {
  if (prof.r.size() < 2 || r < prof.r[0] || r > prof.r[prof.r.size() - 1] * (1 + 1e-12))
    throw std::invalid_argument("bowl profile evaluation: radius outside the profile range");
  const double* begin = prof.r.data();
  const double* end = begin + prof.r.size();
  const Eigen::Index i = std::upper_bound(begin, end, r) - begin;
  return std::clamp<Eigen::Index>(i, 1, prof.r.size() - 1) - 1;
}

}  // namespace

double bowl_profile_height(const BowlProfile& prof, double r) {
  const Eigen::Index i = profile_interval(prof, r);
  if (i == 0) {
    const double alpha = prof.v / (2 * prof.m);
    const double beta = 2 * alpha * alpha * alpha / (prof.m + 2);
    return alpha * r * r + beta * r * r * r * r;
  }
  const double h = prof.r[i + 1] - prof.r[i];
  const double t = (r - prof.r[i]) / h;
  const double t2 = t * t, t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * prof.u[i] + (t3 - 2 * t2 + t) * h * prof.du[i] +
         (-2 * t3 + 3 * t2) * prof.u[i + 1] + (t3 - t2) * h * prof.du[i + 1];
}

double bowl_profile_slope(const BowlProfile& prof, double r) {
  const Eigen::Index i = profile_interval(prof, r);
  if (i == 0) {
    const double alpha = prof.v / (2 * prof.m);
    const double beta = 2 * alpha * alpha * alpha / (prof.m + 2);
    return 2 * alpha * r + 4 * beta * r * r * r;
  }
  const double t = (r - prof.r[i]) / (prof.r[i + 1] - prof.r[i]);
  return (1 - t) * prof.du[i] + t * prof.du[i + 1];
}

SimplicialManifold bowl_cap(int m, double v, double r_max, int res) {
  if (m != 2) throw std::invalid_argument("bowl_cap: only the surface case m = 2 is meshed");
  if (res < 8) throw std::invalid_argument("bowl_cap: need at least 8 stations");
  const BowlProfile prof = bowl_profile(m, v, r_max, 1e-10, r_max / std::max(64, 2 * res));

  // Stations uniform in profile arc length; station 0 is the apex.
  const Eigen::Index nodes = prof.r.size();
  Eigen::VectorXd arc(nodes);
  arc[0] = 0;
  for (Eigen::Index i = 1; i < nodes; ++i) {
    const double dr = prof.r[i] - prof.r[i - 1];
    const double mid = 0.5 * (prof.du[i] + prof.du[i - 1]);
    arc[i] = arc[i - 1] + dr * std::sqrt(1 + mid * mid);
  }
  Eigen::VectorXd station_r(res + 1);
  station_r[0] = 0;
  station_r[res] = r_max;
  for (int j = 1; j < res; ++j) {
    const double target = arc[nodes - 1] * j / res;
    const double* begin = arc.data();
    const Eigen::Index i =
        std::clamp<Eigen::Index>(std::upper_bound(begin, begin + nodes, target) - begin, 1,
                                 nodes - 1) -
        1;
    const double t = (target - arc[i]) / (arc[i + 1] - arc[i]);
    station_r[j] = prof.r[i] + t * (prof.r[i + 1] - prof.r[i]);
  }

  const int sectors = 2 * res;
  const double boundary_height = bowl_profile_height(prof, r_max);
  SimplicialManifold out;
  out.intrinsic_dim = 2;
  out.vertices.resize(3, 1 + static_cast<Eigen::Index>(res) * sectors);
  out.vertices.col(0).setZero();
  for (int j = 1; j <= res; ++j) {
    const double r = station_r[j];
    const double u = j == res ? boundary_height : bowl_profile_height(prof, r);
    for (int i = 0; i < sectors; ++i) {
      const double th = 2 * kPi * i / sectors;
      out.vertices.col(1 + static_cast<Eigen::Index>(j - 1) * sectors + i)
          << r * std::cos(th), r * std::sin(th), u;
    }
  }

  const auto ring = [sectors](int j, int i) { return 1 + (j - 1) * sectors + (i % sectors); };
  out.simplices.resize(3, sectors + 2 * static_cast<Eigen::Index>(res - 1) * sectors);
  Eigen::Index s = 0;
  for (int i = 0; i < sectors; ++i) out.simplices.col(s++) << 0, ring(1, i), ring(1, i + 1);
  for (int j = 1; j < res; ++j)
    for (int i = 0; i < sectors; ++i) {
      out.simplices.col(s++) << ring(j, i), ring(j + 1, i), ring(j + 1, i + 1);
      out.simplices.col(s++) << ring(j, i), ring(j + 1, i + 1), ring(j, i + 1);
    }
  out.multiplicities = Eigen::VectorXd::Ones(out.simplices.cols());
  validate(out);
  return out;
}

std::vector<BoundaryGroup> boundary_components(const SimplicialManifold& m, double plane_tol) {
  validate(m);
  const int d = m.intrinsic_dim;
  if (d < 1) throw std::invalid_argument("boundary_components: point clouds have no boundary faces");
  const int n = m.ambient_dim();

  if (plane_tol <= 0) {
    const Eigen::VectorXd lo = m.vertices.rowwise().minCoeff();
    const Eigen::VectorXd hi = m.vertices.rowwise().maxCoeff();
    plane_tol = 1e-8 * (hi - lo).norm();
  }

  // Free faces: facets owned by exactly one simplex.
  std::map<std::vector<int>, std::pair<int, Eigen::Index>> faces;
  for (Eigen::Index s = 0; s < m.simplex_count(); ++s) {
    for (int skip = 0; skip <= d; ++skip) {
      std::vector<int> key;
      key.reserve(static_cast<size_t>(d));
      for (int i = 0; i <= d; ++i)
        if (i != skip) key.push_back(m.simplices(i, s));
      std::sort(key.begin(), key.end());
      auto it = faces.emplace(std::move(key), std::make_pair(0, s)).first;
      it->second.first += 1;
    }
  }
  std::vector<const std::vector<int>*> boundary;
  std::vector<Eigen::Index> owner;
  for (const auto& [key, info] : faces)
    if (info.first == 1) {
      boundary.push_back(&key);
      owner.push_back(info.second);
    }
  if (boundary.empty()) throw std::invalid_argument("boundary_components: the mesh has no boundary");

  // Connected components among the boundary faces via shared vertices.
  std::vector<int> parent(boundary.size());
  std::iota(parent.begin(), parent.end(), 0);
  const auto find = [&parent](int a) {
    while (parent[static_cast<size_t>(a)] != a) {
      parent[static_cast<size_t>(a)] = parent[static_cast<size_t>(parent[static_cast<size_t>(a)])];
      a = parent[static_cast<size_t>(a)];
    }
    return a;
  };
  std::map<int, int> first_face_of_vertex;
  for (size_t f = 0; f < boundary.size(); ++f)
    for (int vtx : *boundary[f]) {
      auto [it, fresh] = first_face_of_vertex.emplace(vtx, static_cast<int>(f));
      if (!fresh) parent[static_cast<size_t>(find(static_cast<int>(f)))] = find(it->second);
    }

  struct Component {
    std::vector<size_t> face_ids;
    double height = 0;
  };
  std::map<int, Component> comps;
  for (size_t f = 0; f < boundary.size(); ++f)
    comps[find(static_cast<int>(f))].face_ids.push_back(f);

  // Each component must lie in one horizontal hyperplane.
  std::vector<Component> ordered;
  for (auto& [root, comp] : comps) {
    double h_lo = std::numeric_limits<double>::infinity(), h_hi = -h_lo;
    for (size_t f : comp.face_ids)
      for (int vtx : *boundary[f]) {
        h_lo = std::min(h_lo, m.vertices(n - 1, vtx));
        h_hi = std::max(h_hi, m.vertices(n - 1, vtx));
      }
    if (h_hi - h_lo > plane_tol)
      throw UnsupportedBoundaryError(
          "boundary_components: a boundary component spans heights beyond the plane tolerance");
    comp.height = 0.5 * (h_lo + h_hi);
    ordered.push_back(std::move(comp));
  }
  std::sort(ordered.begin(), ordered.end(),
            [](const Component& a, const Component& b) { return a.height < b.height; });

  // Merge components sharing one plane into a single boundary group.
  std::vector<BoundaryGroup> groups;
  for (size_t c = 0; c < ordered.size();) {
    size_t e = c + 1;
    while (e < ordered.size() && ordered[e].height - ordered[c].height <= plane_tol) ++e;
    std::vector<size_t> face_ids;
    double height_sum = 0;
    for (size_t k = c; k < e; ++k) {
      face_ids.insert(face_ids.end(), ordered[k].face_ids.begin(), ordered[k].face_ids.end());
      height_sum += ordered[k].height;
    }
    BoundaryGroup group;
    group.height = height_sum / static_cast<double>(e - c);
    group.component_count = static_cast<int>(e - c);
    group.sigma.intrinsic_dim = d - 1;
    group.sigma.vertices = m.vertices.topRows(n - 1);
    group.sigma.simplices.resize(std::max(d, 1), static_cast<Eigen::Index>(face_ids.size()));
    group.sigma.multiplicities.resize(static_cast<Eigen::Index>(face_ids.size()));
    for (size_t k = 0; k < face_ids.size(); ++k) {
      for (int i = 0; i < d; ++i)
        group.sigma.simplices(i, static_cast<Eigen::Index>(k)) = (*boundary[face_ids[k]])[static_cast<size_t>(i)];
      group.sigma.multiplicities[static_cast<Eigen::Index>(k)] = m.multiplicity(owner[face_ids[k]]);
    }
    group.sigma = drop_unused_vertices(group.sigma);
    validate(group.sigma);
    groups.push_back(std::move(group));
    c = e;
  }
  return groups;
}

EntropyBoundReport verify_entropy_bound(const SimplicialManifold& m,
                                        const EntropyBoundConfig& cfg) {
  EntropyBoundReport rep;
  const auto groups = boundary_components(m, cfg.plane_tol);
  rep.entropy_M = entropy(m, cfg.search);
  rep.tol = rep.entropy_M.error;

  for (const auto& group : groups) {
    BoundaryTermReport term;
    term.height = group.height;
    term.component_count = group.component_count;
    term.entropy = entropy(group.sigma, cfg.search);
    term.mcd = max_cone_density(group.sigma, cfg.search);
    term.mdr = max_density_ratio(group.sigma, cfg.search);
    rep.bound += term.entropy.value + term.mcd.value;
    rep.bound_coeff2 += 2 * term.entropy.value + term.mcd.value;
    rep.bound_mdr += term.mdr.value + term.mcd.value;
    rep.tol += term.entropy.error + term.mcd.error + term.mdr.error;
    rep.components.push_back(std::move(term));
  }

  const int dim = m.intrinsic_dim;
  rep.convex_bound = static_cast<double>(groups.size()) *
                     (1 + dim * unit_ball_volume(dim) / unit_ball_volume(dim - 1));
  rep.margin = rep.bound - rep.entropy_M.value;
  rep.margin_mdr = rep.bound_mdr - rep.entropy_M.value;
  rep.margin_convex = rep.convex_bound - rep.entropy_M.value;
  return rep;
}

}  // namespace gaussflow
