#pragma once

// Globally adaptive quadrature over simplicial meshes.
//
// Fixed barycentric rules (degree >= 4 in each supported dimension) are
// paired with longest-edge bisection: every leaf's error share is the
// difference between its rule value and the two-child refinement, and the
// worst leaf is refined until the summed shares drop below the requested
// absolute tolerance or the evaluation budget runs out. The achieved error
// estimate is always reported; callers decide whether to treat a missed
// tolerance as fatal.

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>
#include <stdexcept>
#include <vector>

#include "gaussflow/simplicial.hpp"

namespace gaussflow {

struct QuadratureOptions {
  std::int64_t max_rule_applications = 4'000'000;
  double min_edge_rel = 1e-13;  // freeze leaves once edges shrink below this times the seed edge
};

struct IntegralResult {
  double value = 0;
  double error = 0;  // achieved absolute error estimate
  std::int64_t rule_applications = 0;
};

namespace detail {

// Barycentric nodes ((d+1) x K) and weights (K, summing to 1).
template <class Scalar>
struct SimplexRule {
  MatX<Scalar> nodes;
  VecX<Scalar> weights;
};

template <class Scalar>
const SimplexRule<Scalar>& simplex_rule(int d) {
  static const std::array<SimplexRule<Scalar>, 4> rules = [] {
    std::array<SimplexRule<Scalar>, 4> r;
    // d = 0: point evaluation.
    r[0].nodes = MatX<Scalar>::Ones(1, 1);
    r[0].weights = VecX<Scalar>::Ones(1);
    // d = 1: three-point Gauss-Legendre, degree 5.
    {
      const Scalar g = std::sqrt(Scalar(3) / Scalar(5)) / Scalar(2);
      r[1].nodes.resize(2, 3);
      r[1].weights.resize(3);
      const Scalar nodes1[3] = {Scalar(0.5) - g, Scalar(0.5), Scalar(0.5) + g};
      const Scalar w1[3] = {Scalar(5) / 18, Scalar(8) / 18, Scalar(5) / 18};
      for (int k = 0; k < 3; ++k) {
        r[1].nodes(0, k) = Scalar(1) - nodes1[k];
        r[1].nodes(1, k) = nodes1[k];
        r[1].weights[k] = w1[k];
      }
    }
    // d = 2: six-point symmetric rule, degree 4.
    {
      const Scalar a1 = Scalar(0.816847572980459), b1 = Scalar(0.091576213509771);
      const Scalar a2 = Scalar(0.108103018168070), b2 = Scalar(0.445948490915965);
      const Scalar w1 = Scalar(0.109951743655322), w2 = Scalar(0.223381589678011);
      r[2].nodes.resize(3, 6);
      r[2].weights.resize(6);
      int c = 0;
      auto add = [&](Scalar a, Scalar b, Scalar w) {
        const Scalar bary[3] = {a, b, b};
        for (int rot = 0; rot < 3; ++rot) {
          for (int k = 0; k < 3; ++k) r[2].nodes(k, c) = bary[(k + rot) % 3];
          r[2].weights[c++] = w;
        }
      };
      add(a1, b1, w1);
      add(a2, b2, w2);
    }
    // d = 3: fourteen-point symmetric rule, degree 5.
    {
      r[3].nodes.resize(4, 14);
      r[3].weights.resize(14);
      int c = 0;
      auto add4 = [&](Scalar a, Scalar w) {
        // vertex-type orbit: (a, b, b, b) with b = (1-a)/3
        const Scalar b = (Scalar(1) - a) / Scalar(3);
        for (int pos = 0; pos < 4; ++pos) {
          for (int k = 0; k < 4; ++k) r[3].nodes(k, c) = (k == pos) ? a : b;
          r[3].weights[c++] = w;
        }
      };
      auto add6 = [&](Scalar a, Scalar w) {
        // edge-type orbit: (a, a, b, b) with b = 1/2 - a
        const Scalar b = Scalar(0.5) - a;
        for (int i = 0; i < 4; ++i)
          for (int j = i + 1; j < 4; ++j) {
            for (int k = 0; k < 4; ++k) r[3].nodes(k, c) = (k == i || k == j) ? a : b;
            r[3].weights[c++] = w;
          }
      };
      add4(Scalar(0.0673422422100983), Scalar(0.1126879257180162));
      add4(Scalar(0.7217942490673264), Scalar(0.0734930431163619));
      add6(Scalar(0.0455037041256494), Scalar(0.0425460207770812));
    }
    return r;
  }();
  if (d < 0 || d > 3) throw std::invalid_argument("simplex_rule: dimension not supported");
  return rules[static_cast<size_t>(d)];
}

}  // namespace detail

// Integrates f(simplex_index, point) over a mesh. The simplex index refers to
// the original mesh simplex that a refined leaf descends from, so integrands
// may use cached per-simplex data (tangent frames, Jacobians).
template <class Scalar, class F>
IntegralResult integrate_mesh(const SimplicialManifoldT<Scalar>& m, F&& f, Scalar tol,
                              const QuadratureOptions& opts = {}) {
  if (!(tol > Scalar(0))) throw std::invalid_argument("integrate_mesh: tolerance must be positive");
  const int d = m.intrinsic_dim;
  IntegralResult res;
  if (m.simplex_count() == 0) return res;
  if (d == 0) {
    double total = 0;
    for (Eigen::Index s = 0; s < m.simplex_count(); ++s) {
      total += static_cast<double>(m.multiplicity(s)) *
               static_cast<double>(f(s, VecX<Scalar>(m.vertices.col(m.simplices(0, s)))));
      ++res.rule_applications;
    }
    res.value = total;
    return res;
  }

  const auto& rule = detail::simplex_rule<Scalar>(d);
  VecX<Scalar> node_buf(m.ambient_dim());
  auto apply_rule = [&](const MatX<Scalar>& verts, Eigen::Index owner) {
    const Scalar vol = simplex_volume<Scalar>(verts);
    if (vol <= Scalar(0)) return Scalar(0);
    Scalar acc = 0;
    for (Eigen::Index q = 0; q < rule.weights.size(); ++q) {
      node_buf.noalias() = verts * rule.nodes.col(q);
      acc += rule.weights[q] * f(owner, node_buf);
    }
    return vol * acc;
  };
  auto split = [&](const MatX<Scalar>& verts) {
    int ei = 0, ej = 1;
    Scalar best = -1;
    for (int i = 0; i <= d; ++i)
      for (int j = i + 1; j <= d; ++j) {
        const Scalar len = (verts.col(i) - verts.col(j)).norm();
        if (len > best) best = len, ei = i, ej = j;
      }
    MatX<Scalar> left = verts, right = verts;
    const VecX<Scalar> mid = (verts.col(ei) + verts.col(ej)) / Scalar(2);
    left.col(ej) = mid;
    right.col(ei) = mid;
    return std::make_pair(std::move(left), std::move(right));
  };

  struct Leaf {
    double est;
    std::int64_t seq;
    Eigen::Index owner;
    double value;
    double scale;  // multiplicity
    MatX<Scalar> verts;
  };
  struct Cmp {
    bool operator()(const Leaf& a, const Leaf& b) const {
      return a.est != b.est ? a.est < b.est : a.seq > b.seq;
    }
  };
  std::priority_queue<Leaf, std::vector<Leaf>, Cmp> heap;

  double value = 0, live_err = 0, frozen_err = 0;
  std::int64_t seq = 0;
  Scalar seed_edge = 0;
  for (Eigen::Index s = 0; s < m.simplex_count(); ++s)
    seed_edge = std::max(seed_edge, longest_edge(m, s));
  const Scalar edge_floor = seed_edge * Scalar(opts.min_edge_rel);

  auto push_split = [&](MatX<Scalar> verts, Eigen::Index owner, double scale, double parent_value) {
    auto [left, right] = split(verts);
    const double lv = scale * static_cast<double>(apply_rule(left, owner));
    const double rv = scale * static_cast<double>(apply_rule(right, owner));
    res.rule_applications += 2;
    const double err = std::abs(lv + rv - parent_value);
    value += lv + rv - parent_value;
    if (detail::longest_edge_of<Scalar>(left) < edge_floor) {
      frozen_err += err;
      return;
    }
    live_err += err;
    heap.push(Leaf{err / 2, seq++, owner, lv, scale, std::move(left)});
    heap.push(Leaf{err / 2, seq++, owner, rv, scale, std::move(right)});
  };

  for (Eigen::Index s = 0; s < m.simplex_count(); ++s) {
    const double scale = static_cast<double>(m.multiplicity(s));
    MatX<Scalar> verts = m.simplex(s);
    const double base = scale * static_cast<double>(apply_rule(verts, s));
    ++res.rule_applications;
    value += base;
    push_split(std::move(verts), s, scale, base);
  }

  while (live_err + frozen_err > static_cast<double>(tol) && !heap.empty() &&
         res.rule_applications < opts.max_rule_applications) {
    Leaf leaf = heap.top();
    heap.pop();
    live_err = std::max(live_err - leaf.est, 0.0);
    push_split(std::move(leaf.verts), leaf.owner, leaf.scale, leaf.value);
  }

  res.value = value;
  res.error = live_err + frozen_err;
  return res;
}

// Adaptive 1-D integral over [a, b] with optional interior breakpoints
// (known kinks); implemented as a 1-simplex mesh in R^1.
template <class F>
IntegralResult integrate_interval(F&& f, double a, double b, double tol,
                                  const std::vector<double>& breakpoints = {},
                                  const QuadratureOptions& opts = {}) {
  if (!(b > a)) throw std::invalid_argument("integrate_interval: need a < b");
  std::vector<double> cuts{a, b};
  for (double c : breakpoints)
    if (c > a && c < b) cuts.push_back(c);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  SimplicialManifold mesh;
  mesh.intrinsic_dim = 1;
  mesh.vertices.resize(1, static_cast<Eigen::Index>(cuts.size()));
  for (size_t i = 0; i < cuts.size(); ++i) mesh.vertices(0, static_cast<Eigen::Index>(i)) = cuts[i];
  mesh.simplices.resize(2, static_cast<Eigen::Index>(cuts.size()) - 1);
  for (Eigen::Index s = 0; s + 1 < static_cast<Eigen::Index>(cuts.size()); ++s) {
    mesh.simplices(0, s) = static_cast<int>(s);
    mesh.simplices(1, s) = static_cast<int>(s + 1);
  }
  mesh.multiplicities = Eigen::VectorXd::Ones(mesh.simplex_count());
  return integrate_mesh<double>(mesh, [&](Eigen::Index, const Eigen::VectorXd& x) { return f(x[0]); },
                                tol, opts);
}

}  // namespace gaussflow
