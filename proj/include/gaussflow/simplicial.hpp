#pragma once

// Dense simplicial d-manifolds (with multiplicity) embedded in R^n and the
// geometric operations on them: Hausdorff measure, affine normalization,
// horizontal-hyperplane slicing, vertical projection, cones over a link,
// and longest-edge refinement.
//
// Conventions:
//   * vertices are the columns of an n x V matrix,
//   * simplices are the columns of a (d+1) x S integer matrix,
//   * a 0-simplex (point) has H^0 measure equal to its multiplicity,
//   * the "height" coordinate is always the last ambient coordinate.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gaussflow/errors.hpp"

namespace gaussflow {

template <class Scalar>
using MatX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using VecX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
using MatXi = Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic>;

template <class Scalar>
struct SimplicialManifoldT {
  using Matrix = MatX<Scalar>;
  using Vector = VecX<Scalar>;

  int intrinsic_dim = 0;   // d; 0 <= d <= ambient_dim()
  Matrix vertices;         // n x V
  MatXi simplices;         // (d+1) x S, vertex indices
  Vector multiplicities;   // S, strictly positive; empty means all-ones

  int ambient_dim() const { return static_cast<int>(vertices.rows()); }
  Eigen::Index vertex_count() const { return vertices.cols(); }
  Eigen::Index simplex_count() const { return simplices.cols(); }
  bool empty() const { return simplices.cols() == 0; }

  Scalar multiplicity(Eigen::Index s) const {
    return multiplicities.size() == 0 ? Scalar(1) : multiplicities[s];
  }

  // n x (d+1) matrix of one simplex's vertex positions.
  Matrix simplex(Eigen::Index s) const {
    Matrix out(vertices.rows(), intrinsic_dim + 1);
    for (int k = 0; k <= intrinsic_dim; ++k) out.col(k) = vertices.col(simplices(k, s));
    return out;
  }
};

using SimplicialManifold = SimplicialManifoldT<double>;

// Relative non-degeneracy threshold: a d-simplex is valid when its d-volume
// exceeds eps_degen * (longest edge)^d.
inline constexpr double kEpsDegenerate = 1e-12;
// Relative vertex-at-cone-point threshold for cone constructions.
inline constexpr double kEpsConeVertex = 1e-9;
// Relative tie-break offset for vertices lying exactly on a slicing plane.
inline constexpr double kEpsSliceTie = 1e-12;

namespace detail {

template <class Scalar>
Scalar longest_edge_of(const MatX<Scalar>& verts) {
  Scalar best = 0;
  for (Eigen::Index i = 0; i < verts.cols(); ++i)
    for (Eigen::Index j = i + 1; j < verts.cols(); ++j)
      best = std::max(best, (verts.col(i) - verts.col(j)).norm());
  return best;
}

}  // namespace detail

// d-dimensional Hausdorff volume of one simplex given as an n x (d+1) matrix.
// Gram determinant form: vol = sqrt(det(E^T E)) / d! with E the edge matrix.
template <class Scalar>
Scalar simplex_volume(const MatX<Scalar>& verts) {
  const int d = static_cast<int>(verts.cols()) - 1;
  if (d == 0) return Scalar(1);
  MatX<Scalar> edges(verts.rows(), d);
  for (int k = 0; k < d; ++k) edges.col(k) = verts.col(k + 1) - verts.col(0);
  MatX<Scalar> gram = edges.transpose() * edges;
  Scalar g = gram.determinant();
  if (g <= Scalar(0)) return Scalar(0);
  Scalar fact = 1;
  for (int k = 2; k <= d; ++k) fact *= Scalar(k);
  return std::sqrt(g) / fact;
}

template <class Scalar>
Scalar simplex_volume(const SimplicialManifoldT<Scalar>& m, Eigen::Index s) {
  return simplex_volume<Scalar>(m.simplex(s));
}

template <class Scalar>
Scalar longest_edge(const SimplicialManifoldT<Scalar>& m, Eigen::Index s) {
  return detail::longest_edge_of<Scalar>(m.simplex(s));
}

// Validates index ranges, multiplicity positivity, dimension bounds, and
// per-simplex non-degeneracy. Throws std::invalid_argument on violation.
template <class Scalar>
void validate(const SimplicialManifoldT<Scalar>& m, Scalar eps_degen = Scalar(kEpsDegenerate)) {
  if (m.intrinsic_dim < 0 || m.intrinsic_dim > m.ambient_dim())
    throw std::invalid_argument("simplicial manifold: need 0 <= intrinsic_dim <= ambient_dim");
  if (m.simplices.rows() != m.intrinsic_dim + 1 && m.simplices.cols() > 0)
    throw std::invalid_argument("simplicial manifold: simplex tuple arity must be intrinsic_dim+1");
  if (m.multiplicities.size() != 0 && m.multiplicities.size() != m.simplices.cols())
    throw std::invalid_argument("simplicial manifold: multiplicity count mismatch");
  const Eigen::Index v = m.vertex_count();
  for (Eigen::Index s = 0; s < m.simplex_count(); ++s) {
    for (int k = 0; k <= m.intrinsic_dim; ++k) {
      const int idx = m.simplices(k, s);
      if (idx < 0 || idx >= v) throw std::invalid_argument("simplicial manifold: vertex index out of range");
    }
    if (m.multiplicity(s) <= Scalar(0))
      throw std::invalid_argument("simplicial manifold: multiplicities must be positive");
    if (m.intrinsic_dim >= 1) {
      const Scalar le = longest_edge(m, s);
      const Scalar vol = simplex_volume(m, s);
      if (!(vol > eps_degen * std::pow(le, Scalar(m.intrinsic_dim))))
        throw std::invalid_argument("simplicial manifold: degenerate simplex " + std::to_string(s));
    }
  }
}

// Total measure: sum of multiplicity-weighted d-volumes; point clouds sum
// their multiplicities.
template <class Scalar>
Scalar measure(const SimplicialManifoldT<Scalar>& m) {
  Scalar total = 0;
  for (Eigen::Index s = 0; s < m.simplex_count(); ++s) total += m.multiplicity(s) * simplex_volume(m, s);
  return total;
}

// x -> scale * (x - shift). Measure scales by scale^d.
template <class Scalar, class Derived>
SimplicialManifoldT<Scalar> transform(const SimplicialManifoldT<Scalar>& m,
                                      const Eigen::MatrixBase<Derived>& shift, Scalar scale) {
  if (shift.size() != m.ambient_dim())
    throw std::invalid_argument("transform: shift dimension mismatch");
  if (!(scale > Scalar(0))) throw std::invalid_argument("transform: scale must be positive");
  SimplicialManifoldT<Scalar> out = m;
  out.vertices = (m.vertices.colwise() - shift.template cast<Scalar>().eval()) * scale;
  return out;
}

template <class Scalar>
std::pair<VecX<Scalar>, VecX<Scalar>> bounding_box(const SimplicialManifoldT<Scalar>& m) {
  if (m.vertex_count() == 0) {
    return {VecX<Scalar>::Zero(m.ambient_dim()), VecX<Scalar>::Zero(m.ambient_dim())};
  }
  return {m.vertices.rowwise().minCoeff(), m.vertices.rowwise().maxCoeff()};
}

// Bounding-box diagonal; cheap stand-in for the exact diameter when sizing
// search grids and tolerances.
template <class Scalar>
Scalar diameter_hint(const SimplicialManifoldT<Scalar>& m) {
  auto [lo, hi] = bounding_box(m);
  return (hi - lo).norm();
}

// Keeps only vertices referenced by some simplex and reindexes.
template <class Scalar>
SimplicialManifoldT<Scalar> drop_unused_vertices(const SimplicialManifoldT<Scalar>& m) {
  std::vector<Eigen::Index> remap(static_cast<size_t>(m.vertex_count()), -1);
  Eigen::Index kept = 0;
  for (Eigen::Index s = 0; s < m.simplex_count(); ++s)
    for (int k = 0; k < m.simplices.rows(); ++k) {
      auto& slot = remap[static_cast<size_t>(m.simplices(k, s))];
      if (slot < 0) slot = kept++;
    }
  SimplicialManifoldT<Scalar> out;
  out.intrinsic_dim = m.intrinsic_dim;
  out.vertices.resize(m.ambient_dim(), kept);
  for (Eigen::Index i = 0; i < m.vertex_count(); ++i)
    if (remap[static_cast<size_t>(i)] >= 0) out.vertices.col(remap[static_cast<size_t>(i)]) = m.vertices.col(i);
  out.simplices.resize(m.simplices.rows(), m.simplex_count());
  for (Eigen::Index s = 0; s < m.simplex_count(); ++s)
    for (int k = 0; k < m.simplices.rows(); ++k)
      out.simplices(k, s) = static_cast<int>(remap[static_cast<size_t>(m.simplices(k, s))]);
  out.multiplicities = m.multiplicities;
  if (out.multiplicities.size() == 0 && m.simplex_count() > 0)
    out.multiplicities = VecX<Scalar>::Ones(m.simplex_count());
  return out;
}

// Disjoint union of two manifolds of equal dimensions.
template <class Scalar>
SimplicialManifoldT<Scalar> merge(const SimplicialManifoldT<Scalar>& a, const SimplicialManifoldT<Scalar>& b) {
  if (a.ambient_dim() != b.ambient_dim() || a.intrinsic_dim != b.intrinsic_dim)
    throw std::invalid_argument("merge: dimension mismatch");
  SimplicialManifoldT<Scalar> out;
  out.intrinsic_dim = a.intrinsic_dim;
  out.vertices.resize(a.ambient_dim(), a.vertex_count() + b.vertex_count());
  out.vertices << a.vertices, b.vertices;
  out.simplices.resize(a.intrinsic_dim + 1, a.simplex_count() + b.simplex_count());
  out.simplices << a.simplices, (b.simplices.array() + static_cast<int>(a.vertex_count())).matrix();
  out.multiplicities.resize(out.simplex_count());
  for (Eigen::Index s = 0; s < a.simplex_count(); ++s) out.multiplicities[s] = a.multiplicity(s);
  for (Eigen::Index s = 0; s < b.simplex_count(); ++s) out.multiplicities[a.simplex_count() + s] = b.multiplicity(s);
  return out;
}

// --------------------------------------------------------------------------
// Slicing by the horizontal hyperplane {x_n = y}.
//
// Vertices lying exactly on the plane are treated as lying at y + eps_tie
// (eps_tie = kEpsSliceTie * bounding-box height), so every cross-section is
// transverse: a d-simplex meets the plane in a (d-1)-cell spanned by its
// sign-change edge crossings. Quadrilateral sections of 3-simplices are
// split into two triangles. Output lives in R^(n-1) (height coordinate
// dropped); multiplicities are inherited; degenerate cells are discarded.
// --------------------------------------------------------------------------
template <class Scalar>
SimplicialManifoldT<Scalar> slice_by_height(const SimplicialManifoldT<Scalar>& m, Scalar y) {
  if (m.intrinsic_dim == 0)
    throw std::invalid_argument("slice_by_height: point clouds have no codimension-one sections");
  if (m.intrinsic_dim > 3)
    throw std::invalid_argument("slice_by_height: intrinsic dimension above 3 not supported");
  const int n = m.ambient_dim();
  const int d = m.intrinsic_dim;
  auto [lo, hi] = bounding_box(m);
  const Scalar range = m.vertex_count() ? hi[n - 1] - lo[n - 1] : Scalar(0);
  const Scalar eps_tie = Scalar(kEpsSliceTie) * (range > Scalar(0) ? range : Scalar(1));

  SimplicialManifoldT<Scalar> out;
  out.intrinsic_dim = d - 1;
  std::vector<VecX<Scalar>> verts;
  std::vector<std::vector<int>> cells;
  std::vector<Scalar> mults;

  VecX<Scalar> h(d + 1);
  std::vector<std::array<int, 2>> cross_edges;
  for (Eigen::Index s = 0; s < m.simplex_count(); ++s) {
    for (int k = 0; k <= d; ++k) {
      Scalar hk = m.vertices(n - 1, m.simplices(k, s)) - y;
      h[k] = (hk == Scalar(0)) ? eps_tie : hk;
    }
    cross_edges.clear();
    for (int i = 0; i <= d; ++i)
      for (int j = i + 1; j <= d; ++j)
        if (h[i] * h[j] < Scalar(0)) cross_edges.push_back({i, j});
    if (cross_edges.empty()) continue;

    auto emit_point = [&](const std::array<int, 2>& e) {
      const auto vi = m.vertices.col(m.simplices(e[0], s));
      const auto vj = m.vertices.col(m.simplices(e[1], s));
      const Scalar t = h[e[0]] / (h[e[0]] - h[e[1]]);
      VecX<Scalar> p = (vi + t * (vj - vi)).head(n - 1);
      verts.push_back(std::move(p));
      return static_cast<int>(verts.size()) - 1;
    };

    const Scalar mult = m.multiplicity(s);
    if (d == 1) {
      cells.push_back({emit_point(cross_edges[0])});
      mults.push_back(mult);
    } else if (d == 2) {
      // Transverse triangle: exactly two crossing edges.
      cells.push_back({emit_point(cross_edges[0]), emit_point(cross_edges[1])});
      mults.push_back(mult);
    } else {
      // Tetrahedron: 1-3 split gives a triangle, 2-2 split a quadrilateral.
      int pos_count = 0;
      for (int k = 0; k <= d; ++k) pos_count += h[k] > Scalar(0) ? 1 : 0;
      if (cross_edges.size() == 3) {
        cells.push_back({emit_point(cross_edges[0]), emit_point(cross_edges[1]), emit_point(cross_edges[2])});
        mults.push_back(mult);
      } else {
        // Order the quad so consecutive corners share a tetrahedron vertex:
        // with positive pair {a,b} and negative pair {c,d} the cycle is
        // ac, ad, bd, bc.
        (void)pos_count;
        std::vector<int> p, q;
        for (int k = 0; k <= d; ++k) (h[k] > Scalar(0) ? p : q).push_back(k);
        const int ac = emit_point({p[0], q[0]});
        const int ad = emit_point({p[0], q[1]});
        const int bd = emit_point({p[1], q[1]});
        const int bc = emit_point({p[1], q[0]});
        cells.push_back({ac, ad, bd});
        mults.push_back(mult);
        cells.push_back({ac, bd, bc});
        mults.push_back(mult);
      }
    }
  }

  out.vertices.resize(n - 1, static_cast<Eigen::Index>(verts.size()));
  for (size_t i = 0; i < verts.size(); ++i) out.vertices.col(static_cast<Eigen::Index>(i)) = verts[i];
  // Filter degenerate output cells before committing.
  std::vector<Eigen::Index> keep;
  for (size_t c = 0; c < cells.size(); ++c) {
    if (d - 1 == 0) {
      keep.push_back(static_cast<Eigen::Index>(c));
      continue;
    }
    MatX<Scalar> cv(n - 1, d);
    for (int k = 0; k < d; ++k) cv.col(k) = out.vertices.col(cells[c][static_cast<size_t>(k)]);
    const Scalar le = detail::longest_edge_of<Scalar>(cv);
    if (simplex_volume<Scalar>(cv) > Scalar(kEpsDegenerate) * std::pow(le, Scalar(d - 1)))
      keep.push_back(static_cast<Eigen::Index>(c));
  }
  out.simplices.resize(d, static_cast<Eigen::Index>(keep.size()));
  out.multiplicities.resize(static_cast<Eigen::Index>(keep.size()));
  for (size_t c = 0; c < keep.size(); ++c) {
    for (int k = 0; k < d; ++k) out.simplices(k, static_cast<Eigen::Index>(c)) = cells[static_cast<size_t>(keep[c])][static_cast<size_t>(k)];
    out.multiplicities[static_cast<Eigen::Index>(c)] = mults[static_cast<size_t>(keep[c])];
  }
  return drop_unused_vertices(out);
}

// --------------------------------------------------------------------------
// Vertical projection: drop the height coordinate, keep intrinsic dimension.
// Overlapping images stay as separate simplices, so multiplicity is
// represented combinatorially. Simplices whose image is degenerate
// (near-vertical) are dropped; their pre-image measure is reported.
// --------------------------------------------------------------------------
template <class Scalar>
struct ProjectionResult {
  SimplicialManifoldT<Scalar> mesh;
  Scalar dropped_measure = 0;
  Eigen::Index dropped_count = 0;
};

template <class Scalar>
ProjectionResult<Scalar> project_horizontal(const SimplicialManifoldT<Scalar>& m) {
  const int n = m.ambient_dim();
  const int d = m.intrinsic_dim;
  if (n < 1) throw std::invalid_argument("project_horizontal: no coordinate to drop");
  if (d > n - 1) throw std::invalid_argument("project_horizontal: image dimension would exceed ambient");
  ProjectionResult<Scalar> res;
  res.mesh.intrinsic_dim = d;
  res.mesh.vertices = m.vertices.topRows(n - 1);

  std::vector<Eigen::Index> keep;
  for (Eigen::Index s = 0; s < m.simplex_count(); ++s) {
    bool ok = true;
    if (d >= 1) {
      MatX<Scalar> pv(n - 1, d + 1);
      for (int k = 0; k <= d; ++k) pv.col(k) = res.mesh.vertices.col(m.simplices(k, s));
      const Scalar le = detail::longest_edge_of<Scalar>(pv);
      ok = simplex_volume<Scalar>(pv) > Scalar(kEpsDegenerate) * std::pow(le, Scalar(d)) && le > Scalar(0);
    }
    if (ok) {
      keep.push_back(s);
    } else {
      res.dropped_measure += m.multiplicity(s) * simplex_volume(m, s);
      ++res.dropped_count;
    }
  }
  res.mesh.simplices.resize(d + 1, static_cast<Eigen::Index>(keep.size()));
  res.mesh.multiplicities.resize(static_cast<Eigen::Index>(keep.size()));
  for (size_t c = 0; c < keep.size(); ++c) {
    res.mesh.simplices.col(static_cast<Eigen::Index>(c)) = m.simplices.col(keep[c]);
    res.mesh.multiplicities[static_cast<Eigen::Index>(c)] = m.multiplicity(keep[c]);
  }
  res.mesh = drop_unused_vertices(res.mesh);
  return res;
}

// --------------------------------------------------------------------------
// Lofting: connect a sequence of rings (same combinatorics, varying vertex
// positions) into a (d+1)-manifold by splitting each prism slab into d+1
// simplices. Degenerate cells (collapsed slabs) are discarded; they carry no
// measure. Shared machinery for cones, sweeps, and surfaces of revolution.
// --------------------------------------------------------------------------
template <class Scalar>
SimplicialManifoldT<Scalar> loft_rings(const std::vector<MatX<Scalar>>& rings, const MatXi& base_simplices,
                                       const VecX<Scalar>& base_mults) {
  if (rings.size() < 2) throw std::invalid_argument("loft_rings: need at least two rings");
  const Eigen::Index v = rings.front().cols();
  const int n = static_cast<int>(rings.front().rows());
  const int d = static_cast<int>(base_simplices.rows()) - 1;
  for (const auto& r : rings)
    if (r.cols() != v || r.rows() != n) throw std::invalid_argument("loft_rings: inconsistent ring shapes");

  SimplicialManifoldT<Scalar> out;
  out.intrinsic_dim = d + 1;
  const Eigen::Index levels = static_cast<Eigen::Index>(rings.size());
  out.vertices.resize(n, v * levels);
  for (Eigen::Index k = 0; k < levels; ++k) out.vertices.middleCols(k * v, v) = rings[static_cast<size_t>(k)];

  std::vector<int> cell(static_cast<size_t>(d) + 2);
  std::vector<int> flat;
  std::vector<Scalar> mults;
  for (Eigen::Index k = 0; k + 1 < levels; ++k) {
    const int base_lo = static_cast<int>(k * v);
    const int base_hi = static_cast<int>((k + 1) * v);
    for (Eigen::Index s = 0; s < base_simplices.cols(); ++s) {
      const Scalar mult = base_mults.size() ? base_mults[s] : Scalar(1);
      // Prism split: cell j takes bottom vertices 0..j and top vertices j..d.
      for (int j = 0; j <= d; ++j) {
        int c = 0;
        for (int i = 0; i <= j; ++i) cell[static_cast<size_t>(c++)] = base_lo + base_simplices(i, s);
        for (int i = j; i <= d; ++i) cell[static_cast<size_t>(c++)] = base_hi + base_simplices(i, s);
        MatX<Scalar> cv(n, d + 2);
        for (int i = 0; i < d + 2; ++i) cv.col(i) = out.vertices.col(cell[static_cast<size_t>(i)]);
        const Scalar le = detail::longest_edge_of<Scalar>(cv);
        if (le <= Scalar(0)) continue;
        if (simplex_volume<Scalar>(cv) <= Scalar(kEpsDegenerate) * std::pow(le, Scalar(d + 1))) continue;
        flat.insert(flat.end(), cell.begin(), cell.end());
        mults.push_back(mult);
      }
    }
  }
  const Eigen::Index cells = static_cast<Eigen::Index>(mults.size());
  out.simplices.resize(d + 2, cells);
  for (Eigen::Index c = 0; c < cells; ++c)
    for (int i = 0; i < d + 2; ++i) out.simplices(i, c) = flat[static_cast<size_t>(c * (d + 2) + i)];
  out.multiplicities = Eigen::Map<const VecX<Scalar>>(mults.data(), cells);
  return drop_unused_vertices(out);
}

// --------------------------------------------------------------------------
// Truncated cone over a link: the radial set {r x : x in link, r > 0}
// intersected with the ball of radius r_max, meshed by `levels` geometrically
// spaced rings; the innermost ring sits at relative radius 1e-3. A link
// vertex within kEpsConeVertex of the origin makes the cone singular.
// --------------------------------------------------------------------------
template <class Scalar>
SimplicialManifoldT<Scalar> cone_over(const SimplicialManifoldT<Scalar>& link, Scalar r_max, int levels) {
  if (!(r_max > Scalar(0))) throw std::invalid_argument("cone_over: r_max must be positive");
  if (levels < 2) throw std::invalid_argument("cone_over: need at least two rings");
  if (link.simplex_count() == 0) {
    SimplicialManifoldT<Scalar> out;
    out.intrinsic_dim = link.intrinsic_dim + 1;
    out.vertices.resize(link.ambient_dim(), 0);
    out.simplices.resize(link.intrinsic_dim + 2, 0);
    return out;
  }
  Scalar min_norm = std::numeric_limits<Scalar>::max(), max_norm = 0;
  for (Eigen::Index i = 0; i < link.vertex_count(); ++i) {
    const Scalar nn = link.vertices.col(i).norm();
    min_norm = std::min(min_norm, nn);
    max_norm = std::max(max_norm, nn);
  }
  if (min_norm < Scalar(kEpsConeVertex) * r_max)
    throw SingularConeError("cone_over: link vertex at the cone point");

  // Radial parameter grid: geometric from r_lo (innermost points near
  // 1e-3 * r_max) to r_hi (smallest-norm vertex reaches the sphere); each
  // vertex clamps its own parameter so no point leaves the ball.
  const Scalar r_hi = r_max / min_norm;
  const Scalar r_lo = Scalar(1e-3) * r_max / max_norm;
  const Scalar q = std::pow(r_hi / r_lo, Scalar(1) / Scalar(levels - 1));
  std::vector<MatX<Scalar>> rings;
  rings.reserve(static_cast<size_t>(levels));
  for (int k = 0; k < levels; ++k) {
    const Scalar r = r_lo * std::pow(q, Scalar(k));
    MatX<Scalar> ring(link.ambient_dim(), link.vertex_count());
    for (Eigen::Index i = 0; i < link.vertex_count(); ++i) {
      const Scalar cap = r_max / link.vertices.col(i).norm();
      ring.col(i) = std::min(r, cap) * link.vertices.col(i);
    }
    rings.push_back(std::move(ring));
  }
  VecX<Scalar> mults = link.multiplicities;
  if (mults.size() == 0) mults = VecX<Scalar>::Ones(link.simplex_count());
  return loft_rings<Scalar>(rings, link.simplices, mults);
}

// --------------------------------------------------------------------------
// Longest-edge bisection until every edge is at most max_edge. Flat
// subdivision, so total measure is preserved exactly; midpoints are shared
// across simplices via an edge map.
// --------------------------------------------------------------------------
template <class Scalar>
SimplicialManifoldT<Scalar> refine(const SimplicialManifoldT<Scalar>& m, Scalar max_edge) {
  if (!(max_edge > Scalar(0))) throw std::invalid_argument("refine: max_edge must be positive");
  if (m.intrinsic_dim == 0) return m;
  const int d = m.intrinsic_dim;

  std::vector<VecX<Scalar>> verts;
  verts.reserve(static_cast<size_t>(m.vertex_count()));
  for (Eigen::Index i = 0; i < m.vertex_count(); ++i) verts.push_back(m.vertices.col(i));
  std::map<std::pair<int, int>, int> midpoint;
  auto mid_index = [&](int a, int b) {
    auto key = std::minmax(a, b);
    auto it = midpoint.find(key);
    if (it != midpoint.end()) return it->second;
    verts.push_back((verts[static_cast<size_t>(a)] + verts[static_cast<size_t>(b)]) / Scalar(2));
    const int idx = static_cast<int>(verts.size()) - 1;
    midpoint.emplace(key, idx);
    return idx;
  };

  std::vector<std::vector<int>> done;
  std::vector<Scalar> done_mult;
  std::vector<std::pair<std::vector<int>, Scalar>> work;
  for (Eigen::Index s = 0; s < m.simplex_count(); ++s) {
    std::vector<int> cell(static_cast<size_t>(d) + 1);
    for (int k = 0; k <= d; ++k) cell[static_cast<size_t>(k)] = m.simplices(k, s);
    work.emplace_back(std::move(cell), m.multiplicity(s));
  }
  while (!work.empty()) {
    auto [cell, mult] = std::move(work.back());
    work.pop_back();
    int ei = 0, ej = 1;
    Scalar best = -1;
    for (int i = 0; i <= d; ++i)
      for (int j = i + 1; j <= d; ++j) {
        const Scalar len = (verts[static_cast<size_t>(cell[static_cast<size_t>(i)])] -
                            verts[static_cast<size_t>(cell[static_cast<size_t>(j)])]).norm();
        if (len > best) best = len, ei = i, ej = j;
      }
    if (best <= max_edge) {
      done.push_back(std::move(cell));
      done_mult.push_back(mult);
      continue;
    }
    const int mid = mid_index(cell[static_cast<size_t>(ei)], cell[static_cast<size_t>(ej)]);
    auto left = cell, right = cell;
    left[static_cast<size_t>(ej)] = mid;
    right[static_cast<size_t>(ei)] = mid;
    work.emplace_back(std::move(left), mult);
    work.emplace_back(std::move(right), mult);
  }

  SimplicialManifoldT<Scalar> out;
  out.intrinsic_dim = d;
  out.vertices.resize(m.ambient_dim(), static_cast<Eigen::Index>(verts.size()));
  for (size_t i = 0; i < verts.size(); ++i) out.vertices.col(static_cast<Eigen::Index>(i)) = verts[i];
  out.simplices.resize(d + 1, static_cast<Eigen::Index>(done.size()));
  out.multiplicities.resize(static_cast<Eigen::Index>(done.size()));
  for (size_t c = 0; c < done.size(); ++c) {
    for (int k = 0; k <= d; ++k) out.simplices(k, static_cast<Eigen::Index>(c)) = done[c][static_cast<size_t>(k)];
    out.multiplicities[static_cast<Eigen::Index>(c)] = done_mult[c];
  }
  return out;
}

// Free (d-1)-faces: faces incident to exactly one simplex. Columns of the
// result are sorted vertex tuples.
template <class Scalar>
MatXi boundary_faces(const SimplicialManifoldT<Scalar>& m) {
  if (m.intrinsic_dim < 1) throw std::invalid_argument("boundary_faces: need intrinsic_dim >= 1");
  const int d = m.intrinsic_dim;
  std::map<std::vector<int>, int> count;
  for (Eigen::Index s = 0; s < m.simplex_count(); ++s) {
    for (int drop = 0; drop <= d; ++drop) {
      std::vector<int> face;
      face.reserve(static_cast<size_t>(d));
      for (int k = 0; k <= d; ++k)
        if (k != drop) face.push_back(m.simplices(k, s));
      std::sort(face.begin(), face.end());
      ++count[face];
    }
  }
  std::vector<const std::vector<int>*> free_faces;
  for (const auto& [face, c] : count)
    if (c == 1) free_faces.push_back(&face);
  MatXi out(d, static_cast<Eigen::Index>(free_faces.size()));
  for (size_t c = 0; c < free_faces.size(); ++c)
    for (int k = 0; k < d; ++k) out(k, static_cast<Eigen::Index>(c)) = (*free_faces[c])[static_cast<size_t>(k)];
  return out;
}

}  // namespace gaussflow
