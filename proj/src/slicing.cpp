#include "gaussflow/slicing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "gaussflow/gaussian.hpp"

namespace gaussflow {

HeightGeometry height_geometry(const SimplicialManifold& m, Eigen::Index s) {
  if (s < 0 || s >= m.simplex_count()) throw std::invalid_argument("height_geometry: simplex index");
  const int d = m.intrinsic_dim;
  if (d < 1) throw std::invalid_argument("height_geometry: point clouds have no height geometry");
  const int n = m.ambient_dim();

  Eigen::MatrixXd edges(n, d);
  for (int j = 0; j < d; ++j)
    edges.col(j) = m.vertices.col(m.simplices(j + 1, s)) - m.vertices.col(m.simplices(0, s));
  const Eigen::MatrixXd gram = edges.transpose() * edges;
  const Eigen::VectorXd eta = edges.row(n - 1).transpose();  // height increments along edges

  Eigen::LDLT<Eigen::MatrixXd> solver(gram);
  HeightGeometry out;
  if (solver.info() != Eigen::Success) return out;
  // |grad_S h|^2 = eta^T G^{-1} eta; the determinant lemma then gives
  // J = sqrt(det(G - eta eta^T) / det G) = sqrt(1 - |grad_S h|^2).
  const double g2 = eta.dot(solver.solve(eta));
  if (!std::isfinite(g2)) return out;
  const double clamped = std::clamp(g2, 0.0, 1.0);
  out.grad_norm = std::sqrt(clamped);
  out.jacobian = std::sqrt(1.0 - clamped);
  return out;
}

SlicingTerms slicing_terms(const SimplicialManifold& m,
                           const std::function<double(const Eigen::VectorXd&)>& f,
                           const std::function<double(double)>& g,
                           const SlicingOptions& opts) {
  if (m.intrinsic_dim < 1)
    throw std::invalid_argument("slicing_terms: intrinsic dimension must be at least 1");
  if (m.ambient_dim() < 2)
    throw std::invalid_argument("slicing_terms: need a horizontal factor and a height");
  if (!f || !g) throw std::invalid_argument("slicing_terms: f and g must be callable");
  const int n = m.ambient_dim();

  auto f_at = [&](const Eigen::VectorXd& p) {
    const double v = f(p);
    if (!(v >= 0)) throw std::invalid_argument("slicing_terms: negative f sample");
    return v;
  };
  auto g_at = [&](double y) {
    const double v = g(y);
    if (!(v >= 0)) throw std::invalid_argument("slicing_terms: negative g sample");
    return v;
  };

  SlicingTerms out;

  const IntegralResult lhs = integrate_mesh<double>(
      m,
      [&](Eigen::Index, const Eigen::VectorXd& x) { return f_at(x.head(n - 1)) * g_at(x[n - 1]); },
      opts.tol, opts.quad);
  out.lhs = lhs.value;
  out.lhs_error = lhs.error;

  // Area formula per flat simplex: the projection scales its measure by the
  // constant J and each simplex is a single sheet, so integrating f g J over
  // the simplex equals integrating f times the sheet's g over its projection.
  std::vector<double> jac(static_cast<size_t>(m.simplex_count()));
  for (Eigen::Index s = 0; s < m.simplex_count(); ++s)
    jac[static_cast<size_t>(s)] = height_geometry(m, s).jacobian;
  const IntegralResult proj = integrate_mesh<double>(
      m,
      [&](Eigen::Index s, const Eigen::VectorXd& x) {
        return jac[static_cast<size_t>(s)] * f_at(x.head(n - 1)) * g_at(x[n - 1]);
      },
      opts.tol, opts.quad);
  out.proj_term = proj.value;
  out.proj_error = proj.error;

  // Coarea term: outer adaptive integral over heights, slicing the mesh at
  // each node. Cross-sections are empty outside the mesh height range.
  auto [lo, hi] = bounding_box(m);
  const double y_lo = std::max(lo[n - 1], opts.y_lo);
  const double y_hi = std::min(hi[n - 1], opts.y_hi);
  if (y_hi > y_lo) {
    auto section = [&](double y) {
      const double gy = g_at(y);
      if (gy == 0) return 0.0;
      const SimplicialManifold cross = slice_by_height(m, y);
      if (cross.simplex_count() == 0) return 0.0;
      if (cross.intrinsic_dim == 0) {
        double acc = 0;
        for (Eigen::Index s = 0; s < cross.simplex_count(); ++s)
          acc += cross.multiplicity(s) * f_at(cross.vertices.col(cross.simplices(0, s)));
        return gy * acc;
      }
      return gy * integrate_mesh<double>(
                      cross, [&](Eigen::Index, const Eigen::VectorXd& x) { return f_at(x); },
                      opts.tol, opts.quad)
                      .value;
    };
    std::vector<double> breaks;
    if (y_lo < 0 && 0 < y_hi) breaks.push_back(0);
    const IntegralResult slice =
        integrate_interval(section, y_lo, y_hi, opts.tol, breaks, opts.quad);
    out.slice_term = slice.value;
    out.slice_error = slice.error;
  }
  return out;
}

GaussSlicingReport verify_gauss_slicing(const SimplicialManifold& m, double tol) {
  if (m.intrinsic_dim < 1)
    throw std::invalid_argument("verify_gauss_slicing: intrinsic dimension must be at least 1");
  if (!(tol > 0)) throw std::invalid_argument("verify_gauss_slicing: tolerance must be positive");
  const int d = m.intrinsic_dim;

  SlicingOptions opts;
  opts.tol = tol / 3;  // three quadratures contribute to the reported tol
  // A unit-variance-4 Gaussian weight is below 1e-31 beyond |y| = 12.
  opts.y_lo = -12;
  opts.y_hi = 12;
  const double pre1 = gaussian_kernel(1, Eigen::VectorXd::Zero(1).eval());
  const SlicingTerms terms = slicing_terms(
      m, [d](const Eigen::VectorXd& p) { return gaussian_kernel(d - 1, p); },
      [pre1](double y) { return pre1 * std::exp(-y * y / 4); }, opts);

  const IntegralResult lhs = phi_area(m, opts.tol);

  GaussSlicingReport rep;
  rep.lhs = lhs.value;
  rep.proj_term = terms.proj_term;
  rep.slice_term = terms.slice_term;
  rep.rhs = terms.proj_term + terms.slice_term;
  rep.margin = rep.rhs - rep.lhs;
  rep.tol = lhs.error + terms.proj_error + terms.slice_error;
  return rep;
}

}  // namespace gaussflow
