#pragma once

// Slicing decomposition of weighted area along the height (last) coordinate.
//
// For a d-manifold S in R^n with height h(x, y) = y, every tangent plane
// satisfies J + |grad_S h| >= 1 where J is the Jacobian of the horizontal
// projection. Integrating f(x) g(y) against that inequality splits the
// weighted area into a projection term (area formula, one sheet per flat
// simplex) and a slice term (coarea formula, cross-sections over heights):
//
//   integral_S f g  <=  proj_term + slice_term.
//
// The Gaussian specialization factors the area kernel across the split.

#include <Eigen/Dense>

#include <functional>
#include <limits>

#include "gaussflow/quadrature.hpp"
#include "gaussflow/simplicial.hpp"

namespace gaussflow {

// Per-simplex projection geometry: jacobian = J of the horizontal projection
// restricted to the simplex plane, grad_norm = |grad_S h|. Both lie in [0, 1]
// and satisfy jacobian^2 + grad_norm^2 = 1; degenerate simplices report zeros.
struct HeightGeometry {
  double jacobian = 0;
  double grad_norm = 0;
};

HeightGeometry height_geometry(const SimplicialManifold& m, Eigen::Index s);

struct SlicingOptions {
  double tol = 1e-5;  // absolute tolerance per term
  // Clip window for the outer height integral; the mesh height range applies
  // on top of it. Useful when g decays (a Gaussian weight is negligible
  // beyond |y| = 12).
  double y_lo = -std::numeric_limits<double>::infinity();
  double y_hi = std::numeric_limits<double>::infinity();
  QuadratureOptions quad;
};

struct SlicingTerms {
  double lhs = 0;         // integral over S of f(x) g(y)
  double proj_term = 0;   // area formula: sum over sheets of f g
  double slice_term = 0;  // coarea formula: heights y of g(y) integral_{S^y} f
  double lhs_error = 0;
  double proj_error = 0;
  double slice_error = 0;
  double margin() const { return proj_term + slice_term - lhs; }
  double tol() const { return lhs_error + proj_error + slice_error; }
};

// f is evaluated on the horizontal coordinates (dimension n-1), g on the
// height. Throws std::invalid_argument on a negative f or g sample and for
// point clouds (d = 0 has no slicing decomposition).
SlicingTerms slicing_terms(const SimplicialManifold& m,
                           const std::function<double(const Eigen::VectorXd&)>& f,
                           const std::function<double(double)>& g,
                           const SlicingOptions& opts = {});

struct GaussSlicingReport {
  double lhs = 0;   // Gaussian area of S, kernel of order d
  double rhs = 0;   // proj_term + slice_term under the factored kernel
  double proj_term = 0;
  double slice_term = 0;
  double margin = 0;  // rhs - lhs, must exceed -tol
  double tol = 0;     // combined quadrature error estimate
};

// Gaussian slicing inequality with the exact kernel factorization
// Phi_d(x, y) = Phi_{d-1}(x) Phi_1(y).
GaussSlicingReport verify_gauss_slicing(const SimplicialManifold& m, double tol = 1e-5);

}  // namespace gaussflow
