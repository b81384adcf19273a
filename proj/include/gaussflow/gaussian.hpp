#pragma once

// Backward-heat Gaussian kernels and the weighted areas they induce on
// simplicial manifolds.
//
//   rho_m(x, t) = (4 pi |t|)^(-m/2) exp(-|x|^2 / (4|t|)),  t < 0
//   Phi_m(x)    = rho_m(x, -1) = (4 pi)^(-m/2) exp(-|x|^2 / 4)
//
// The kernel index m and the ambient dimension of x are independent; |x| is
// always the full ambient norm. Phi_0 = exp(-|x|^2/4). The scaling identity
// rho_m(x, t) = |t|^(-m/2) Phi_m(x / |t|^(1/2)) holds exactly.

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

#include "gaussflow/quadrature.hpp"
#include "gaussflow/simplicial.hpp"

namespace gaussflow {

template <class Scalar>
Scalar gaussian_kernel(int m, const VecX<Scalar>& x) {
  if (m < 0) throw std::invalid_argument("gaussian_kernel: kernel index must be non-negative");
  const Scalar four_pi = Scalar(4) * Scalar(EIGEN_PI);
  return std::pow(four_pi, -Scalar(m) / 2) * std::exp(-x.squaredNorm() / 4);
}

template <class Scalar>
Scalar gaussian_kernel(int m, const VecX<Scalar>& x, Scalar t) {
  if (m < 0) throw std::invalid_argument("gaussian_kernel: kernel index must be non-negative");
  if (!(t < Scalar(0))) throw std::invalid_argument("gaussian_kernel: time must be negative");
  const Scalar at = -t;
  const Scalar four_pi_t = Scalar(4) * Scalar(EIGEN_PI) * at;
  return std::pow(four_pi_t, -Scalar(m) / 2) * std::exp(-x.squaredNorm() / (4 * at));
}

// Gaussian weight window: kernel centered at `center` with backward time
// scale_time, i.e. x -> rho_d(x - center, -scale_time).
struct GaussianWindow {
  Eigen::VectorXd center;
  double scale_time = 1.0;
};

// Phi-weighted area: integral of Phi_d over the mesh, d = intrinsic
// dimension. Point clouds sum multiplicity * Phi_0(vertex). The kernel
// prefactor is hoisted out of the per-node loop.
template <class Scalar>
IntegralResult phi_area(const SimplicialManifoldT<Scalar>& m, Scalar tol = Scalar(1e-4),
                        const QuadratureOptions& opts = {}) {
  const Scalar pre = std::pow(Scalar(4) * Scalar(EIGEN_PI), -Scalar(m.intrinsic_dim) / 2);
  return integrate_mesh<Scalar>(
      m, [pre](Eigen::Index, const VecX<Scalar>& x) { return pre * std::exp(-x.squaredNorm() / 4); },
      tol, opts);
}

// Gaussian-weighted area against an arbitrary window. Equals the Phi-area of
// the mesh normalized by x -> (x - center) / sqrt(scale_time).
template <class Scalar>
IntegralResult f_functional(const SimplicialManifoldT<Scalar>& m, const GaussianWindow& w,
                            Scalar tol = Scalar(1e-4), const QuadratureOptions& opts = {}) {
  if (!(w.scale_time > 0)) throw std::invalid_argument("f_functional: scale_time must be positive");
  if (w.center.size() != m.ambient_dim())
    throw std::invalid_argument("f_functional: window center dimension mismatch");
  const VecX<Scalar> center = w.center.template cast<Scalar>();
  const Scalar t = Scalar(w.scale_time);
  const Scalar pre = std::pow(Scalar(4) * Scalar(EIGEN_PI) * t, -Scalar(m.intrinsic_dim) / 2);
  const Scalar inv4t = 1 / (4 * t);
  return integrate_mesh<Scalar>(
      m,
      [pre, inv4t, &center](Eigen::Index, const VecX<Scalar>& x) {
        return pre * std::exp(-(x - center).squaredNorm() * inv4t);
      },
      tol, opts);
}

}  // namespace gaussflow
