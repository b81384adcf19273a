#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "gaussflow/gaussian.hpp"
#include "gaussflow/generators.hpp"

using namespace gaussflow;

namespace {
constexpr double kPi = 3.14159265358979323846;

Eigen::VectorXd vec1(double x) {
  Eigen::VectorXd v(1);
  v << x;
  return v;
}
}  // namespace

TEST_CASE("kernel point values and backward-heat scaling") {
  // Phi_m(0) = (4 pi)^{-m/2}.
  CHECK(gaussian_kernel(1, vec1(0.0)) == doctest::Approx(0.28209479177387814).epsilon(1e-14));
  Eigen::VectorXd z2 = Eigen::VectorXd::Zero(2);
  CHECK(gaussian_kernel(2, z2) == doctest::Approx(1.0 / (4 * kPi)).epsilon(1e-14));

  // rho_m(x, -1) = Phi_m(x).
  Eigen::VectorXd x(2);
  x << 0.7, -1.3;
  CHECK(gaussian_kernel(2, x, -1.0) == doctest::Approx(gaussian_kernel(2, x)).epsilon(1e-14));

  // Parabolic scaling: rho_m(l x, -l^2) = l^-m rho_m(x, -1).
  const double l = 1.7;
  CHECK(gaussian_kernel(2, Eigen::VectorXd(l * x), -l * l) ==
        doctest::Approx(gaussian_kernel(2, x) / (l * l)).epsilon(1e-13));

  CHECK_THROWS_AS(gaussian_kernel(1, vec1(0.0), 0.0), std::invalid_argument);
  CHECK_THROWS_AS(gaussian_kernel(1, vec1(0.0), 1.0), std::invalid_argument);
}

TEST_CASE("Phi-area of a line through the origin is 1") {
  auto line = interval_mesh(-20.0, 20.0, 8);
  auto r = phi_area(line, 1e-7);
  CHECK(std::abs(r.value - 1.0) < 1e-6);
  CHECK(r.error < 1e-6);
}

TEST_CASE("Phi-area of the radius-sqrt(2) circle is sqrt(2 pi / e)") {
  auto circ = circle_polyline(std::sqrt(2.0), 4096);
  auto r = phi_area(circ, 1e-8);
  CHECK(std::abs(r.value - 1.5203469010662807) < 1e-5);
}

TEST_CASE("half-line Phi-area matches the erfc closed form") {
  // int_c^inf Phi_1 = erfc(c/2) / 2.
  auto half = interval_mesh(1.0, 30.0, 8);
  auto r = phi_area(half, 1e-9);
  CHECK(std::abs(r.value - 0.5 * std::erfc(0.5)) < 1e-8);
}

TEST_CASE("Phi-area of a sphere matches the radial closed form") {
  // Area(S_r) * Phi_2(r) = 4 pi r^2 (4 pi)^{-1} e^{-r^2/4}; r = 2 gives 4/e.
  auto sph = uv_sphere(2.0, 48, 96);
  auto r = phi_area(sph, 1e-6);
  CHECK(std::abs(r.value - 4.0 / std::exp(1.0)) < 8e-3);  // chordal mesh bias dominates
}

TEST_CASE("window functional equals Phi-area after renormalizing the surface") {
  auto circ = circle_polyline(1.0, 512, Eigen::Vector2d(0.4, -0.1));
  GaussianWindow w;
  w.center = Eigen::VectorXd(2);
  w.center << 0.3, -0.2;
  w.scale_time = 0.7;
  auto direct = f_functional(circ, w, 1e-9);
  auto rescaled = transform(circ, w.center, 1.0 / std::sqrt(w.scale_time));
  auto via_phi = phi_area(rescaled, 1e-9);
  CHECK(direct.value == doctest::Approx(via_phi.value).epsilon(1e-7));

  GaussianWindow bad = w;
  bad.scale_time = -1.0;
  CHECK_THROWS_AS(f_functional(circ, bad, 1e-6), std::invalid_argument);
  GaussianWindow wrongdim = w;
  wrongdim.center = Eigen::VectorXd::Zero(3);
  CHECK_THROWS_AS(f_functional(circ, wrongdim, 1e-6), std::invalid_argument);
}

TEST_CASE("window functional at unit time centered at 0 is plain Phi-area") {
  auto two = two_points(3.0);
  GaussianWindow w;
  w.center = Eigen::VectorXd::Zero(1);
  w.scale_time = 1.0;
  auto a = f_functional(two, w, 1e-10);
  auto b = phi_area(two, 1e-10);
  CHECK(a.value == doctest::Approx(b.value).epsilon(1e-13));
  // Two points at +-1.5: value is 2 Phi_0(1.5) = 2 e^{-2.25/4} (m = 0 kernel).
  CHECK(b.value == doctest::Approx(2.0 * std::exp(-2.25 / 4)).epsilon(1e-13));
}
