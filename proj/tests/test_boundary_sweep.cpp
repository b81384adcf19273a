#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "gaussflow/boundary_sweep.hpp"
#include "gaussflow/densities.hpp"
#include "gaussflow/errors.hpp"
#include "gaussflow/gaussian.hpp"
#include "gaussflow/generators.hpp"
#include "gaussflow/simplicial.hpp"

using namespace gaussflow;

namespace {

// Log-spaced sample times from t_lo to t_hi (both negative), endpoints exact.
std::vector<double> log_times(double t_lo, double t_hi, int count) {
  std::vector<double> out(static_cast<size_t>(count));
  const double s_lo = std::log(-t_lo), s_hi = std::log(-t_hi);
  for (int k = 0; k < count; ++k)
    out[static_cast<size_t>(k)] = -std::exp(s_lo + (s_hi - s_lo) * k / (count - 1));
  out.front() = t_lo;
  out.back() = t_hi;
  return out;
}

}  // namespace

TEST_CASE("boundary motion: construction and validation") {
  auto circle = circle_polyline(1.0, 16);

  CHECK_NOTHROW(translator_motion(circle, -1.0, 1.0));
  CHECK_THROWS_AS(translator_motion(circle, 0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(translator_motion(SimplicialManifold{}, 0.0, 1.0), std::invalid_argument);

  auto pts = two_points(2.0);
  Eigen::MatrixXd p4(1, 2), p1(1, 2);
  p4 << -2, 2;
  p1 << -1, 1;
  CHECK_NOTHROW(general_motion(pts, {-4, -1}, {p4, p1}));
  // Too few samples, non-increasing times, non-negative times, shape mismatch.
  CHECK_THROWS_AS(general_motion(pts, {-4}, {p4}), std::invalid_argument);
  CHECK_THROWS_AS(general_motion(pts, {-1, -4}, {p1, p4}), std::invalid_argument);
  CHECK_THROWS_AS(general_motion(pts, {-1, 0}, {p1, p4}), std::invalid_argument);
  CHECK_THROWS_AS(general_motion(pts, {-4, -1}, {p4}), std::invalid_argument);
  Eigen::MatrixXd wide(1, 3);
  wide << -2, 0, 2;
  CHECK_THROWS_AS(general_motion(pts, {-4, -1}, {p4, wide}), std::invalid_argument);
  Eigen::MatrixXd tall(2, 2);
  tall << -2, 2, 0, 0;
  CHECK_THROWS_AS(general_motion(pts, {-4, -1}, {p4, tall}), std::invalid_argument);
}

TEST_CASE("rescaled boundary: translator oracles") {
  auto circle = circle_polyline(1.0, 64);
  const auto motion = translator_motion(circle, 0.0, 1.0);

  // F(x, t) = (x, t v); rescaling by |t|^{-1/2} sends radius 1 to |t|^{-1/2}
  // and the height to -|t|^{1/2}.
  auto rb1 = rescaled_boundary(motion, -1.0);
  CHECK(rb1.intrinsic_dim == 1);
  CHECK(rb1.ambient_dim() == 3);
  CHECK(rb1.simplex_count() == circle.simplex_count());
  for (Eigen::Index i = 0; i < rb1.vertex_count(); ++i) {
    CHECK(rb1.vertices.col(i).head(2).norm() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rb1.vertices(2, i) == doctest::Approx(-1.0).epsilon(1e-12));
  }
  auto rb4 = rescaled_boundary(motion, -4.0);
  for (Eigen::Index i = 0; i < rb4.vertex_count(); ++i) {
    CHECK(rb4.vertices.col(i).head(2).norm() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(rb4.vertices(2, i) == doctest::Approx(-2.0).epsilon(1e-12));
  }

  const auto shifted = translator_motion(circle, 0.5, 2.0);
  auto rbs = rescaled_boundary(shifted, -1.0);
  CHECK(rbs.vertices(2, 0) == doctest::Approx(-1.0).epsilon(1e-12));

  CHECK_THROWS_AS(rescaled_boundary(motion, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(rescaled_boundary(motion, 1.0), std::invalid_argument);
}

TEST_CASE("rescaled boundary: sample interpolation") {
  auto pts = two_points(2.0);
  Eigen::MatrixXd p4(1, 2), p1(1, 2);
  p4 << -2, 2;
  p1 << -1, 1;
  const auto motion = general_motion(pts, {-4, -1}, {p4, p1});

  CHECK(motion_positions(motion, -4.0).isApprox(p4, 1e-12));
  CHECK(motion_positions(motion, -1.0).isApprox(p1, 1e-12));
  Eigen::MatrixXd mid = motion_positions(motion, -2.5);
  CHECK(mid(0, 0) == doctest::Approx(-1.5).epsilon(1e-12));
  CHECK(mid(0, 1) == doctest::Approx(1.5).epsilon(1e-12));

  auto rb = rescaled_boundary(motion, -2.5);
  CHECK(rb.vertices(0, 1) == doctest::Approx(1.5 / std::sqrt(2.5)).epsilon(1e-12));

  CHECK_THROWS_AS(motion_positions(motion, -5.0), std::invalid_argument);
  CHECK_THROWS_AS(motion_positions(motion, -0.5), std::invalid_argument);
}

TEST_CASE("root count: quadratic branch oracles") {
  // Height equation of the calculus bound: a v r^2 - y r + v = 0, r > 0.
  // a < 0: one positive root for every height.
  for (double y : {-5.0, -1.0, 0.0, 1.0, 5.0}) CHECK(root_count(y, -1.0, 1.0) == 1);
  // a > 0, v > 0: two roots above the fold height 2 sqrt(a) v, none below.
  CHECK(root_count(3.0, 1.0, 1.0) == 2);
  CHECK(root_count(2.0, 1.0, 1.0) == 1);  // double root r = 1
  CHECK(root_count(1.9, 1.0, 1.0) == 0);
  CHECK(root_count(0.0, 1.0, 1.0) == 0);
  CHECK(root_count(-3.0, 1.0, 1.0) == 0);
  CHECK(root_count(-3.0, 1.0, -1.0) == 2);
  // a = 0: linear, one root on the half-line where y and v share a sign.
  CHECK(root_count(2.0, 0.0, 1.0) == 1);
  CHECK(root_count(-2.0, 0.0, 1.0) == 0);
  CHECK(root_count(0.0, 0.0, 1.0) == 0);
  CHECK(root_count(-2.0, 0.0, -1.0) == 1);
  CHECK_THROWS_AS(root_count(0.0, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("sweep ring radii: track height equation") {
  // The track's own heights solve a v r^2 - y r - v = 0; every returned
  // radius must satisfy it and be positive.
  const double cases[][3] = {{-2.5, -1, 1}, {-8, -1, 1},   {3, 1, 1},  {-3, 1, 1},
                             {0.5, 1, 2},   {-0.5, 0, 1},  {2, 0, -1}, {-4, -0.25, 2}};
  for (const auto& c : cases) {
    const double y = c[0], a = c[1], v = c[2];
    for (double r : sweep_ring_radii(y, a, v)) {
      CHECK(r > 0);
      CHECK(a * v * r * r - y * r - v == doctest::Approx(0.0).epsilon(1e-10).scale(1 + y * y));
    }
  }

  // a = -1, v = 1: heights -r - 1/r fold at -2, two sheets below, none above.
  auto two = sweep_ring_radii(-2.5, -1.0, 1.0);
  REQUIRE(two.size() == 2);
  CHECK(two[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(two[1] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(sweep_ring_radii(-1.5, -1.0, 1.0).empty());
  CHECK(sweep_ring_radii(-2.0, -1.0, 1.0).size() == 1);

  // a = 1, v = 1: heights r - 1/r are onto, exactly one sheet everywhere.
  for (double y : {-4.0, -0.3, 0.0, 0.3, 4.0}) CHECK(sweep_ring_radii(y, 1.0, 1.0).size() == 1);

  // a = 0: the hyperbola branch -1/r covers the negative heights once.
  auto lin = sweep_ring_radii(-2.0, 0.0, 1.0);
  REQUIRE(lin.size() == 1);
  CHECK(lin[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(sweep_ring_radii(2.0, 0.0, 1.0).empty());
  CHECK_THROWS_AS(sweep_ring_radii(0.0, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("root count integral: closed forms") {
  const auto down = root_count_integral(-1.0, 1.0);
  CHECK(down.closed_form == 1.0);
  CHECK(!down.linear_case);
  CHECK(std::abs(down.quadrature - 1.0) <= 1e-6);

  const auto up = root_count_integral(1.0, 1.0);
  CHECK(up.closed_form == doctest::Approx(std::erfc(1.0)).epsilon(1e-14));
  CHECK(std::abs(up.quadrature - std::erfc(1.0)) <= 1e-6);

  const auto lin = root_count_integral(0.0, 2.0);
  CHECK(lin.linear_case);
  CHECK(lin.closed_form == 0.5);
  CHECK(std::abs(lin.quadrature - 0.5) <= 1e-6);

  // Quadrature matches the closed form across signs and speeds, and the
  // integral never exceeds one.
  for (int i = 0; i <= 8; ++i) {
    const double a = -3.0 + 6.0 * i / 8;
    for (int j = 0; j <= 8; ++j) {
      const double v = 0.1 + 2.9 * j / 8;
      const auto rci = root_count_integral(a, v);
      CHECK(std::abs(rci.quadrature - rci.closed_form) <= 1e-6 + rci.error);
      CHECK(rci.quadrature <= 1.0 + 1e-9);
      CHECK(rci.closed_form <= 1.0);
    }
  }
  CHECK_THROWS_AS(root_count_integral(1.0, 0.0), std::invalid_argument);
}

TEST_CASE("translator sweep: hyperbola track of a point pair") {
  auto pts = two_points(2.0);
  const auto track = translator_sweep(pts, 0.0, 1.0);

  CHECK(track.intrinsic_dim == 1);
  CHECK(track.ambient_dim() == 2);
  // Two polyline branches, one segment per radius step.
  CHECK(track.simplex_count() == 2 * 511);

  // Every vertex sits on x y = -sign(x): the rescaled translator orbit of a
  // point at distance one with a = 0 is the unit hyperbola.
  double r_lo = 1e30, r_hi = 0;
  for (Eigen::Index i = 0; i < track.vertex_count(); ++i) {
    const double x = track.vertices(0, i), h = track.vertices(1, i);
    CHECK(x * h == doctest::Approx(x > 0 ? -1.0 : 1.0).epsilon(1e-12));
    r_lo = std::min(r_lo, std::abs(x));
    r_hi = std::max(r_hi, std::abs(x));
  }
  // Truncation window: heights reach the kernel cutoff at r = 1/13, spatial
  // radius reaches it at r = 13.
  CHECK(r_lo == doctest::Approx(1.0 / 13).epsilon(1e-12));
  CHECK(r_hi == doctest::Approx(13.0).epsilon(1e-12));

  CHECK_THROWS_AS(translator_sweep(pts, 0.0, 0.0), std::invalid_argument);
  RingGridOptions bad;
  bad.r_min = 10.0;
  bad.r_max = 5.0;
  CHECK_THROWS_AS(translator_sweep(pts, 0.0, 1.0, bad), NumericError);
}

TEST_CASE("translator sweep: slices match the ring radii") {
  const int segs = 128;
  auto circle = circle_polyline(1.0, segs);
  const auto track = translator_sweep(circle, -1.0, 1.0);
  CHECK(track.intrinsic_dim == 2);
  CHECK(track.ambient_dim() == 3);

  // A horizontal slice of the track is one scaled copy of the boundary per
  // ring radius at that height; its length is the scaled perimeter sum.
  const double perimeter = measure(circle);
  for (double y : {-2.5, -4.0}) {
    const auto radii = sweep_ring_radii(y, -1.0, 1.0);
    REQUIRE(radii.size() == 2);
    const auto section = slice_by_height(track, y);
    const double expect = (radii[0] + radii[1]) * perimeter;
    CHECK(measure(section) == doctest::Approx(expect).epsilon(1e-3));
  }
  // Above the fold height the track has no points.
  CHECK(slice_by_height(track, -1.0).simplex_count() == 0);
}

TEST_CASE("swept area: tangential motions sweep nothing") {
  // A radially shrinking segment aimed at the origin: the rescaled rings all
  // lie on one line through the origin, so the loft is degenerate and the
  // velocity is tangent to the segment.
  auto seg = segment_polyline(Eigen::Vector2d(1, 1), Eigen::Vector2d(2, 2), 4);
  std::vector<double> times = log_times(-4.0, -0.5, 9);
  std::vector<Eigen::MatrixXd> frames(times.size(), seg.vertices);
  const auto radial = general_motion(seg, times, frames);

  const auto res = swept_phi_area(radial, -4.0, -0.5);
  CHECK(res.mesh_route <= 1e-8);  // rounding slivers in the collinear loft
  CHECK(std::abs(res.integral_route) <= 1e-10);
  CHECK(res.value <= 1e-8);

  // A slowly rotating circle: the motion is tangential, so the swept area is
  // bounded by the chordal mismatch of the polygon, far below the area an
  // actual normal motion of this amplitude would sweep.
  const int segs = 96;
  auto circle = circle_polyline(1.0, segs);
  const double amp = 0.005;
  std::vector<double> rot_times = log_times(-4.0, -1.0, 257);
  std::vector<Eigen::MatrixXd> rot_frames(rot_times.size());
  for (size_t k = 0; k < rot_times.size(); ++k) {
    const double t = rot_times[k], th = amp * std::log(-t);
    Eigen::Matrix2d rot;
    rot << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
    rot_frames[k] = std::sqrt(-t) * (rot * circle.vertices);
  }
  const auto spin = general_motion(circle, rot_times, rot_frames);
  const auto spun = swept_phi_area(spin, -4.0, -1.0);
  CHECK(spun.value <= 1e-3);
  CHECK(std::abs(spun.integral_route) <= 1e-3);
}

TEST_CASE("swept area: translator window matches the static track") {
  // For a translator the rescaled boundary traces exactly the track returned
  // by translator_sweep; sweeping in time must reproduce its Gaussian area.
  auto pts = two_points(2.0);
  const auto motion = translator_motion(pts, 0.0, 1.0);
  const auto res = swept_phi_area(motion, -1e4, -1e-4);
  CHECK(res.value > 0.3);
  CHECK(std::abs(res.mesh_route - res.integral_route) <= res.error);

  const auto track = translator_sweep(pts, 0.0, 1.0);
  const auto direct = phi_area(track, 1e-5);
  CHECK(std::abs(res.value - direct.value) <= 2e-3);
}

TEST_CASE("swept area: additive over time windows") {
  auto circle = circle_polyline(1.0, 32);
  const auto motion = translator_motion(circle, -0.5, 1.0);
  SweepOptions opts;
  opts.tol = 3e-4;
  opts.max_refinements = 4;
  const auto whole = swept_phi_area(motion, -9.0, -1.0 / 9, opts);
  const auto early = swept_phi_area(motion, -9.0, -1.0, opts);
  const auto late = swept_phi_area(motion, -1.0, -1.0 / 9, opts);
  CHECK(std::abs(whole.value - early.value - late.value) <=
        whole.error + early.error + late.error + 1e-3);

  CHECK_THROWS_AS(swept_phi_area(motion, -1.0, -2.0), std::invalid_argument);
  CHECK_THROWS_AS(swept_phi_area(motion, -1.0, 0.0), std::invalid_argument);

  auto pts = two_points(2.0);
  Eigen::MatrixXd p4(1, 2), p1(1, 2);
  p4 << -2, 2;
  p1 << -1, 1;
  const auto general = general_motion(pts, {-4, -1}, {p4, p1});
  CHECK_THROWS_AS(swept_phi_area(general, -8.0, -1.0), std::invalid_argument);
}

TEST_CASE("main calculation: point-pair boundary") {
  auto pts = two_points(2.0);
  MainCalculationOptions opts;
  opts.search.max_center_starts = 2;
  opts.search.scale_count = 5;
  opts.grid.rings = 256;

  const auto rep = verify_main_calculation(pts, -1.0, 1.0, opts);
  // The track's own sheet-count integral: a < 0 folds at height -2|v|.
  CHECK(rep.n_surface_closed == doctest::Approx(std::erfc(1.0)).epsilon(1e-12));
  CHECK(rep.n_surface_quad == doctest::Approx(rep.n_surface_closed).epsilon(1e-6));
  CHECK(rep.n_lemma == 1.0);
  CHECK(!rep.linear_case);
  // Cone over two unit points: two rays, each of Gaussian length one half.
  CHECK(rep.theta_cone == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(rep.entropy_sigma.value == doctest::Approx(2.0).epsilon(1e-6));

  CHECK(rep.bound_chain == doctest::Approx(rep.theta_cone +
                                           rep.entropy_sigma.value * rep.n_surface_closed)
                               .epsilon(1e-12));
  CHECK(rep.bound_chain <= rep.bound_cone + 1e-12);
  CHECK(rep.margin_chain >= -rep.tol);
  CHECK(rep.margin_cone >= -rep.tol);
  CHECK(rep.margin_mcd >= -rep.tol);
}

TEST_CASE("main calculation: circle boundary, both tilt signs") {
  auto circle = circle_polyline(1.0, 96);
  MainCalculationOptions opts;
  opts.search.max_center_starts = 2;
  opts.search.scale_count = 5;
  opts.search.quad_tol = 1e-4;
  opts.grid.rings = 192;

  // a < 0: the track folds, sheet count integrates to erfc(|v| sqrt(-a)).
  const auto rep = verify_main_calculation(circle, -1.0, 1.0, opts);
  CHECK(rep.theta_cone == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(rep.n_surface_closed == doctest::Approx(std::erfc(1.0)).epsilon(1e-12));
  CHECK(rep.n_surface_quad == doctest::Approx(rep.n_surface_closed).epsilon(1e-6));
  CHECK(rep.entropy_sigma.value == doctest::Approx(std::sqrt(2 * 3.14159265358979324 / std::exp(1.0)))
                                       .epsilon(2e-2));
  CHECK(rep.margin_chain >= -rep.tol);
  CHECK(rep.margin_cone >= -rep.tol);
  CHECK(rep.margin_mcd >= -rep.tol);

  // a > 0: the track is a graph over every height, sheet count one.
  const auto up = verify_main_calculation(circle, 1.0, 1.0, opts);
  CHECK(up.n_surface_closed == 1.0);
  CHECK(up.n_surface_quad == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(up.n_lemma == doctest::Approx(std::erfc(1.0)).epsilon(1e-12));
  CHECK(up.bound_chain == doctest::Approx(up.bound_cone).epsilon(1e-12));
  CHECK(up.margin_chain >= -up.tol);
  CHECK(up.margin_mcd >= -up.tol);
}
