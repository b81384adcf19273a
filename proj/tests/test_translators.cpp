#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "gaussflow/densities.hpp"
#include "gaussflow/errors.hpp"
#include "gaussflow/generators.hpp"
#include "gaussflow/simplicial.hpp"
#include "gaussflow/translators.hpp"

using namespace gaussflow;

namespace {

constexpr double kPi = 3.14159265358979323846;

SearchOptions quick_search() {
  SearchOptions o;
  o.max_center_starts = 2;
  o.scale_count = 5;
  o.quad_tol = 1e-4;
  return o;
}

// Tube of unit-circle cross section between two heights; its boundary is a
// pair of horizontal circles.
SimplicialManifold cylinder(int segments, double h_lo, double h_hi) {
  auto circle = circle_polyline(1.0, segments);
  std::vector<Eigen::MatrixXd> rings(2, Eigen::MatrixXd(3, circle.vertex_count()));
  for (int k = 0; k < 2; ++k) {
    rings[static_cast<size_t>(k)].topRows(2) = circle.vertices;
    rings[static_cast<size_t>(k)].row(2).setConstant(k == 0 ? h_lo : h_hi);
  }
  return loft_rings<double>(rings, circle.simplices, circle.multiplicities);
}

}  // namespace

TEST_CASE("grim reaper: exact curve sampling") {
  const double y_cut = 2.0;
  auto gr = grim_reaper(1.0, y_cut, 801);
  CHECK(gr.intrinsic_dim == 1);
  CHECK(gr.ambient_dim() == 2);
  CHECK(gr.vertex_count() == 801);

  // Every vertex satisfies y = -ln cos(x) identically; x stays inside the
  // asymptotic slab.
  for (Eigen::Index i = 0; i < gr.vertex_count(); ++i) {
    const double x = gr.vertices(0, i), y = gr.vertices(1, i);
    CHECK(std::abs(x) < kPi / 2);
    CHECK(y == doctest::Approx(-std::log(std::cos(x))).epsilon(1e-11));
  }
  CHECK(gr.vertices(1, 0) == y_cut);
  CHECK(gr.vertices(1, 800) == y_cut);
  CHECK(gr.vertices(0, 0) == doctest::Approx(-gr.vertices(0, 800)).epsilon(1e-12));

  // Arc-length-uniform sampling: chord lengths match to curvature order.
  double e_lo = 1e30, e_hi = 0;
  for (Eigen::Index s = 0; s < gr.simplex_count(); ++s) {
    const double e = longest_edge(gr, s);
    e_lo = std::min(e_lo, e);
    e_hi = std::max(e_hi, e);
  }
  CHECK(e_hi / e_lo - 1 <= 1e-3);

  // Speed scales the profile: the v = 2 curve is half the v = 1 curve.
  auto half = grim_reaper(2.0, 1.0, 801);
  CHECK((half.vertices - 0.5 * gr.vertices).cwiseAbs().maxCoeff() <= 1e-12);

  CHECK_THROWS_AS(grim_reaper(0.0, 1.0, 64), std::invalid_argument);
  CHECK_THROWS_AS(grim_reaper(1.0, -1.0, 64), std::invalid_argument);
  CHECK_THROWS_AS(grim_reaper(1.0, 1.0, 4), std::invalid_argument);
  CHECK_THROWS_AS(grim_reaper(1.0, 400.0, 64), std::invalid_argument);
}

TEST_CASE("grim reaper: discrete curvature is the normal translation field") {
  // Arc length at y_cut = 2 is about 5.4; this resolution puts edges near 1e-3.
  const double v = 1.0;
  auto gr = grim_reaper(v, 2.0, 5381);
  double worst = 0;
  for (Eigen::Index i = 1; i + 1 < gr.vertex_count(); ++i) {
    const Eigen::Vector2d prev = gr.vertices.col(i - 1), cur = gr.vertices.col(i),
                          next = gr.vertices.col(i + 1);
    const Eigen::Vector2d e0 = cur - prev, e1 = next - cur;
    const Eigen::Vector2d kappa =
        2 * (e1.normalized() - e0.normalized()) / (e0.norm() + e1.norm());
    const Eigen::Vector2d tangent = (next - prev).normalized();
    Eigen::Vector2d field(0, v);
    field -= tangent * tangent.dot(field);
    worst = std::max(worst, (kappa - field).norm());
  }
  CHECK(worst < 1e-4 * v);
}

TEST_CASE("bowl profile: series start, convexity, accuracy") {
  const auto prof = bowl_profile(2, 1.0, 3.0);
  // Near the apex u ~ v r^2 / (2 m).
  CHECK(bowl_profile_height(prof, 1e-2) / 1e-4 == doctest::Approx(0.25).epsilon(1e-4));
  const auto prof3 = bowl_profile(3, 1.0, 2.0);
  CHECK(bowl_profile_height(prof3, 1e-2) / 1e-4 == doctest::Approx(1.0 / 6).epsilon(1e-4));

  // Strictly convex increasing profile: positive increasing slope.
  for (Eigen::Index i = 1; i < prof.r.size(); ++i) {
    CHECK(prof.du[i] > 0);
    CHECK(prof.du[i] > prof.du[i - 1]);
  }

  // Step-controller contract: tightening the tolerance moves heights by less
  // than the coarse tolerance budget.
  const auto tight = bowl_profile(2, 1.0, 3.0, 1e-13);
  double worst = 0;
  for (int k = 0; k <= 1000; ++k) {
    const double r = 3.0 * k / 1000;
    worst = std::max(worst, std::abs(bowl_profile_height(prof, r) - bowl_profile_height(tight, r)));
  }
  CHECK(worst < 1e-8);

  CHECK_THROWS_AS(bowl_profile(1, 1.0, 3.0), std::invalid_argument);
  CHECK_THROWS_AS(bowl_profile(2, 0.0, 3.0), std::invalid_argument);
  CHECK_THROWS_AS(bowl_profile(2, 1.0, -3.0), std::invalid_argument);
  CHECK_THROWS_AS(bowl_profile_height(prof, 4.0), std::invalid_argument);
}

TEST_CASE("bowl cap: revolved mesh geometry") {
  const double r_max = 3.0;
  auto cap = bowl_cap(2, 1.0, r_max, 16);
  CHECK(cap.intrinsic_dim == 2);
  CHECK(cap.ambient_dim() == 3);
  CHECK(cap.vertices.col(0).norm() == 0.0);

  // Vertices lie on the revolved profile; the boundary ring is exactly flat.
  const auto prof = bowl_profile(2, 1.0, r_max);
  double boundary_lo = 1e30, boundary_hi = -1e30;
  for (Eigen::Index i = 1; i < cap.vertex_count(); ++i) {
    const double r = cap.vertices.col(i).head(2).norm();
    CHECK(cap.vertices(2, i) ==
          doctest::Approx(bowl_profile_height(prof, r)).epsilon(1e-9).scale(1.0));
    if (r > r_max - 1e-9) {
      boundary_lo = std::min(boundary_lo, cap.vertices(2, i));
      boundary_hi = std::max(boundary_hi, cap.vertices(2, i));
    }
  }
  CHECK(boundary_hi - boundary_lo == 0.0);

  CHECK_THROWS_AS(bowl_cap(3, 1.0, 3.0, 16), std::invalid_argument);
  CHECK_THROWS_AS(bowl_cap(2, 1.0, 3.0, 4), std::invalid_argument);
}

TEST_CASE("boundary extraction: planes, groups, failures") {
  // Grim reaper: two endpoint vertices, one plane at the cut height.
  auto gr = grim_reaper(1.0, 2.0, 101);
  const auto gr_groups = boundary_components(gr);
  REQUIRE(gr_groups.size() == 1);
  CHECK(gr_groups[0].component_count == 2);
  CHECK(gr_groups[0].height == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(gr_groups[0].sigma.intrinsic_dim == 0);
  CHECK(gr_groups[0].sigma.ambient_dim() == 1);
  REQUIRE(gr_groups[0].sigma.vertex_count() == 2);
  CHECK(std::abs(gr_groups[0].sigma.vertices(0, 0)) ==
        doctest::Approx(std::abs(gr_groups[0].sigma.vertices(0, 1))).epsilon(1e-12));

  // Bowl cap: one boundary circle of radius r_max in one plane.
  auto cap = bowl_cap(2, 1.0, 2.0, 12);
  const auto cap_groups = boundary_components(cap);
  REQUIRE(cap_groups.size() == 1);
  CHECK(cap_groups[0].component_count == 1);
  CHECK(cap_groups[0].sigma.intrinsic_dim == 1);
  CHECK(cap_groups[0].sigma.ambient_dim() == 2);
  CHECK(cap_groups[0].sigma.vertex_count() == 2 * 12);
  for (Eigen::Index i = 0; i < cap_groups[0].sigma.vertex_count(); ++i)
    CHECK(cap_groups[0].sigma.vertices.col(i).norm() == doctest::Approx(2.0).epsilon(1e-12));
  const auto prof = bowl_profile(2, 1.0, 2.0);
  CHECK(cap_groups[0].height == doctest::Approx(bowl_profile_height(prof, 2.0)).epsilon(1e-12));

  // A tube has two boundary circles in distinct planes.
  const auto tube_groups = boundary_components(cylinder(24, 0.0, 1.0));
  REQUIRE(tube_groups.size() == 2);
  CHECK(tube_groups[0].height == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));
  CHECK(tube_groups[1].height == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(tube_groups[0].sigma.simplex_count() == 24);

  // Tilting the tube makes its boundary non-horizontal.
  auto tilted = cylinder(24, 0.0, 1.0);
  Eigen::Matrix3d rot;
  rot << 1, 0, 0, 0, std::cos(0.3), -std::sin(0.3), 0, std::sin(0.3), std::cos(0.3);
  tilted.vertices = rot * tilted.vertices;
  CHECK_THROWS_AS(boundary_components(tilted), UnsupportedBoundaryError);

  // Closed meshes and point clouds have nothing to extract.
  CHECK_THROWS_AS(boundary_components(torus_mesh(1.0, 0.4, 8, 12)), std::invalid_argument);
  CHECK_THROWS_AS(boundary_components(two_points(2.0)), std::invalid_argument);
}

TEST_CASE("unit ball volumes") {
  CHECK(unit_ball_volume(0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(unit_ball_volume(1) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(unit_ball_volume(2) == doctest::Approx(kPi).epsilon(1e-14));
  CHECK(unit_ball_volume(3) == doctest::Approx(4 * kPi / 3).epsilon(1e-14));
  CHECK_THROWS_AS(unit_ball_volume(-1), std::invalid_argument);
}

TEST_CASE("entropy bound: grim reaper against its two-point boundary") {
  EntropyBoundConfig cfg;
  cfg.search = quick_search();
  const auto rep = verify_entropy_bound(grim_reaper(1.0, 2.0, 512), cfg);

  REQUIRE(rep.components.size() == 1);
  CHECK(rep.components[0].component_count == 2);
  CHECK(rep.components[0].entropy.value == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(rep.components[0].mcd.value == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(rep.bound == doctest::Approx(3.0).epsilon(1e-4));
  CHECK(rep.bound_coeff2 == doctest::Approx(5.0).epsilon(1e-4));
  // Closed form at m = 1, one plane: 1 + w_1 / w_0 = 3.
  CHECK(rep.convex_bound == doctest::Approx(3.0).epsilon(1e-14));

  CHECK(rep.entropy_M.value >= 1.0 - 2e-2);
  CHECK(rep.entropy_M.value <= 3.0 + 1e-2);
  CHECK(rep.margin >= -rep.tol);
  CHECK(rep.margin_mdr >= -rep.tol);
  CHECK(rep.margin_convex >= -rep.tol);
  // The density-ratio bound is never tighter than the entropy bound.
  CHECK(rep.bound_mdr >= rep.bound - rep.tol);
}

TEST_CASE("entropy bound: bowl cap against its circle boundary") {
  EntropyBoundConfig cfg;
  cfg.search = quick_search();
  const auto rep = verify_entropy_bound(bowl_cap(2, 1.0, 3.0, 16), cfg);

  REQUIRE(rep.components.size() == 1);
  CHECK(rep.components[0].entropy.value ==
        doctest::Approx(std::sqrt(2 * kPi / std::exp(1.0))).epsilon(2e-2));
  CHECK(rep.components[0].mcd.value == doctest::Approx(1.0).epsilon(2e-2));
  CHECK(rep.bound == doctest::Approx(std::sqrt(2 * kPi / std::exp(1.0)) + 1).epsilon(3e-2));
  // Closed form at m = 2, one plane: 1 + 2 w_2 / w_1 = 1 + pi.
  CHECK(rep.convex_bound == doctest::Approx(1 + kPi).epsilon(1e-14));

  // Sandwich: the cap contains smooth points and respects the convex bound.
  CHECK(rep.entropy_M.value >= 1.0 - 2e-2);
  CHECK(rep.entropy_M.value <= rep.convex_bound);
  CHECK(rep.margin >= -rep.tol);
  CHECK(rep.margin_mdr >= -rep.tol);
  CHECK(rep.margin_convex >= -rep.tol);
}
