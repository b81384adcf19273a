#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "gaussflow/gaussian.hpp"
#include "gaussflow/generators.hpp"
#include "gaussflow/smf.hpp"
#include "gaussflow/translators.hpp"

using namespace gaussflow;

namespace {

SimplicialManifold round_trip(const SimplicialManifold& m) {
  std::stringstream buf;
  write_smf(buf, m);
  return read_smf(buf);
}

void check_equal(const SimplicialManifold& a, const SimplicialManifold& b) {
  REQUIRE(a.intrinsic_dim == b.intrinsic_dim);
  REQUIRE(a.vertex_count() == b.vertex_count());
  REQUIRE(a.simplex_count() == b.simplex_count());
  CHECK(a.vertices == b.vertices);
  CHECK(a.simplices == b.simplices);
  for (Eigen::Index s = 0; s < a.simplex_count(); ++s)
    CHECK(a.multiplicity(s) == b.multiplicity(s));
}

}  // namespace

TEST_CASE("smf round-trips reproduce meshes exactly") {
  check_equal(two_points(2.0), round_trip(two_points(2.0)));
  check_equal(circle_polyline(1.0, 96), round_trip(circle_polyline(1.0, 96)));
  check_equal(torus_mesh(2.0, 0.5, 12, 8), round_trip(torus_mesh(2.0, 0.5, 12, 8)));
  check_equal(grim_reaper(1.0, 2.0, 64), round_trip(grim_reaper(1.0, 2.0, 64)));
  check_equal(bowl_cap(2, 1.0, 2.0, 12), round_trip(bowl_cap(2, 1.0, 2.0, 12)));

  // Awkward coordinates survive the 17-digit text representation.
  auto mesh = circle_polyline(1.0, 8);
  mesh.vertices(0, 0) = 0.1 + 0.2;
  mesh.vertices(1, 0) = -1.2345678901234567e-300;
  mesh.vertices(0, 1) = 9.87654321098765432e2;
  mesh.multiplicities[3] = 0.30000000000000004;
  check_equal(mesh, round_trip(mesh));
}

TEST_CASE("smf multiplicities: omitted means one, written when not") {
  auto mesh = two_points(1.0);
  mesh.multiplicities << 0.5, 2.25;
  std::stringstream buf;
  write_smf(buf, mesh);
  CHECK(buf.str().find("0 0.5") != std::string::npos);
  CHECK(buf.str().find("1 2.25") != std::string::npos);
  check_equal(mesh, read_smf(buf));

  std::istringstream plain("smf 0 1\n2 2\n-0.5\n0.5\n0\n1\n");
  const auto loaded = read_smf(plain);
  CHECK(loaded.multiplicity(0) == 1.0);
  CHECK(loaded.multiplicity(1) == 1.0);
}

TEST_CASE("smf empty mesh loads and measures zero") {
  std::istringstream in("smf 1 2\n0 0\n");
  const auto empty = read_smf(in);
  CHECK(empty.vertex_count() == 0);
  CHECK(empty.simplex_count() == 0);
  CHECK(phi_area(empty).value == 0.0);
  check_equal(empty, round_trip(empty));
}

TEST_CASE("smf rejects malformed input with line references") {
  auto expect_fail = [](const std::string& text, const std::string& needle) {
    std::istringstream in(text);
    try {
      read_smf(in);
      FAIL_CHECK("accepted: " << text);
    } catch (const std::invalid_argument& e) {
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
  };

  expect_fail("", "empty input");
  expect_fail("off 1 2\n0 0\n", "header");
  expect_fail("smf 2 1\n0 0\n", "exceeds ambient");
  expect_fail("smf 1 2\n1\n0 0\n", "simplex_count");
  expect_fail("smf 1 2\n2 1\n0 0\n1\n0 1\n", "line 4: expected 2 coordinates");
  expect_fail("smf 1 2\n2 1\n0 0\nx 1\n0 1\n", "line 4: expected a number");
  expect_fail("smf 1 2\n2 1\n0 0\n1 1\n0 2\n", "line 5: vertex index 2 out of range");
  expect_fail("smf 1 2\n2 1\n0 0\n1 1\n0 -1\n", "line 5");
  expect_fail("smf 1 2\n2 1\n0 0\n1 1\n", "line 5: missing simplex line");
  expect_fail("smf 1 2\n2 1\n0 0\n1 1\n0 1\nstray\n", "line 6: trailing content");
  expect_fail("smf 1 2\n2 1\n0 0\n1 1\n0 1 0.0\n", "positive");
  expect_fail("smf 1 2\n2 1\n0 0\n0 0\n0 1\n", "degenerate");
}

TEST_CASE("smf file writes are atomic and overwrite cleanly") {
  const std::string path = "smf_scratch.smf";
  write_smf(path, circle_polyline(1.0, 12));
  check_equal(circle_polyline(1.0, 12), read_smf(path));

  // Overwrite with a different mesh; no temporary residue stays behind.
  write_smf(path, two_points(3.0));
  check_equal(two_points(3.0), read_smf(path));
  std::ifstream residue(path + ".tmp");
  CHECK(!residue.good());

  CHECK_THROWS_AS(read_smf("smf_no_such_file.smf"), std::invalid_argument);
  CHECK_THROWS_AS(write_smf("smf_no_such_dir/x.smf", two_points(1.0)), std::runtime_error);
  std::remove(path.c_str());
}
