#include "gaussflow/generators.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace gaussflow {

namespace {

constexpr double kPi = 3.14159265358979323846;

SimplicialManifold closed_loop(const Eigen::MatrixXd& verts) {
  SimplicialManifold m;
  m.intrinsic_dim = 1;
  m.vertices = verts;
  const Eigen::Index n = verts.cols();
  m.simplices.resize(2, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    m.simplices(0, i) = static_cast<int>(i);
    m.simplices(1, i) = static_cast<int>((i + 1) % n);
  }
  m.multiplicities = Eigen::VectorXd::Ones(n);
  validate(m);
  return m;
}

}  // namespace

SimplicialManifold circle_polyline(double radius, int segments, const Eigen::Vector2d& center,
                                   double phase) {
  if (segments < 3) throw std::invalid_argument("circle_polyline: need at least 3 segments");
  if (!(radius > 0)) throw std::invalid_argument("circle_polyline: radius must be positive");
  Eigen::MatrixXd verts(2, segments);
  for (int i = 0; i < segments; ++i) {
    const double a = phase + 2 * kPi * i / segments;
    verts.col(i) = center + radius * Eigen::Vector2d(std::cos(a), std::sin(a));
  }
  return closed_loop(verts);
}

SimplicialManifold segment_polyline(const Eigen::Vector2d& a, const Eigen::Vector2d& b, int segments) {
  if (segments < 1) throw std::invalid_argument("segment_polyline: need at least 1 segment");
  SimplicialManifold m;
  m.intrinsic_dim = 1;
  m.vertices.resize(2, segments + 1);
  for (int i = 0; i <= segments; ++i) m.vertices.col(i) = a + (b - a) * (double(i) / segments);
  m.simplices.resize(2, segments);
  for (int i = 0; i < segments; ++i) {
    m.simplices(0, i) = i;
    m.simplices(1, i) = i + 1;
  }
  m.multiplicities = Eigen::VectorXd::Ones(segments);
  validate(m);
  return m;
}

SimplicialManifold interval_mesh(double a, double b, int segments) {
  if (segments < 1) throw std::invalid_argument("interval_mesh: need at least 1 segment");
  if (!(b > a)) throw std::invalid_argument("interval_mesh: need a < b");
  SimplicialManifold m;
  m.intrinsic_dim = 1;
  m.vertices.resize(1, segments + 1);
  for (int i = 0; i <= segments; ++i) m.vertices(0, i) = a + (b - a) * (double(i) / segments);
  m.simplices.resize(2, segments);
  for (int i = 0; i < segments; ++i) {
    m.simplices(0, i) = i;
    m.simplices(1, i) = i + 1;
  }
  m.multiplicities = Eigen::VectorXd::Ones(segments);
  validate(m);
  return m;
}

SimplicialManifold regular_polygon_boundary(int sides, double circumradius, int per_edge) {
  if (sides < 3) throw std::invalid_argument("regular_polygon_boundary: need at least 3 sides");
  if (per_edge < 1) throw std::invalid_argument("regular_polygon_boundary: per_edge must be positive");
  const int n = sides * per_edge;
  Eigen::MatrixXd verts(2, n);
  int c = 0;
  for (int s = 0; s < sides; ++s) {
    const double a0 = 2 * kPi * s / sides;
    const double a1 = 2 * kPi * (s + 1) / sides;
    const Eigen::Vector2d p0(circumradius * std::cos(a0), circumradius * std::sin(a0));
    const Eigen::Vector2d p1(circumradius * std::cos(a1), circumradius * std::sin(a1));
    for (int k = 0; k < per_edge; ++k) verts.col(c++) = p0 + (p1 - p0) * (double(k) / per_edge);
  }
  return closed_loop(verts);
}

SimplicialManifold square_boundary(double half_side, int per_edge) {
  if (!(half_side > 0)) throw std::invalid_argument("square_boundary: half_side must be positive");
  if (per_edge < 1) throw std::invalid_argument("square_boundary: per_edge must be positive");
  const double h = half_side;
  const Eigen::Vector2d corners[4] = {{h, h}, {-h, h}, {-h, -h}, {h, -h}};
  Eigen::MatrixXd verts(2, 4 * per_edge);
  int c = 0;
  for (int s = 0; s < 4; ++s) {
    const Eigen::Vector2d p0 = corners[s], p1 = corners[(s + 1) % 4];
    for (int k = 0; k < per_edge; ++k) verts.col(c++) = p0 + (p1 - p0) * (double(k) / per_edge);
  }
  return closed_loop(verts);
}

SimplicialManifold two_points(double separation) {
  if (!(separation > 0)) throw std::invalid_argument("two_points: separation must be positive");
  Eigen::MatrixXd pts(1, 2);
  pts << -separation / 2, separation / 2;
  return point_cloud(pts);
}

SimplicialManifold point_cloud(const Eigen::MatrixXd& points, const Eigen::VectorXd& multiplicities) {
  SimplicialManifold m;
  m.intrinsic_dim = 0;
  m.vertices = points;
  m.simplices.resize(1, points.cols());
  for (Eigen::Index i = 0; i < points.cols(); ++i) m.simplices(0, i) = static_cast<int>(i);
  m.multiplicities =
      multiplicities.size() ? multiplicities : Eigen::VectorXd::Ones(points.cols());
  validate(m);
  return m;
}

SimplicialManifold uv_sphere(double radius, int n_lat, int n_lon, const Eigen::Vector3d& center) {
  if (n_lat < 3 || n_lon < 3) throw std::invalid_argument("uv_sphere: need n_lat, n_lon >= 3");
  if (!(radius > 0)) throw std::invalid_argument("uv_sphere: radius must be positive");
  // Interior latitude rings plus two pole vertices.
  std::vector<Eigen::Vector3d> verts;
  auto at = [&](int i, int j) {  // i in [1, n_lat-1], j in [0, n_lon)
    return 2 + (i - 1) * n_lon + (j % n_lon);
  };
  verts.push_back(center + radius * Eigen::Vector3d(0, 0, 1));   // 0: north
  verts.push_back(center + radius * Eigen::Vector3d(0, 0, -1));  // 1: south
  for (int i = 1; i < n_lat; ++i) {
    const double phi = kPi * i / n_lat;
    for (int j = 0; j < n_lon; ++j) {
      const double th = 2 * kPi * j / n_lon;
      verts.push_back(center + radius * Eigen::Vector3d(std::sin(phi) * std::cos(th),
                                                        std::sin(phi) * std::sin(th), std::cos(phi)));
    }
  }
  std::vector<std::array<int, 3>> tris;
  for (int j = 0; j < n_lon; ++j) {
    tris.push_back({0, at(1, j), at(1, j + 1)});
    tris.push_back({1, at(n_lat - 1, j + 1), at(n_lat - 1, j)});
  }
  for (int i = 1; i + 1 < n_lat; ++i)
    for (int j = 0; j < n_lon; ++j) {
      tris.push_back({at(i, j), at(i + 1, j), at(i + 1, j + 1)});
      tris.push_back({at(i, j), at(i + 1, j + 1), at(i, j + 1)});
    }
  SimplicialManifold m;
  m.intrinsic_dim = 2;
  m.vertices.resize(3, static_cast<Eigen::Index>(verts.size()));
  for (size_t i = 0; i < verts.size(); ++i) m.vertices.col(static_cast<Eigen::Index>(i)) = verts[i];
  m.simplices.resize(3, static_cast<Eigen::Index>(tris.size()));
  for (size_t t = 0; t < tris.size(); ++t)
    for (int k = 0; k < 3; ++k) m.simplices(k, static_cast<Eigen::Index>(t)) = tris[t][static_cast<size_t>(k)];
  m.multiplicities = Eigen::VectorXd::Ones(m.simplex_count());
  validate(m);
  return m;
}

SimplicialManifold hemisphere(double radius, int n_lat, int n_lon, const Eigen::Vector3d& center) {
  if (n_lat < 3 || n_lat % 2 != 0) throw std::invalid_argument("hemisphere: n_lat must be even and >= 4");
  SimplicialManifold full = uv_sphere(radius, n_lat, n_lon, center);
  std::vector<Eigen::Index> keep;
  const double z_mid = center[2];
  for (Eigen::Index s = 0; s < full.simplex_count(); ++s) {
    double zc = 0;
    for (int k = 0; k < 3; ++k) zc += full.vertices(2, full.simplices(k, s));
    if (zc / 3 > z_mid) keep.push_back(s);
  }
  SimplicialManifold m;
  m.intrinsic_dim = 2;
  m.vertices = full.vertices;
  m.simplices.resize(3, static_cast<Eigen::Index>(keep.size()));
  m.multiplicities.resize(static_cast<Eigen::Index>(keep.size()));
  for (size_t c = 0; c < keep.size(); ++c) {
    m.simplices.col(static_cast<Eigen::Index>(c)) = full.simplices.col(keep[c]);
    m.multiplicities[static_cast<Eigen::Index>(c)] = 1.0;
  }
  m = drop_unused_vertices(m);
  validate(m);
  return m;
}

SimplicialManifold torus_mesh(double R, double r, int n_major, int n_minor) {
  if (!(R > r && r > 0)) throw std::invalid_argument("torus_mesh: need R > r > 0");
  if (n_major < 3 || n_minor < 3) throw std::invalid_argument("torus_mesh: need n_major, n_minor >= 3");
  Eigen::MatrixXd verts(3, n_major * n_minor);
  auto at = [&](int i, int j) { return (i % n_major) * n_minor + (j % n_minor); };
  for (int i = 0; i < n_major; ++i) {
    const double u = 2 * kPi * i / n_major;
    for (int j = 0; j < n_minor; ++j) {
      const double v = 2 * kPi * j / n_minor;
      verts.col(at(i, j)) = Eigen::Vector3d((R + r * std::cos(v)) * std::cos(u),
                                            (R + r * std::cos(v)) * std::sin(u), r * std::sin(v));
    }
  }
  SimplicialManifold m;
  m.intrinsic_dim = 2;
  m.vertices = verts;
  m.simplices.resize(3, 2 * n_major * n_minor);
  Eigen::Index c = 0;
  for (int i = 0; i < n_major; ++i)
    for (int j = 0; j < n_minor; ++j) {
      m.simplices.col(c++) << at(i, j), at(i + 1, j), at(i + 1, j + 1);
      m.simplices.col(c++) << at(i, j), at(i + 1, j + 1), at(i, j + 1);
    }
  m.multiplicities = Eigen::VectorXd::Ones(m.simplex_count());
  validate(m);
  return m;
}

SimplicialManifold figure_eight(int segments_per_lobe, double radius) {
  if (segments_per_lobe < 8) throw std::invalid_argument("figure_eight: need at least 8 segments per lobe");
  // Half-step phase keeps the tangency point mid-edge rather than a vertex.
  const double phase = kPi / segments_per_lobe;
  SimplicialManifold left =
      circle_polyline(radius, segments_per_lobe, Eigen::Vector2d(-radius, 0), phase);
  SimplicialManifold right =
      circle_polyline(radius, segments_per_lobe, Eigen::Vector2d(radius, 0), kPi + phase);
  return merge(left, right);
}

SimplicialManifold annulus_band(double r0, double h0, double r1, double h1, int segments) {
  if (segments < 3) throw std::invalid_argument("annulus_band: need at least 3 segments");
  if (!(r0 > 0) || !(r1 > 0)) throw std::invalid_argument("annulus_band: radii must be positive");
  std::vector<Eigen::MatrixXd> rings(2);
  for (int k = 0; k < 2; ++k) {
    const double r = k == 0 ? r0 : r1;
    const double h = k == 0 ? h0 : h1;
    rings[static_cast<size_t>(k)].resize(3, segments);
    for (int j = 0; j < segments; ++j) {
      const double a = 2 * kPi * j / segments;
      rings[static_cast<size_t>(k)].col(j) = Eigen::Vector3d(r * std::cos(a), r * std::sin(a), h);
    }
  }
  MatXi loop(2, segments);
  for (int j = 0; j < segments; ++j) {
    loop(0, j) = j;
    loop(1, j) = (j + 1) % segments;
  }
  SimplicialManifold m = loft_rings<double>(rings, loop, Eigen::VectorXd::Ones(segments));
  validate(m);
  return m;
}

SimplicialManifold plane_square(double half_side, int res, double height) {
  if (res < 1) throw std::invalid_argument("plane_square: need res >= 1");
  if (!(half_side > 0)) throw std::invalid_argument("plane_square: half_side must be positive");
  const int n = res + 1;
  Eigen::MatrixXd verts(3, n * n);
  auto at = [&](int i, int j) { return i * n + j; };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      verts.col(at(i, j)) = Eigen::Vector3d(-half_side + 2 * half_side * i / res,
                                            -half_side + 2 * half_side * j / res, height);
  SimplicialManifold m;
  m.intrinsic_dim = 2;
  m.vertices = verts;
  m.simplices.resize(3, 2 * res * res);
  Eigen::Index c = 0;
  for (int i = 0; i < res; ++i)
    for (int j = 0; j < res; ++j) {
      m.simplices.col(c++) << at(i, j), at(i + 1, j), at(i + 1, j + 1);
      m.simplices.col(c++) << at(i, j), at(i + 1, j + 1), at(i, j + 1);
    }
  m.multiplicities = Eigen::VectorXd::Ones(m.simplex_count());
  validate(m);
  return m;
}

}  // namespace gaussflow
