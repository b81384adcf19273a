#pragma once

// Parametric test-object meshes. Everything returned here passes validate().

#include <Eigen/Dense>

#include "gaussflow/simplicial.hpp"

namespace gaussflow {

// Regular closed polyline on a circle; phase rotates the first vertex.
SimplicialManifold circle_polyline(double radius, int segments,
                                   const Eigen::Vector2d& center = Eigen::Vector2d::Zero(),
                                   double phase = 0.0);

// Open polyline from a to b in R^2 with `segments` equal pieces.
SimplicialManifold segment_polyline(const Eigen::Vector2d& a, const Eigen::Vector2d& b, int segments);

// Interval [a, b] in R^1 with `segments` equal pieces.
SimplicialManifold interval_mesh(double a, double b, int segments);

// Closed boundary of a regular polygon (circumradius given), each edge
// subdivided `per_edge` times.
SimplicialManifold regular_polygon_boundary(int sides, double circumradius, int per_edge = 1);

// Axis-aligned square boundary of half side `h` centered at the origin.
SimplicialManifold square_boundary(double half_side, int per_edge);

// Two points {-separation/2, +separation/2} in R^1.
SimplicialManifold two_points(double separation);

// Arbitrary point cloud (columns), optional multiplicities.
SimplicialManifold point_cloud(const Eigen::MatrixXd& points,
                               const Eigen::VectorXd& multiplicities = Eigen::VectorXd());

// Latitude-longitude sphere triangulation in R^3 (poles as fans).
SimplicialManifold uv_sphere(double radius, int n_lat, int n_lon,
                             const Eigen::Vector3d& center = Eigen::Vector3d::Zero());

// Upper half (z >= center_z) of the latitude-longitude sphere, boundary at
// the equator.
SimplicialManifold hemisphere(double radius, int n_lat, int n_lon,
                              const Eigen::Vector3d& center = Eigen::Vector3d::Zero());

// Torus of revolution about the z-axis: major radius R, tube radius r.
SimplicialManifold torus_mesh(double R, double r, int n_major, int n_minor);

// Two unit-radius circles tangent at the origin (centers at (+-radius, 0)),
// meshed so no vertex lands exactly on the tangency point.
SimplicialManifold figure_eight(int segments_per_lobe, double radius = 1.0);

// Lateral band (truncated-cone surface) between horizontal circles of radius
// r0 at height h0 and r1 at height h1; boundary is the two circles.
SimplicialManifold annulus_band(double r0, double h0, double r1, double h1, int segments);

// Flat triangulated square [-h, h]^2 at the given height in R^3.
SimplicialManifold plane_square(double half_side, int res, double height = 0.0);

}  // namespace gaussflow
