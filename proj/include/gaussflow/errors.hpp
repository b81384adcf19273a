#pragma once

#include <stdexcept>
#include <string>

namespace gaussflow {

// Thrown when a cone construction or radial reduction would place a mesh
// vertex at (or too near) the cone point.
struct SingularConeError : std::runtime_error {
  explicit SingularConeError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a mesh boundary is not a union of horizontal-hyperplane pieces.
struct UnsupportedBoundaryError : std::runtime_error {
  explicit UnsupportedBoundaryError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when an iterative numeric procedure fails to meet its contract
// (ODE step failure, quadrature budget exhaustion below tolerance, ...).
struct NumericError : std::runtime_error {
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace gaussflow
