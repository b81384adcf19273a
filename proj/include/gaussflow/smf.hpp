#pragma once

#include <iosfwd>
#include <string>

#include "gaussflow/simplicial.hpp"

namespace gaussflow {

// Text mesh format:
//   line 1: "smf <intrinsic_dim> <ambient_dim>"
//   line 2: "<vertex_count> <simplex_count>"
//   one line per vertex with ambient_dim coordinates,
//   one line per simplex with intrinsic_dim+1 vertex indices and an optional
//   trailing multiplicity (default 1).
// Whitespace separates tokens; nothing else is allowed. Coordinates are
// written with enough digits to reproduce the double exactly.

// Parses a mesh and validates it. Throws std::invalid_argument with a line
// reference on malformed input.
SimplicialManifold read_smf(std::istream& in);
SimplicialManifold read_smf(const std::string& path);

void write_smf(std::ostream& out, const SimplicialManifold& m);

// Writes to a temporary file beside the target and renames it into place, so
// readers never observe a partial mesh.
void write_smf(const std::string& path, const SimplicialManifold& m);

}  // namespace gaussflow
