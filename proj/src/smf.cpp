#include "gaussflow/smf.hpp"

#include <cerrno>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace gaussflow {

namespace {

[[noreturn]] void fail(long line, const std::string& what) {
  throw std::invalid_argument("smf: line " + std::to_string(line) + ": " + what);
}

// Splits on blanks; returns false at end of input. Blank lines are rejected
// by callers expecting content, so they are not skipped silently.
bool next_tokens(std::istream& in, long& line, std::vector<std::string>& tokens) {
  std::string raw;
  if (!std::getline(in, raw)) return false;
  ++line;
  tokens.clear();
  std::istringstream split(raw);
  std::string tok;
  while (split >> tok) tokens.push_back(tok);
  return true;
}

long parse_count(const std::string& tok, long line, const char* what) {
  size_t used = 0;
  long value = 0;
  try {
    value = std::stol(tok, &used);
  } catch (const std::exception&) {
    fail(line, std::string("expected ") + what + ", got '" + tok + "'");
  }
  if (used != tok.size() || value < 0)
    fail(line, std::string("expected ") + what + ", got '" + tok + "'");
  return value;
}

double parse_number(const std::string& tok, long line) {
  size_t used = 0;
  double value = 0;
  try {
    value = std::stod(tok, &used);
  } catch (const std::exception&) {
    fail(line, "expected a number, got '" + tok + "'");
  }
  if (used != tok.size()) fail(line, "expected a number, got '" + tok + "'");
  return value;
}

}  // namespace

SimplicialManifold read_smf(std::istream& in) {
  long line = 0;
  std::vector<std::string> tok;

  if (!next_tokens(in, line, tok)) fail(1, "empty input");
  if (tok.size() != 3 || tok[0] != "smf")
    fail(line, "expected header 'smf <intrinsic_dim> <ambient_dim>'");
  const long d = parse_count(tok[1], line, "intrinsic dimension");
  const long n = parse_count(tok[2], line, "ambient dimension");
  if (n < 1) fail(line, "ambient dimension must be at least 1");
  if (d > n) fail(line, "intrinsic dimension exceeds ambient dimension");

  if (!next_tokens(in, line, tok)) fail(line + 1, "missing count line");
  if (tok.size() != 2) fail(line, "expected '<vertex_count> <simplex_count>'");
  const long nv = parse_count(tok[0], line, "vertex count");
  const long ns = parse_count(tok[1], line, "simplex count");

  SimplicialManifold m;
  m.intrinsic_dim = static_cast<int>(d);
  m.vertices.resize(n, nv);
  m.simplices.resize(d + 1, ns);
  m.multiplicities.resize(ns);

  for (long v = 0; v < nv; ++v) {
    if (!next_tokens(in, line, tok)) fail(line + 1, "missing vertex line");
    if (static_cast<long>(tok.size()) != n)
      fail(line, "expected " + std::to_string(n) + " coordinates, got " +
                     std::to_string(tok.size()));
    for (long k = 0; k < n; ++k) m.vertices(k, v) = parse_number(tok[k], line);
  }

  for (long s = 0; s < ns; ++s) {
    if (!next_tokens(in, line, tok)) fail(line + 1, "missing simplex line");
    if (static_cast<long>(tok.size()) != d + 1 && static_cast<long>(tok.size()) != d + 2)
      fail(line, "expected " + std::to_string(d + 1) + " indices plus optional multiplicity");
    for (long k = 0; k <= d; ++k) {
      const long idx = parse_count(tok[k], line, "vertex index");
      if (idx >= nv) fail(line, "vertex index " + std::to_string(idx) + " out of range");
      m.simplices(k, s) = static_cast<int>(idx);
    }
    m.multiplicities[s] =
        static_cast<long>(tok.size()) == d + 2 ? parse_number(tok[d + 1], line) : 1.0;
  }

  while (next_tokens(in, line, tok))
    if (!tok.empty()) fail(line, "trailing content after declared simplices");

  try {
    validate(m);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(std::string("smf: ") + e.what());
  }
  return m;
}

SimplicialManifold read_smf(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("smf: cannot open '" + path + "'");
  return read_smf(in);
}

void write_smf(std::ostream& out, const SimplicialManifold& m) {
  validate(m);
  const Eigen::Index n = m.ambient_dim();
  out << "smf " << m.intrinsic_dim << ' ' << n << '\n';
  out << m.vertex_count() << ' ' << m.simplex_count() << '\n';

  char buf[32];
  for (Eigen::Index v = 0; v < m.vertex_count(); ++v) {
    for (Eigen::Index k = 0; k < n; ++k) {
      std::snprintf(buf, sizeof buf, "%.17g", m.vertices(k, v));
      out << (k ? " " : "") << buf;
    }
    out << '\n';
  }
  for (Eigen::Index s = 0; s < m.simplex_count(); ++s) {
    for (int k = 0; k <= m.intrinsic_dim; ++k) out << (k ? " " : "") << m.simplices(k, s);
    const double mult = m.multiplicity(s);
    if (mult != 1.0) {
      std::snprintf(buf, sizeof buf, "%.17g", mult);
      out << ' ' << buf;
    }
    out << '\n';
  }
}

void write_smf(const std::string& path, const SimplicialManifold& m) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw std::runtime_error("smf: cannot open '" + tmp + "' for writing");
    write_smf(out, m);
    out.flush();
    if (!out) {
      std::remove(tmp.c_str());
      throw std::runtime_error("smf: write to '" + tmp + "' failed");
    }
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    const int err = errno;
    std::remove(tmp.c_str());
    throw std::runtime_error("smf: rename to '" + path + "' failed: " + std::strerror(err));
  }
}

}  // namespace gaussflow
