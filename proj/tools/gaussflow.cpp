// Command-line entry point: measure density functionals on mesh files,
// verify the inequality chains, and generate reference meshes. Reports are
// schema-versioned JSON on stdout (or written atomically with --out); mesh
// files use the SMF text format.

#include <CLI11.hpp>
#include <json.hpp>

#include <Eigen/Core>

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "gaussflow/boundary_sweep.hpp"
#include "gaussflow/densities.hpp"
#include "gaussflow/errors.hpp"
#include "gaussflow/flow.hpp"
#include "gaussflow/gaussian.hpp"
#include "gaussflow/generators.hpp"
#include "gaussflow/slicing.hpp"
#include "gaussflow/smf.hpp"
#include "gaussflow/translators.hpp"

using nlohmann::ordered_json;
using namespace gaussflow;

namespace {

constexpr int kOk = 0;
constexpr int kBadInput = 2;
constexpr int kNumericFailure = 3;
constexpr int kViolated = 4;
constexpr const char* kSchema = "gaussflow.report.v1";

void atomic_write_text(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open '" + tmp + "' for writing");
    out << text;
    out.flush();
    if (!out) {
      std::remove(tmp.c_str());
      throw std::runtime_error("write to '" + tmp + "' failed");
    }
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    const int err = errno;
    std::remove(tmp.c_str());
    throw std::runtime_error("rename to '" + path + "' failed: " + std::strerror(err));
  }
}

void emit(const ordered_json& report, const std::string& out_path) {
  const std::string text = report.dump(2) + "\n";
  if (out_path.empty())
    std::cout << text;
  else
    atomic_write_text(out_path, text);
}

ordered_json json_vector(const Eigen::VectorXd& v) {
  ordered_json arr = ordered_json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

ordered_json json_density(const DensityReport& r) {
  return ordered_json{{"value", r.value},
                      {"error", r.error},
                      {"witness", {{"center", json_vector(r.arg_center)}, {"scale", r.arg_scale}}},
                      {"boundary_flag", r.boundary_flag},
                      {"note", r.note},
                      {"evaluations", r.evaluations}};
}

Eigen::VectorXd parse_shift(const std::string& text) {
  std::vector<double> parts;
  std::stringstream in(text);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (tok.empty() || used != tok.size())
      throw std::invalid_argument("shift: bad coordinate '" + tok + "'");
    parts.push_back(value);
  }
  if (parts.empty()) throw std::invalid_argument("shift: empty coordinate list");
  return Eigen::Map<Eigen::VectorXd>(parts.data(), static_cast<Eigen::Index>(parts.size()));
}

// Key = value lines, # comments, unknown keys rejected by the caller.
std::map<std::string, std::string> parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open '" + path + "'");
  std::map<std::string, std::string> out;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream row(line);
    std::string key, eq, value;
    if (!(row >> key)) continue;
    if (!(row >> eq) || eq != "=" || !(row >> value))
      throw std::invalid_argument("config: line " + std::to_string(lineno) +
                                  ": expected 'key = value'");
    std::string rest;
    if (row >> rest)
      throw std::invalid_argument("config: line " + std::to_string(lineno) + ": trailing content");
    if (!out.emplace(key, value).second)
      throw std::invalid_argument("config: duplicate key '" + key + "'");
  }
  return out;
}

double config_number(std::map<std::string, std::string>& cfg, const std::string& key,
                     double fallback) {
  const auto it = cfg.find(key);
  if (it == cfg.end()) return fallback;
  size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(it->second, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (it->second.empty() || used != it->second.size())
    throw std::invalid_argument("config: key '" + key + "': bad number '" + it->second + "'");
  cfg.erase(it);
  return value;
}

struct ReaperRun {
  SimplicialManifold curve;
  BoundaryMotion motion;
};

// Grim reaper initialized so its cut height meets the translator motion at
// t = a; the only curve family the monotonicity runner exposes.
ReaperRun reaper_run(double v, double y_cut, int res, double a) {
  ReaperRun run;
  run.curve = grim_reaper(v, y_cut, res);
  const double x_cut = run.curve.vertices(0, run.curve.vertex_count() - 1);
  run.motion = translator_motion(two_points(2 * x_cut), y_cut / v - a, v);
  return run;
}

int env_thread_cap() {
  const char* raw = std::getenv("GAUSSFLOW_THREADS");
  if (raw == nullptr) return 0;
  char* end = nullptr;
  const long value = std::strtol(raw, &end, 10);
  if (end == raw || *end != '\0' || value < 1)
    throw std::invalid_argument("GAUSSFLOW_THREADS must be a positive integer");
  return static_cast<int>(value);
}

struct MeasureArgs {
  std::string mesh_path;
  std::string out_path;
  std::string shift_text;
  double tol = 1e-5;
  int seed = 0;
};

// Shared flag set for the measurement subcommands.
MeasureArgs* add_measure_flags(CLI::App* cmd, bool with_shift) {
  auto* args = new MeasureArgs();
  cmd->add_option("mesh", args->mesh_path, "input mesh (.smf)")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--tol", args->tol, "absolute tolerance")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", args->seed, "seed for any randomized start sets");
  cmd->add_option("--out", args->out_path, "write the JSON report here instead of stdout");
  if (with_shift)
    cmd->add_option("--shift", args->shift_text, "cone point as comma-separated coordinates")
        ->required();
  return args;
}

ordered_json report_header(const std::string& command, const MeasureArgs& args) {
  return ordered_json{{"schema", kSchema}, {"command", command}, {"input", args.mesh_path},
                      {"seed", args.seed}};
}

int run_measure(const std::string& command, const MeasureArgs& args) {
  const SimplicialManifold mesh = read_smf(args.mesh_path);
  ordered_json report = report_header(command, args);
  SearchOptions search;
  search.quad_tol = args.tol;

  if (command == "phi-area") {
    const auto res = phi_area(mesh, args.tol);
    report["value"] = res.value;
    report["error"] = res.error;
  } else if (command == "cone-density") {
    const Eigen::VectorXd shift = parse_shift(args.shift_text);
    report["shift"] = json_vector(shift);
    report["value"] = cone_density(mesh, shift);
    report["error"] = 0.0;
  } else {
    const DensityReport res = command == "entropy"         ? entropy(mesh, search)
                              : command == "mdr"           ? max_density_ratio(mesh, search)
                                                           : max_cone_density(mesh, search);
    report["value"] = res.value;
    report["error"] = res.error;
    report["witness"] = json_density(res)["witness"];
    report["flags"] = {{"boundary", res.boundary_flag}, {"note", res.note}};
    report["evaluations"] = res.evaluations;
  }
  emit(report, args.out_path);
  return kOk;
}

struct TranslatorBoundArgs {
  std::string gen = "grim-reaper";
  std::string out_path;
  double v = 1.0;
  double ycut = 2.0;
  double rmax = 2.0;
  int res = 0;
  double tol = 1e-5;
  int seed = 0;
};

int run_translator_bound(const TranslatorBoundArgs& args) {
  SimplicialManifold mesh;
  if (args.gen == "grim-reaper")
    mesh = grim_reaper(args.v, args.ycut, args.res > 0 ? args.res : 1024);
  else
    mesh = bowl_cap(2, args.v, args.rmax, args.res > 0 ? args.res : 16);

  EntropyBoundConfig cfg;
  cfg.search.quad_tol = args.tol;
  const EntropyBoundReport rep = verify_entropy_bound(mesh, cfg);

  ordered_json components = ordered_json::array();
  for (const auto& c : rep.components)
    components.push_back({{"height", c.height},
                          {"component_count", c.component_count},
                          {"entropy", json_density(c.entropy)},
                          {"mcd", json_density(c.mcd)},
                          {"mdr", json_density(c.mdr)}});

  const bool ok = rep.margin >= -rep.tol && rep.margin_mdr >= -rep.tol &&
                  rep.margin_convex >= -rep.tol;
  ordered_json report{{"schema", kSchema},
                      {"command", "verify translator-bound"},
                      {"generator", args.gen},
                      {"seed", args.seed},
                      {"entropy_M", json_density(rep.entropy_M)},
                      {"components", components},
                      {"bound", rep.bound},
                      {"bound_coeff2", rep.bound_coeff2},
                      {"bound_mdr", rep.bound_mdr},
                      {"convex_bound", rep.convex_bound},
                      {"margin", rep.margin},
                      {"margin_mdr", rep.margin_mdr},
                      {"margin_convex", rep.margin_convex},
                      {"tol", rep.tol},
                      {"ok", ok}};
  emit(report, args.out_path);
  return ok ? kOk : kViolated;
}

struct SweepBoundArgs {
  std::string gen;
  std::string mesh_path;
  std::string out_path;
  double a = 0;
  double v = 1.0;
  double r = 1.0;
  double sep = 2.0;
  double half = 0.5;
  int n = 96;
  int per_edge = 24;
  int sides = 4;
  double tol = 1e-4;
  int seed = 0;
};

int run_sweep_bound(const SweepBoundArgs& args) {
  SimplicialManifold sigma;
  if (!args.mesh_path.empty())
    sigma = read_smf(args.mesh_path);
  else if (args.gen == "circle")
    sigma = circle_polyline(args.r, args.n);
  else if (args.gen == "two-points")
    sigma = two_points(args.sep);
  else if (args.gen == "square")
    sigma = square_boundary(args.half, args.per_edge);
  else if (args.gen == "polygon")
    sigma = regular_polygon_boundary(args.sides, args.r, args.per_edge);
  else
    throw std::invalid_argument("sweep-bound: pass --mesh or --gen");

  MainCalculationOptions opts;
  opts.quad_tol = args.tol;
  const MainCalculationReport rep = verify_main_calculation(sigma, args.a, args.v, opts);

  const bool ok = rep.margin_chain >= -rep.tol && rep.margin_cone >= -rep.tol &&
                  rep.margin_mcd >= -rep.tol;
  ordered_json report{{"schema", kSchema},
                      {"command", "verify sweep-bound"},
                      {"generator", args.mesh_path.empty() ? args.gen : args.mesh_path},
                      {"offset_a", args.a},
                      {"speed_v", args.v},
                      {"seed", args.seed},
                      {"phi_S", rep.phi_S},
                      {"phi_S_error", rep.phi_S_error},
                      {"entropy_sigma", json_density(rep.entropy_sigma)},
                      {"mcd_sigma", json_density(rep.mcd_sigma)},
                      {"theta_cone", rep.theta_cone},
                      {"n_surface_quad", rep.n_surface_quad},
                      {"n_surface_closed", rep.n_surface_closed},
                      {"n_lemma", rep.n_lemma},
                      {"linear_case", rep.linear_case},
                      {"bound_chain", rep.bound_chain},
                      {"bound_cone", rep.bound_cone},
                      {"bound_mcd", rep.bound_mcd},
                      {"margin_chain", rep.margin_chain},
                      {"margin_cone", rep.margin_cone},
                      {"margin_mcd", rep.margin_mcd},
                      {"tol", rep.tol},
                      {"ok", ok}};
  emit(report, args.out_path);
  return ok ? kOk : kViolated;
}

struct SlicingArgs {
  std::string mesh_path;
  std::string out_path;
  double tol = 1e-5;
  int seed = 0;
};

int run_slicing(const SlicingArgs& args) {
  const SimplicialManifold mesh = read_smf(args.mesh_path);
  const GaussSlicingReport rep = verify_gauss_slicing(mesh, args.tol);
  const bool ok = rep.margin >= -rep.tol;
  ordered_json report{{"schema", kSchema},
                      {"command", "verify slicing"},
                      {"input", args.mesh_path},
                      {"seed", args.seed},
                      {"lhs", rep.lhs},
                      {"rhs", rep.rhs},
                      {"proj_term", rep.proj_term},
                      {"slice_term", rep.slice_term},
                      {"margin", rep.margin},
                      {"tol", rep.tol},
                      {"ok", ok}};
  emit(report, args.out_path);
  return ok ? kOk : kViolated;
}

struct MonotonicityArgs {
  std::string config_path;
  std::string out_path;
  std::string csv_path;
  int seed = 0;
};

int run_monotonicity(const MonotonicityArgs& args) {
  auto cfg_map = parse_config(args.config_path);
  const double v = config_number(cfg_map, "v", 1.0);
  const double ycut = config_number(cfg_map, "ycut", 2.0);
  const int res = static_cast<int>(config_number(cfg_map, "res", 600));

  MonotonicityConfig cfg;
  cfg.a = config_number(cfg_map, "a", cfg.a);
  cfg.b = config_number(cfg_map, "b", cfg.b);
  cfg.dt = config_number(cfg_map, "dt", cfg.dt);
  cfg.h = config_number(cfg_map, "h", cfg.h);
  cfg.report_count = static_cast<int>(config_number(cfg_map, "report_count", cfg.report_count));
  cfg.tol_constant = config_number(cfg_map, "tol_constant", cfg.tol_constant);
  cfg.quad_tol = config_number(cfg_map, "quad_tol", cfg.quad_tol);

  std::string csv_path = args.csv_path;
  if (const auto it = cfg_map.find("csv"); it != cfg_map.end()) {
    if (csv_path.empty()) csv_path = it->second;
    cfg_map.erase(it);
  }
  if (!cfg_map.empty())
    throw std::invalid_argument("config: unknown key '" + cfg_map.begin()->first + "'");

  const ReaperRun run = reaper_run(v, ycut, res, cfg.a);
  const MonotonicityReport rep = run_and_verify(run.curve, run.motion, cfg);
  if (!csv_path.empty()) atomic_write_text(csv_path, monotonicity_csv(rep));

  ordered_json rows = ordered_json::array();
  for (const auto& row : rep.rows)
    rows.push_back({{"t", row.t},
                    {"phi_rescaled", row.phi_rescaled},
                    {"swept_cumulative", row.swept_cumulative},
                    {"margin", row.margin}});
  ordered_json report{{"schema", kSchema},
                      {"command", "verify monotonicity"},
                      {"config", args.config_path},
                      {"seed", args.seed},
                      {"curve", "grim-reaper"},
                      {"v", v},
                      {"ycut", ycut},
                      {"res", res},
                      {"window", {cfg.a, cfg.b}},
                      {"dt", cfg.dt},
                      {"h", cfg.h},
                      {"tol_model", rep.tol_model},
                      {"tol_constant", rep.tol_constant},
                      {"worst_margin", rep.worst_margin},
                      {"rows", rows},
                      {"ok", rep.ok}};
  emit(report, args.out_path);
  return rep.ok ? kOk : kViolated;
}

struct GenerateArgs {
  std::string out_path;
  double r = 1.0;
  double sep = 2.0;
  double v = 1.0;
  double ycut = 2.0;
  double rmax = 2.0;
  double phase = 0.0;
  int n = 128;
  int per_edge = 1;
  int sides = 4;
  int res = 256;
};

int run_generate(const std::string& kind, const GenerateArgs& args) {
  SimplicialManifold mesh;
  if (kind == "circle")
    mesh = circle_polyline(args.r, args.n, Eigen::Vector2d::Zero(), args.phase);
  else if (kind == "polygon")
    mesh = regular_polygon_boundary(args.sides, args.r, args.per_edge);
  else if (kind == "two-points")
    mesh = two_points(args.sep);
  else if (kind == "grim-reaper")
    mesh = grim_reaper(args.v, args.ycut, args.res);
  else
    mesh = bowl_cap(2, args.v, args.rmax, args.res);

  const std::string out = args.out_path.empty() ? kind + ".smf" : args.out_path;
  write_smf(out, mesh);
  ordered_json report{{"schema", kSchema},
                      {"command", "generate " + kind},
                      {"out", out},
                      {"vertices", mesh.vertex_count()},
                      {"simplices", mesh.simplex_count()}};
  std::cout << report.dump(2) << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gaussian geometric functionals on discretized manifolds"};
  app.require_subcommand(1);

  // Measurement commands.
  std::vector<std::pair<std::string, MeasureArgs*>> measures;
  for (const char* name : {"phi-area", "entropy", "mdr", "mcd", "cone-density"}) {
    const bool with_shift = std::string(name) == "cone-density";
    const char* what = with_shift ? "cone density at a shifted cone point"
                       : std::string(name) == "phi-area"
                           ? "Gaussian-weighted area at the standard window"
                           : "supremum-form density functional";
    auto* cmd = app.add_subcommand(name, what);
    measures.emplace_back(name, add_measure_flags(cmd, with_shift));
  }

  // Verification commands.
  auto* verify = app.add_subcommand("verify", "check an inequality chain; exit 4 on violation");
  verify->require_subcommand(1);

  TranslatorBoundArgs tb;
  auto* tb_cmd = verify->add_subcommand("translator-bound",
                                        "entropy of a translator vs its boundary-plane bound");
  tb_cmd->add_option("--gen", tb.gen, "translator family")
      ->check(CLI::IsMember({"grim-reaper", "bowl-cap"}));
  tb_cmd->add_option("--v", tb.v, "translation speed")->check(CLI::PositiveNumber);
  tb_cmd->add_option("--ycut", tb.ycut, "grim reaper cut height")->check(CLI::PositiveNumber);
  tb_cmd->add_option("--rmax", tb.rmax, "bowl cap radius")->check(CLI::PositiveNumber);
  tb_cmd->add_option("--res", tb.res, "mesh resolution (0 = family default)");
  tb_cmd->add_option("--tol", tb.tol, "quadrature tolerance")->check(CLI::PositiveNumber);
  tb_cmd->add_option("--seed", tb.seed, "seed for any randomized start sets");
  tb_cmd->add_option("--out", tb.out_path, "write the JSON report here");

  SweepBoundArgs sb;
  auto* sb_cmd = verify->add_subcommand("sweep-bound",
                                        "translator track area vs the cone-plus-entropy chain");
  sb_cmd->add_option("--gen", sb.gen, "boundary generator")
      ->check(CLI::IsMember({"circle", "two-points", "square", "polygon"}));
  sb_cmd->add_option("--mesh", sb.mesh_path, "boundary mesh (.smf)")->check(CLI::ExistingFile);
  sb_cmd->add_option("--a", sb.a, "tilt coefficient")->required();
  sb_cmd->add_option("--v", sb.v, "speed coefficient")->required();
  sb_cmd->add_option("--r", sb.r, "circle/polygon radius")->check(CLI::PositiveNumber);
  sb_cmd->add_option("--sep", sb.sep, "two-point separation")->check(CLI::PositiveNumber);
  sb_cmd->add_option("--half", sb.half, "square half side")->check(CLI::PositiveNumber);
  sb_cmd->add_option("--n", sb.n, "circle segments")->check(CLI::PositiveNumber);
  sb_cmd->add_option("--per-edge", sb.per_edge, "subdivisions per polygon edge")
      ->check(CLI::PositiveNumber);
  sb_cmd->add_option("--sides", sb.sides, "polygon sides")->check(CLI::Range(3, 1 << 20));
  sb_cmd->add_option("--tol", sb.tol, "quadrature tolerance")->check(CLI::PositiveNumber);
  sb_cmd->add_option("--seed", sb.seed, "seed for any randomized start sets");
  sb_cmd->add_option("--out", sb.out_path, "write the JSON report here");

  SlicingArgs sl;
  auto* sl_cmd = verify->add_subcommand("slicing",
                                        "Gaussian area vs projection-plus-slices decomposition");
  sl_cmd->add_option("--mesh", sl.mesh_path, "mesh (.smf)")->required()->check(CLI::ExistingFile);
  sl_cmd->add_option("--tol", sl.tol, "quadrature tolerance")->check(CLI::PositiveNumber);
  sl_cmd->add_option("--seed", sl.seed, "seed for any randomized start sets");
  sl_cmd->add_option("--out", sl.out_path, "write the JSON report here");

  MonotonicityArgs mo;
  auto* mo_cmd = verify->add_subcommand("monotonicity",
                                        "flow run: rescaled area decrease vs swept boundary area");
  mo_cmd->add_option("--config", mo.config_path, "run configuration (key = value lines)")
      ->required()
      ->check(CLI::ExistingFile);
  mo_cmd->add_option("--csv", mo.csv_path, "write the per-report CSV here");
  mo_cmd->add_option("--seed", mo.seed, "seed for any randomized start sets");
  mo_cmd->add_option("--out", mo.out_path, "write the JSON report here");

  // Generators.
  auto* generate = app.add_subcommand("generate", "write a reference mesh (.smf)");
  generate->require_subcommand(1);
  std::map<std::string, std::pair<CLI::App*, GenerateArgs>> gens;
  for (const char* name : {"circle", "polygon", "two-points", "grim-reaper", "bowl-cap"}) {
    auto* cmd = generate->add_subcommand(name, std::string("generate a ") + name + " mesh");
    auto& args = gens[name];
    args.first = cmd;
    cmd->add_option("--out", args.second.out_path, "output path (default <name>.smf)");
    if (std::string(name) == "circle") {
      cmd->add_option("--r", args.second.r, "radius")->check(CLI::PositiveNumber);
      cmd->add_option("--n", args.second.n, "segments")->check(CLI::Range(3, 1 << 24));
      cmd->add_option("--phase", args.second.phase, "rotation of the first vertex");
    } else if (std::string(name) == "polygon") {
      cmd->add_option("--sides", args.second.sides, "sides")->check(CLI::Range(3, 1 << 20));
      cmd->add_option("--r", args.second.r, "circumradius")->check(CLI::PositiveNumber);
      cmd->add_option("--per-edge", args.second.per_edge, "subdivisions per edge")
          ->check(CLI::PositiveNumber);
    } else if (std::string(name) == "two-points") {
      cmd->add_option("--sep", args.second.sep, "separation")->check(CLI::PositiveNumber);
    } else if (std::string(name) == "grim-reaper") {
      cmd->add_option("--v", args.second.v, "speed")->check(CLI::PositiveNumber);
      cmd->add_option("--ycut", args.second.ycut, "cut height")->check(CLI::PositiveNumber);
      cmd->add_option("--res", args.second.res, "segments")->check(CLI::Range(8, 1 << 24));
    } else {
      cmd->add_option("--v", args.second.v, "speed")->check(CLI::PositiveNumber);
      cmd->add_option("--rmax", args.second.rmax, "cap radius")->check(CLI::PositiveNumber);
      cmd->add_option("--res", args.second.res, "radial resolution")->check(CLI::Range(8, 4096));
    }
  }

  try {
    Eigen::setNbThreads(env_thread_cap());
    app.parse(argc, argv);

    for (const auto& [name, margs] : measures)
      if (app.get_subcommand(name)->parsed()) return run_measure(name, *margs);
    if (tb_cmd->parsed()) return run_translator_bound(tb);
    if (sb_cmd->parsed()) return run_sweep_bound(sb);
    if (sl_cmd->parsed()) return run_slicing(sl);
    if (mo_cmd->parsed()) return run_monotonicity(mo);
    for (auto& [name, gen] : gens)
      if (gen.first->parsed()) return run_generate(name, gen.second);
    return kBadInput;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kBadInput;
  } catch (const SingularConeError& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return kNumericFailure;
  } catch (const NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return kNumericFailure;
  } catch (const UnsupportedBoundaryError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::exception& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return kNumericFailure;
  }
}
