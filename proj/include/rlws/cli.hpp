#pragma once

// Command-line front end: `rlws <classify|portrait|orbit|mesh|verify> ...`.
// Exit codes: 0 success, 1 verification failure, 2 invalid input, 3 numerical failure.

#include <cstdlib>
#include <fstream>
#include <future>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rlws/error.hpp"
#include "rlws/io/report.hpp"
#include "rlws/io/svg.hpp"
#include "rlws/io/writers.hpp"
#include "rlws/level_curve.hpp"
#include "rlws/phase_core.hpp"
#include "rlws/profile_integrator.hpp"
#include "rlws/surface_geometry.hpp"
#include "rlws/verify.hpp"

namespace rlws::cli {

enum ExitCode : int { kSuccess = 0, kVerifyFailed = 1, kInvalidInput = 2, kNumericalFailure = 3 };

struct AlphaSweep {
  double from = 0.0;
  double to = 0.0;
  int count = 1;

  std::vector<double> values() const {
    std::vector<double> out;
    for (int k = 0; k < count; ++k)
      out.push_back(count == 1 ? from : from + (to - from) * k / (count - 1));
    return out;
  }
};

inline AlphaSweep parse_sweep(const std::string& text) {
  AlphaSweep s;
  std::istringstream in(text);
  std::string from, to, n;
  if (!std::getline(in, from, ':') || !std::getline(in, to, ':') || !std::getline(in, n) ||
      from.empty() || to.empty() || n.empty())
    throw Error(ErrorCode::InvalidArgument, "--alpha-sweep expects FROM:TO:N");
  try {
    std::size_t p1 = 0, p2 = 0, p3 = 0;
    s.from = std::stod(from, &p1);
    s.to = std::stod(to, &p2);
    s.count = std::stoi(n, &p3);
    if (p1 != from.size() || p2 != to.size() || p3 != n.size()) throw std::invalid_argument(text);
  } catch (const std::logic_error&) {
    throw Error(ErrorCode::InvalidArgument, "--alpha-sweep expects FROM:TO:N");
  }
  if (s.count < 1) throw Error(ErrorCode::InvalidArgument, "sweep count must be at least 1");
  return s;
}

struct RunConfig {
  std::string command;
  double a = 0.0, b = 0.0, c = 0.0;
  bool have_a = false, have_b = false, have_c = false;
  std::optional<double> alpha;
  std::optional<AlphaSweep> sweep;
  Tolerances tol;
  std::string out;
  int n_t = 64;
  int pole = 0;
  io::PortraitOptions portrait;

  std::vector<double> alphas() const {
    if (sweep) return sweep->values();
    if (alpha) return {*alpha};
    return {};
  }
};

namespace detail {

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::InvalidArgument, "cannot open output file " + path);
  f << content;
  if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write output file " + path);
}

inline std::string stem(const RunConfig& cfg) { return cfg.out.empty() ? cfg.command : cfg.out; }

inline double single_alpha(const RunConfig& cfg) {
  if (cfg.sweep) throw Error(ErrorCode::InvalidArgument, cfg.command + " takes a single --alpha");
  if (!cfg.alpha) throw Error(ErrorCode::InvalidArgument, cfg.command + " requires --alpha");
  return *cfg.alpha;
}

inline void require_in_range(const Coefficients& co, double alpha, const Tolerances& tol) {
  if (classify_level(co, alpha, tol).kind == LevelKind::OutOfRange) {
    const CriticalData cd = critical_data(co);
    std::ostringstream msg;
    msg << "alpha " << alpha << " lies outside the attained range [" << cd.alpha_min << ", "
        << cd.alpha0 << "]";
    throw Error(ErrorCode::InvalidArgument, msg.str());
  }
}

inline Orbit run_orbit(const Coefficients& co, double alpha, const Tolerances& tol) {
  require_in_range(co, alpha, tol);
  if (level_is_degenerate(co, alpha, tol))
    throw Error(ErrorCode::InvalidArgument,
                "level set consists of boundary points only; no profile curve exists");
  const PhasePoint start = default_start(co, alpha, tol);
  return rotation_angle(integrate_profile(co, alpha, start, {}, tol), tol);
}

inline std::string dump(const io::Json& j) { return j.dump(2) + "\n"; }

}  // namespace detail

inline int cmd_classify(const RunConfig& cfg, const Coefficients& co, std::ostream& out) {
  io::Json j = io::report_header("classify", co);
  j["critical"] = io::critical_json(critical_data(co));
  const CriticalData cd = critical_data(co);
  const double b2 = 0.5 * co.b(), bc2 = 0.5 * co.b_plus_c();
  j["intervals"] = {{"incomplete_axis", {std::min(0.0, b2), std::max(0.0, b2)}},
                    {"incomplete_boundary", {b2, bc2}},
                    {"complete", {std::max(0.0, bc2), cd.alpha0}}};
  const std::vector<double> alphas = cfg.alphas();
  std::vector<std::future<LevelClassification>> jobs;
  for (double alpha : alphas)
    jobs.push_back(std::async(std::launch::async,
                              [&co, alpha, tol = cfg.tol] { return classify_level(co, alpha, tol); }));
  io::Json levels = io::Json::array();
  for (std::size_t i = 0; i < alphas.size(); ++i)
    levels.push_back(io::classification_json(alphas[i], jobs[i].get()));
  j["levels"] = std::move(levels);
  const std::string text = detail::dump(j);
  if (!cfg.out.empty()) detail::write_file(cfg.out + ".json", text);
  out << text;
  return kSuccess;
}

inline int cmd_portrait(const RunConfig& cfg, const Coefficients& co, std::ostream& out) {
  io::PortraitOptions opts = cfg.portrait;
  if (opts.levels.empty()) opts.levels = cfg.alphas();
  const io::Portrait p = io::compute_portrait(co, opts, cfg.tol);

  std::ostringstream svg, csv;
  io::write_portrait_svg(svg, co, p, opts, cfg.tol);
  io::write_contour_csv(csv, p.contours);
  const std::string base = detail::stem(cfg);
  detail::write_file(base + ".svg", svg.str());
  detail::write_file(base + ".csv", csv.str());

  io::Json j = io::report_header("portrait", co);
  j["files"] = {base + ".svg", base + ".csv"};
  j["grid_n"] = opts.grid_n;
  io::Json levels = io::Json::array();
  for (std::size_t i = 0; i < p.levels.size(); ++i) {
    std::size_t vertices = 0;
    for (const auto& line : p.contours[i].polylines) vertices += line.size();
    levels.push_back({{"alpha", p.levels[i]},
                      {"point_marker", static_cast<bool>(p.point_levels[i])},
                      {"polylines", p.contours[i].polylines.size()},
                      {"vertices", vertices}});
  }
  j["levels"] = std::move(levels);
  out << detail::dump(j);
  return kSuccess;
}

inline int cmd_orbit(const RunConfig& cfg, const Coefficients& co, std::ostream& out,
                     std::ostream& err) {
  const double alpha = detail::single_alpha(cfg);
  const Orbit orbit = detail::run_orbit(co, alpha, cfg.tol);
  std::ostringstream csv;
  io::write_orbit_csv(csv, co, orbit, cfg.tol);
  io::Json j = io::report_header("orbit", co);
  const std::string base = detail::stem(cfg);
  j["files"] = {base + ".csv", base + ".json"};
  j["summary"] = io::orbit_summary_json(co, orbit, cfg.tol);
  if (io::has_singular_hit(orbit)) {
    j["warning"] = "k2 unbounded — see report";
    err << "warning: orbit reaches the singular locus; k2 is unbounded there\n";
  }
  const std::string text = detail::dump(j);
  detail::write_file(base + ".csv", csv.str());
  detail::write_file(base + ".json", text);
  out << text;
  return kSuccess;
}

inline int cmd_mesh(const RunConfig& cfg, const Coefficients& co, std::ostream& out,
                    std::ostream& err) {
  const double alpha = detail::single_alpha(cfg);
  const Orbit orbit = detail::run_orbit(co, alpha, cfg.tol);
  if (orbit.samples.size() < 2)
    throw Error(ErrorCode::InsufficientSamples, "orbit has fewer than two samples");
  const SurfaceMesh mesh = build_mesh(co, orbit, cfg.n_t);

  std::vector<int> order;
  order.push_back(cfg.pole != 0 ? cfg.pole : auto_pole(mesh));
  for (int p : kPoleOrder)
    if (p != order.front()) order.push_back(p);
  std::optional<ProjectedMesh> projected;
  for (int p : order) {
    try {
      projected = stereographic_project(mesh, p);
      break;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::PoleOnSurface) throw;
      err << "note: pole " << p << " lies on the surface, trying the next one\n";
    }
  }
  if (!projected) throw Error(ErrorCode::PoleOnSurface, "every projection pole lies on the surface");

  std::ostringstream obj;
  io::write_obj(obj, *projected);
  const std::string base = detail::stem(cfg);
  detail::write_file(base + ".obj", obj.str());
  detail::write_file(base + ".json", detail::dump(io::mesh_sidecar_json(co, mesh, projected->meta.pole)));

  io::Json j = io::report_header("mesh", co);
  j["alpha"] = alpha;
  j["files"] = {base + ".obj", base + ".json"};
  j["outcome"] = std::string(to_string(orbit.outcome.kind));
  j["vertices"] = mesh.vertices.size();
  j["faces"] = mesh.faces.size();
  j["n_s"] = mesh.n_s;
  j["n_t"] = mesh.n_t;
  j["closed_s"] = mesh.closed_s;
  j["periods"] = mesh.meta.periods;
  j["rotation_number"] = io::number(mesh.meta.rotation_number);
  j["pole"] = projected->meta.pole;
  out << detail::dump(j);
  return kSuccess;
}

inline int cmd_verify(const RunConfig& cfg, const Coefficients& co, std::ostream& out) {
  const double alpha = detail::single_alpha(cfg);
  const Orbit orbit = detail::run_orbit(co, alpha, cfg.tol);
  const VerifyReport rep = verify_level(co, alpha, orbit, {}, cfg.tol);
  io::Json j = io::report_header("verify", co);
  j["alpha"] = alpha;
  j["kind"] = std::string(to_string(classify_level(co, alpha, cfg.tol).kind));
  j["outcome"] = std::string(to_string(orbit.outcome.kind));
  io::Json checks = io::Json::array();
  for (const VerifyCheck& c : rep.checks) {
    io::Json cj = {{"name", c.name},
                   {"measured", io::number(c.measured)},
                   {"bound", io::number(c.bound)},
                   {"pass", c.pass}};
    if (!c.note.empty()) cj["note"] = c.note;
    checks.push_back(std::move(cj));
  }
  j["checks"] = std::move(checks);
  j["is_isoparametric"] = rep.is_isoparametric;
  j["verdict"] = rep.all_pass() ? "pass" : "fail";
  const std::string text = detail::dump(j);
  if (!cfg.out.empty()) detail::write_file(cfg.out + ".json", text);
  out << text;
  return rep.all_pass() ? kSuccess : kVerifyFailed;
}

inline int dispatch(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (!cfg.have_a || !cfg.have_b || !cfg.have_c)
    throw Error(ErrorCode::InvalidArgument, "--a, --b and --c are required");
  const Coefficients co = validate_normalize(cfg.a, cfg.b, cfg.c, cfg.tol);
  if (cfg.command == "classify") return cmd_classify(cfg, co, out);
  if (cfg.command == "portrait") return cmd_portrait(cfg, co, out);
  if (cfg.command == "orbit") return cmd_orbit(cfg, co, out, err);
  if (cfg.command == "mesh") return cmd_mesh(cfg, co, out, err);
  if (cfg.command == "verify") return cmd_verify(cfg, co, out);
  throw Error(ErrorCode::InvalidArgument, "unknown command " + cfg.command);
}

/// Parses argv and runs the selected command, writing reports to `out` and
/// diagnostics to `err`. Returns the process exit code.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rotational linear Weingarten surfaces in S^3", "rlws"};
  app.set_version_flag("--version", io::kToolVersion);
  app.require_subcommand(1);
  app.set_config("--config", "", "flat key=value file mirroring the flags");

  RunConfig cfg;
  std::string sweep_text;
  app.add_option("--a", cfg.a, "coefficient a of aH + bK = c");
  app.add_option("--b", cfg.b, "coefficient b");
  app.add_option("--c", cfg.c, "coefficient c");
  auto* alpha_opt = app.add_option("--alpha", "level of the first integral");
  auto* sweep_opt = app.add_option("--alpha-sweep", sweep_text, "levels FROM:TO:N");
  alpha_opt->excludes(sweep_opt);
  app.add_option("--grid-n", cfg.portrait.grid_n, "contour grid resolution")
      ->check(CLI::Range(16, 4096));
  app.add_option("--levels", cfg.portrait.levels, "portrait levels")->delimiter(',');
  app.add_flag("--no-gamma{false}", cfg.portrait.show_gamma, "hide the horizontal-tangent locus");
  app.add_flag("--no-singular-locus{false}", cfg.portrait.show_singular_locus,
               "hide the singular locus");
  app.add_option("--n-t", cfg.n_t, "mesh resolution around the rotation")->check(CLI::Range(3, 100000));
  app.add_option("--pole", cfg.pole, "projection pole, +-1..+-4 (0: automatic)")
      ->check(CLI::IsMember({-4, -3, -2, -1, 0, 1, 2, 3, 4}));
  app.add_option("--out", cfg.out, "output path stem");
  app.add_option("--tol-domain", cfg.tol.domain, "domain membership tolerance");
  app.add_option("--tol-level", cfg.tol.level_rel, "relative level tolerance");
  app.add_option("--tol-delta", cfg.tol.delta_rel, "relative discriminant tolerance");
  app.add_option("--tol-w", cfg.tol.w, "threshold on w for boundary singularities");

  for (const char* name : {"classify", "portrait", "orbit", "mesh", "verify"})
    app.add_subcommand(name)->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kInvalidInput;
  }

  cfg.command = app.get_subcommands().front()->get_name();
  cfg.have_a = app.count("--a") > 0;
  cfg.have_b = app.count("--b") > 0;
  cfg.have_c = app.count("--c") > 0;
  try {
    if (alpha_opt->count() > 0) cfg.alpha = alpha_opt->as<double>();
    if (sweep_opt->count() > 0) cfg.sweep = parse_sweep(sweep_text);
    return dispatch(cfg, out, err);
  } catch (const Error& e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
    return is_input_error(e.code()) ? kInvalidInput : kNumericalFailure;
  } catch (const CLI::ConversionError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kNumericalFailure;
  }
}

}  // namespace rlws::cli
