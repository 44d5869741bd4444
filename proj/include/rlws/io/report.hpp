#pragma once

// JSON reports. Keys keep insertion order so output is byte-stable.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rlws/io/format.hpp"
#include "rlws/io/writers.hpp"
#include "rlws/phase_core.hpp"
#include "rlws/profile_integrator.hpp"
#include "rlws/surface_geometry.hpp"

namespace rlws::io {

using Json = nlohmann::ordered_json;

/// Non-finite values become null.
inline Json number(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

inline Json point_json(PhasePoint p) { return Json::array({number(p.u), number(p.v)}); }

inline Json points_json(const std::vector<PhasePoint>& pts) {
  Json out = Json::array();
  for (PhasePoint p : pts) out.push_back(point_json(p));
  return out;
}

inline Json report_header(const char* command, const Coefficients& co) {
  Json j;
  j["tool"] = kToolName;
  j["version"] = kToolVersion;
  j["command"] = command;
  j["coefficients"] = {{"a", co.a()},
                       {"b", co.b()},
                       {"c", co.c()},
                       {"delta", co.delta()},
                       {"negated", co.negated()}};
  return j;
}

inline const char* to_json_name(ActiveCritical ac) {
  switch (ac) {
    case ActiveCritical::Plus: return "plus";
    case ActiveCritical::Minus: return "minus";
    case ActiveCritical::Both: return "both";
  }
  return "plus";
}

inline Json critical_json(const CriticalData& cd) {
  return {{"u_plus", cd.u_plus},
          {"u_minus", cd.u_minus},
          {"alpha0", cd.alpha0},
          {"tau", cd.tau},
          {"alpha_min", cd.alpha_min},
          {"alpha_max", cd.alpha_max},
          {"active_critical", to_json_name(cd.active_critical)},
          {"critical_point", point_json(cd.critical_point())}};
}

inline Json classification_json(double alpha, const LevelClassification& lc) {
  Json j;
  j["alpha"] = alpha;
  j["kind"] = std::string(to_string(lc.kind));
  j["detail"] = lc.detail;
  j["special_sets"] = {{"axis", points_json(lc.special_sets.axis)},
                       {"circle", points_json(lc.special_sets.circle)},
                       {"circle_full", lc.special_sets.circle_full},
                       {"gamma", points_json(lc.special_sets.gamma)}};
  j["singular_locus_hits"] = points_json(lc.singular_locus_hits);
  return j;
}

inline Json orbit_end_json(const OrbitEnd& e) {
  return {{"kind", std::string(to_string(e.kind))},
          {"s", number(e.s)},
          {"point", point_json(e.point)},
          {"sign", e.sign},
          {"period", number(e.period)}};
}

struct K1Range {
  double min = std::numeric_limits<double>::quiet_NaN();
  double max = std::numeric_limits<double>::quiet_NaN();
  double max_residual = 0.0;
};

inline K1Range k1_range(const Coefficients& co, const Orbit& orbit, const Tolerances& tol = {}) {
  K1Range r;
  bool first = true;
  for (const OrbitSample& q : orbit.samples) {
    const SampleCurvature kc = sample_curvature(co, q, tol);
    if (std::isfinite(kc.residual)) r.max_residual = std::max(r.max_residual, std::abs(kc.residual));
    if (!std::isfinite(kc.k1)) continue;
    r.min = first ? kc.k1 : std::min(r.min, kc.k1);
    r.max = first ? kc.k1 : std::max(r.max, kc.k1);
    first = false;
  }
  return r;
}

inline bool has_singular_hit(const Orbit& orbit) {
  return orbit.outcome.kind == OutcomeKind::SingularLocusHit ||
         (orbit.backward && orbit.backward->kind == OutcomeKind::SingularLocusHit);
}

inline Json orbit_summary_json(const Coefficients& co, const Orbit& orbit,
                               const Tolerances& tol = {}) {
  const K1Range kr = k1_range(co, orbit, tol);
  Json j;
  j["alpha"] = orbit.alpha;
  j["outcome"] = orbit_end_json(orbit.outcome);
  j["backward"] = orbit.backward ? orbit_end_json(*orbit.backward) : Json(nullptr);
  j["equilibrium"] = orbit.equilibrium;
  j["period"] = number(orbit.outcome.kind == OutcomeKind::ClosedPeriodic
                           ? orbit.outcome.period
                           : std::numeric_limits<double>::quiet_NaN());
  j["half_period"] = number(orbit.half_period);
  j["f_drift_max"] = orbit.f_drift_max;
  j["max_step_residual"] = orbit.max_step_residual;
  j["k1_range"] = Json::array({number(kr.min), number(kr.max)});
  j["max_relation_residual"] = kr.max_residual;
  j["rotation_number"] = number(orbit.rotation_number);
  j["turning_points"] = points_json(orbit.turning_points);
  j["samples"] = orbit.samples.size();
  if (has_singular_hit(orbit)) j["warning"] = "k2 unbounded — see report";
  return j;
}

inline Json mesh_sidecar_json(const Coefficients& co, const SurfaceMesh& mesh, int pole) {
  Json j = report_header("mesh", co);
  j["alpha"] = mesh.meta.alpha;
  j["rotation_number"] = number(mesh.meta.rotation_number);
  j["periods"] = mesh.meta.periods;
  j["pole"] = pole;
  j["n_s"] = mesh.n_s;
  j["n_t"] = mesh.n_t;
  j["closed_s"] = mesh.closed_s;
  Json verts = Json::array();
  for (const Vec4& v : mesh.vertices) verts.push_back(Json::array({v[0], v[1], v[2], v[3]}));
  j["vertices_r4"] = std::move(verts);
  return j;
}

}  // namespace rlws::io
