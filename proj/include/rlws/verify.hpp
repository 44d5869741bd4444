#pragma once

// Invariant suite run by `rlws verify` for one (coefficients, alpha) pair.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "rlws/level_curve.hpp"
#include "rlws/phase_core.hpp"
#include "rlws/profile_integrator.hpp"
#include "rlws/surface_geometry.hpp"

namespace rlws {

struct VerifyCheck {
  std::string name;
  double measured = 0.0;
  double bound = 0.0;
  bool pass = false;
  std::string note;
};

struct VerifyReport {
  std::vector<VerifyCheck> checks;
  bool is_isoparametric = false;
  bool all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const VerifyCheck& c) { return c.pass; });
  }
};

struct VerifyOptions {
  int gradient_points = 1000;
  std::uint64_t seed = 0x5eedULL;
  double gradient_bound = 1e-6;
  double lemma_bound = 1e-8;
  double residual_bound = 1e-6;
  int oracle_grid = 512;
};

/// Max relative error between the analytic gradient and central differences
/// at `n` random points of D with w > 1e-3. The difference step shrinks with w
/// so the stencil stays well inside D; the denominator is floored at 1e-4.
inline double gradient_check(const Coefficients& co, int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> du(0.0, 1.0), dv(-1.0, 1.0);
  double worst = 0.0;
  int done = 0;
  while (done < n) {
    const PhasePoint p{du(rng), dv(rng)};
    const double slack = radial_slack(p);
    if (slack <= 1e-6 || p.u <= 0.0) continue;
    const double w = std::sqrt(slack);
    const double h = 1e-6 * std::min(1.0, w);
    const auto g = potential_gradient(co, p);
    auto F = [&](double u, double v) { return detail::potential_unchecked(co, u, v); };
    const double fu = (F(p.u + h, p.v) - F(p.u - h, p.v)) / (2.0 * h);
    const double fv = (F(p.u, p.v + h) - F(p.u, p.v - h)) / (2.0 * h);
    const double err = std::hypot(fu - g.du, fv - g.dv);
    worst = std::max(worst, err / std::max(std::hypot(g.du, g.dv), 1e-4));
    ++done;
  }
  return worst;
}

/// Largest |k1 k2 - (-(x''+x)/x)| / max(1, |k1 k2|) with k2 taken from the
/// relation form.
inline double lemma_crosscheck(const Coefficients& co, const Orbit& orbit,
                               const Tolerances& tol = {}) {
  double worst = 0.0;
  for (const OrbitSample& q : orbit.samples) {
    if (q.x <= 1e-4 || q.xddot_unbounded()) continue;
    const CurvaturePair kp =
        principal_curvatures(co, q.x, q.xdot, q.xddot, CurvatureForm::FromRelation, tol);
    if (kp.k2_unbounded) continue;
    const double lhs = kp.K;
    const double rhs = -(q.xddot + q.x) / q.x;
    if (!std::isfinite(lhs) || !std::isfinite(rhs)) continue;
    worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
  }
  return worst;
}

/// Largest |aH + bK - c| along the orbit where k2 is finite.
inline double max_relation_residual(const Coefficients& co, const Orbit& orbit,
                                    const Tolerances& tol = {}) {
  double worst = 0.0;
  for (const OrbitSample& q : orbit.samples) {
    if (q.x <= tol.w || q.xddot_unbounded()) continue;
    const double w = std::sqrt(std::max(0.0, 1.0 - q.x * q.x - q.xdot * q.xdot));
    const CurvatureForm form = w > tol.w ? CurvatureForm::Profile : CurvatureForm::FromRelation;
    const CurvaturePair kp = principal_curvatures(co, q.x, q.xdot, q.xddot, form, tol);
    if (kp.k2_unbounded) continue;
    worst = std::max(worst, std::abs(weingarten_residual(co, kp)));
  }
  return worst;
}

inline double distance_to_polyline(PhasePoint q, const std::vector<PhasePoint>& line) {
  if (line.size() == 1) return std::hypot(q.u - line[0].u, q.v - line[0].v);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < line.size(); ++i)
    best = std::min(best, detail::point_segment_distance(q, line[i], line[i + 1]));
  return best;
}

inline double directed_hausdorff(const std::vector<PhasePoint>& from,
                                 const std::vector<PhasePoint>& to) {
  double worst = 0.0;
  for (PhasePoint q : from) worst = std::max(worst, distance_to_polyline(q, to));
  return worst;
}

struct HausdorffResult {
  double distance = 0.0;
  double cell_size = 0.0;
};

/// Symmetric Hausdorff distance between continuation traces from `seeds` and
/// the contour component(s) they run along. Points closer than
/// `circle_band_cells` cells to the unit circle are not measured: F has a
/// square-root singularity there and the grid oracle cannot resolve the curve.
inline HausdorffResult oracle_hausdorff(const Coefficients& co, double alpha,
                                        const std::vector<PhasePoint>& seeds, int grid_n,
                                        double circle_band_cells = 0.0) {
  LevelTrace trace;
  for (PhasePoint seed : seeds) {
    const LevelTrace part = trace_level_curve(co, alpha, seed);
    trace.points.insert(trace.points.end(), part.points.begin(), part.points.end());
  }
  const ContourSet cs = contour_oracle(co, alpha, grid_n);
  HausdorffResult r;
  r.cell_size = cs.cell_size;
  const double band = circle_band_cells * cs.cell_size;
  auto measured = [&](PhasePoint q) { return 1.0 - std::hypot(q.u, q.v) >= band; };
  double to_contour = 0.0;
  for (PhasePoint q : trace.points) {
    if (!measured(q)) continue;
    double best = std::numeric_limits<double>::infinity();
    for (const auto& line : cs.polylines) best = std::min(best, distance_to_polyline(q, line));
    to_contour = std::max(to_contour, best);
  }
  double to_trace = 0.0;
  for (const auto& line : cs.polylines) {
    // Components the trace never approaches belong to other branches of C_alpha.
    double nearest = std::numeric_limits<double>::infinity();
    for (PhasePoint q : line) nearest = std::min(nearest, distance_to_polyline(q, trace.points));
    if (nearest > 2.0 * cs.cell_size) continue;
    for (PhasePoint q : line)
      if (measured(q)) to_trace = std::max(to_trace, distance_to_polyline(q, trace.points));
  }
  r.distance = std::max(to_contour, to_trace);
  return r;
}

/// Trace seeds covering every arc of C_alpha the orbit visits. Every sample lies
/// on C_alpha; each seed is the sample deepest inside D among those not yet
/// within reach of an earlier trace.
inline std::vector<PhasePoint> trace_seeds(const Coefficients& co, const Orbit& orbit,
                                           int max_seeds = 4) {
  std::vector<PhasePoint> seeds;
  std::vector<PhasePoint> covered;
  for (int k = 0; k < max_seeds; ++k) {
    std::optional<PhasePoint> best;
    double depth = 1e-6;
    for (const OrbitSample& q : orbit.samples) {
      const PhasePoint p{q.x, q.xdot};
      const double d = std::min(p.u, radial_slack(p));
      if (d <= depth) continue;
      if (!covered.empty() && distance_to_polyline(p, covered) < 1e-2) continue;
      depth = d;
      best = p;
    }
    if (!best) break;
    seeds.push_back(*best);
    const LevelTrace t = trace_level_curve(co, orbit.alpha, *best);
    covered.insert(covered.end(), t.points.begin(), t.points.end());
  }
  return seeds;
}

/// Runs every check on an integrated orbit.
inline VerifyReport verify_level(const Coefficients& co, double alpha, const Orbit& orbit,
                                 const VerifyOptions& opts = {}, const Tolerances& tol = {}) {
  VerifyReport rep;
  auto add = [&](std::string name, double measured, double bound, std::string note = {}) {
    rep.checks.push_back({std::move(name), measured, bound, measured <= bound, std::move(note)});
  };

  add("f_conservation", orbit.f_drift_max, 1e-8 * (1.0 + std::abs(alpha)));
  add("gradient_vs_finite_difference", gradient_check(co, opts.gradient_points, opts.seed),
      opts.gradient_bound);
  add("curvature_product_crosscheck", lemma_crosscheck(co, orbit, tol), opts.lemma_bound);
  add("relation_residual", max_relation_residual(co, orbit, tol),
      opts.residual_bound * (1.0 + std::abs(co.c())));

  if (orbit.equilibrium) {
    add("oracle_hausdorff", 0.0, 0.0, "level set is a single point");
  } else {
    const std::vector<PhasePoint> seeds = trace_seeds(co, orbit);
    const LevelClassification lc = classify_level(co, alpha, tol);
    const bool meets_circle = !lc.special_sets.circle.empty() || lc.special_sets.circle_full ||
                              orbit.outcome.kind == OutcomeKind::BoundaryHit ||
                              orbit.outcome.kind == OutcomeKind::AxisLimit;
    const double band = meets_circle ? 4.0 : 0.0;
    const HausdorffResult h = oracle_hausdorff(co, alpha, seeds, opts.oracle_grid, band);
    add("oracle_hausdorff", h.distance, 2.0 * h.cell_size,
        meets_circle ? "excluding a 4-cell band along the unit circle" : "");
  }

  try {
    const IsoparametricReport iso = isoparametric_test(co, orbit, tol);
    rep.is_isoparametric = iso.is_isoparametric;
    const double spread = iso.k1_max - iso.k1_min;
    const double iso_bound = 1e-6 * (1.0 + std::abs(iso.k1_max));
    const bool hit = orbit.outcome.kind == OutcomeKind::SingularLocusHit ||
                     (orbit.backward && orbit.backward->kind == OutcomeKind::SingularLocusHit);
    if (orbit.equilibrium) {
      rep.checks.push_back({"isoparametric", spread, iso_bound, iso.is_isoparametric,
                            "equilibrium orbit: Clifford torus, k1 constant"});
    } else if (co.c() == 0.0 && orbit.outcome.kind == OutcomeKind::ClosedPeriodic && !hit) {
      rep.checks.push_back({"isoparametric", spread, iso_bound, !iso.is_isoparametric,
                            "c = 0 closed orbit: k1 must vary"});
    } else {
      rep.checks.push_back({"isoparametric", spread, iso_bound, true,
                            iso.is_isoparametric ? "k1 constant (informational)"
                                                 : "k1 varies (informational)"});
    }
  } catch (const Error& e) {
    rep.checks.push_back({"isoparametric", 0.0, 0.0, true, std::string("skipped: ") + e.what()});
  }

  if (orbit.outcome.kind == OutcomeKind::ClosedPeriodic && !orbit.equilibrium) {
    const double p = orbit.outcome.period;
    add("period_symmetry", std::abs(p - 2.0 * orbit.half_period), 1e-6 * p);
  }
  return rep;
}

}  // namespace rlws
