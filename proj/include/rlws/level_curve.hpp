#pragma once

// Two independent realizations of a level curve C_alpha: pseudo-arclength
// continuation with Newton correction, and a marching-squares contour of F
// sampled on a grid.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <unordered_map>
#include <vector>

#include "rlws/error.hpp"
#include "rlws/phase_core.hpp"

namespace rlws {

struct TraceOptions {
  double step = 1e-3;
  double min_step = 1e-13;
  double projection_tol = 1e-10;  // |F - alpha| on every emitted point
  double closure_tol = 1e-4;
  double boundary_tol = 1e-12;    // w^2 or u below this counts as contact with dD
  double stall_gradient = 1e-8;
  int max_steps = 400000;
};

struct LevelTrace {
  std::vector<PhasePoint> points;
  bool closed = false;
  double arc_length = 0.0;
};

namespace detail {

struct Vec2 {
  double x, y;
};

inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }

/// Newton projection onto F = alpha along the gradient. Returns false when an
/// iterate leaves D or the iteration does not converge.
inline bool project_to_level(const Coefficients& co, double alpha, PhasePoint& p, double tol,
                             int max_iter = 30) {
  for (int it = 0; it < max_iter; ++it) {
    if (p.u < 0.0 || radial_slack(p) <= 0.0) return false;
    const double r = potential_unchecked(co, p.u, p.v) - alpha;
    if (std::abs(r) <= tol) return true;
    const Gradient g = gradient_unchecked(co, p.u, p.v);
    const double g2 = g.du * g.du + g.dv * g.dv;
    if (!(g2 > 0.0) || !std::isfinite(g2)) return false;
    p.u -= r * g.du / g2;
    p.v -= r * g.dv / g2;
  }
  return p.u >= 0.0 && radial_slack(p) > 0.0 &&
         std::abs(potential_unchecked(co, p.u, p.v) - alpha) <= tol;
}

inline Vec2 level_tangent(const Coefficients& co, PhasePoint p) {
  const Gradient g = gradient_unchecked(co, p.u, p.v);
  const double n = std::hypot(g.du, g.dv);
  return {g.dv / n, -g.du / n};
}

inline double point_segment_distance(PhasePoint q, PhasePoint a, PhasePoint b) {
  const double dx = b.u - a.u, dy = b.v - a.v;
  const double len2 = dx * dx + dy * dy;
  double t = len2 > 0.0 ? ((q.u - a.u) * dx + (q.v - a.v) * dy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::hypot(a.u + t * dx - q.u, a.v + t * dy - q.v);
}

struct WalkResult {
  std::vector<PhasePoint> points;  // excludes the seed
  bool closed = false;
  double arc = 0.0;
};

inline WalkResult walk_level(const Coefficients& co, double alpha, PhasePoint seed, double sign,
                             const TraceOptions& opts, int& budget) {
  WalkResult out;
  PhasePoint p = seed;
  Vec2 t = level_tangent(co, p);
  t = {sign * t.x, sign * t.y};
  double h = opts.step;
  while (true) {
    if (budget-- <= 0)
      throw Error(ErrorCode::StepBudgetExhausted, "level-curve trace exhausted its step budget");
    PhasePoint q{p.u + h * t.x, p.v + h * t.y};
    bool ok = q.u >= 0.0 && radial_slack(q) > 0.0 &&
              project_to_level(co, alpha, q, opts.projection_tol);
    Vec2 tq{};
    if (ok) {
      const double jump = std::hypot(q.u - p.u, q.v - p.v);
      ok = jump <= 2.0 * h;
      if (ok) {
        const Gradient g = gradient_unchecked(co, q.u, q.v);
        if (std::hypot(g.du, g.dv) < opts.stall_gradient)
          throw Error(ErrorCode::StallAtCriticalPoint, "trace reached a critical point of F");
        tq = level_tangent(co, q);
        if (tq.x * t.x + tq.y * t.y < 0.0) tq = {-tq.x, -tq.y};
        ok = tq.x * t.x + tq.y * t.y > 0.5;
      }
    }
    if (!ok) {
      h *= 0.5;
      if (h < opts.min_step) return out;  // contact with dD
      continue;
    }
    out.arc += std::hypot(q.u - p.u, q.v - p.v);
    if (out.arc > 3.0 * opts.step &&
        point_segment_distance(seed, p, q) < opts.closure_tol) {
      out.points.push_back(seed);
      out.closed = true;
      return out;
    }
    out.points.push_back(q);
    if (radial_slack(q) < opts.boundary_tol || q.u < opts.boundary_tol) return out;
    p = q;
    t = tq;
    h = std::min(opts.step, 1.5 * h);
  }
}

/// Level point on the circle of radius 1 - eps near the polar angle of
/// `start`. Newton overshoots here since F - alpha grows like sqrt(slack), so
/// the angle is bracketed and bisected instead.
inline std::optional<PhasePoint> seed_inside_circle(const Coefficients& co, double alpha,
                                                    PhasePoint start, double tol) {
  const double phi0 = std::atan2(start.v, start.u);
  const double half_pi = std::acos(0.0);
  for (double eps : {1e-6, 1e-5, 1e-4, 1e-3}) {
    const double rho = 1.0 - eps;
    auto at = [&](double phi) { return PhasePoint{rho * std::cos(phi), rho * std::sin(phi)}; };
    auto f = [&](double phi) { return potential_unchecked(co, at(phi).u, at(phi).v) - alpha; };
    for (double delta = 1e-3; delta <= 0.25; delta *= 2.0) {
      // Nearest sign change on either side of phi0.
      for (double side : {1.0, -1.0}) {
        const double lo0 = phi0, hi0 = std::clamp(phi0 + side * delta, -half_pi, half_pi);
        double lo = lo0, hi = hi0, flo = f(lo);
        if ((flo < 0.0) == (f(hi) < 0.0)) continue;
        for (int i = 0; i < 200 && hi != lo; ++i) {
          const double mid = 0.5 * (lo + hi);
          if (mid == lo || mid == hi) break;
          const double fm = f(mid);
          if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
          } else {
            hi = mid;
          }
        }
        PhasePoint q = at(0.5 * (lo + hi));
        if (q.u > 0.0 && project_to_level(co, alpha, q, tol) &&
            std::hypot(q.u - start.u, q.v - start.v) < 0.5)
          return q;
      }
    }
  }
  return std::nullopt;
}

/// Level point near an axis start, moved inward and projected.
inline std::optional<PhasePoint> seed_off_axis(const Coefficients& co, double alpha,
                                               PhasePoint start, double tol) {
  for (double eps : {1e-6, 1e-5, 1e-4, 1e-3, 1e-2}) {
    PhasePoint q{std::max(start.u * (1.0 - eps), eps), start.v * (1.0 - eps)};
    if (project_to_level(co, alpha, q, tol) && q.u > 0.0 && radial_slack(q) > 0.0 &&
        std::hypot(q.u - start.u, q.v - start.v) < 100.0 * eps)
      return q;
  }
  return std::nullopt;
}

}  // namespace detail

/// Follows C_alpha from `start` in both directions until it closes or meets
/// the boundary of D. Closed curves start and end at `start`; open curves run
/// from one boundary contact to the other.
inline LevelTrace trace_level_curve(const Coefficients& co, double alpha, PhasePoint start,
                                    const TraceOptions& opts = {}) {
  if (!in_domain(start))
    throw Error(ErrorCode::DomainViolation, "trace start lies outside the phase domain");
  const bool on_boundary = radial_slack(start) < 1e-8 || start.u < 1e-8;
  // On the circle w = sqrt(1-u^2-v^2) turns rounding of the slack into an
  // O(sqrt(eps)) error in F, so boundary starts get that much extra room.
  const double start_tol =
      opts.projection_tol +
      (on_boundary ? 0.5 * co.a() * start.u * std::sqrt(4.0 * std::numeric_limits<double>::epsilon())
                   : 0.0);
  if (std::abs(detail::potential_unchecked(co, start.u, start.v) - alpha) > start_tol)
    throw Error(ErrorCode::InvalidStart, "trace start is not on the requested level curve");

  PhasePoint seed = start;
  if (on_boundary) {
    // The gradient is singular on the unit circle and the axis is an edge of D,
    // so seed from a nearby interior point of the level.
    const auto seeded = radial_slack(start) < 1e-8
                            ? detail::seed_inside_circle(co, alpha, start, opts.projection_tol)
                            : detail::seed_off_axis(co, alpha, start, opts.projection_tol);
    if (!seeded) throw Error(ErrorCode::InvalidStart, "cannot seed the trace inside the domain");
    seed = *seeded;
  }
  const detail::Gradient g = detail::gradient_unchecked(co, seed.u, seed.v);
  if (std::hypot(g.du, g.dv) < opts.stall_gradient)
    throw Error(ErrorCode::StallAtCriticalPoint, "start is a critical point of F");

  int budget = opts.max_steps;
  LevelTrace out;
  detail::WalkResult fwd = detail::walk_level(co, alpha, seed, 1.0, opts, budget);
  if (fwd.closed) {
    out.points.reserve(fwd.points.size() + 1);
    out.points.push_back(seed);
    out.points.insert(out.points.end(), fwd.points.begin(), fwd.points.end());
    out.closed = true;
    out.arc_length = fwd.arc;
    return out;
  }
  detail::WalkResult bwd = detail::walk_level(co, alpha, seed, -1.0, opts, budget);
  out.points.assign(bwd.points.rbegin(), bwd.points.rend());
  out.points.push_back(seed);
  out.points.insert(out.points.end(), fwd.points.begin(), fwd.points.end());
  out.arc_length = fwd.arc + bwd.arc;
  return out;
}

struct ContourSet {
  double alpha = 0.0;
  std::vector<std::vector<PhasePoint>> polylines;
  double cell_size = 0.0;
  double error_bound = 0.0;  // bound on |F - alpha| at the vertices
};

/// Marching-squares extraction of C_alpha from F sampled on a grid_n x grid_n
/// lattice over [0,1] x [-1,1]. Outside D, F is extended as constant along
/// rays (F(p/|p|)); segments are clipped to the unit circle.
inline ContourSet contour_oracle(const Coefficients& co, double alpha, int grid_n) {
  if (grid_n < 16) throw Error(ErrorCode::InvalidArgument, "grid_n must be at least 16");
  const int n = grid_n;
  const double du = 1.0 / (n - 1);
  const double dv = 2.0 / (n - 1);
  auto node_u = [&](int i) { return i * du; };
  auto node_v = [&](int j) { return -1.0 + j * dv; };

  std::vector<double> f(static_cast<std::size_t>(n) * n);
  auto at = [&](int i, int j) -> double& { return f[static_cast<std::size_t>(j) * n + i]; };
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      double u = node_u(i), v = node_v(j);
      const double r = std::hypot(u, v);
      if (r > 1.0) {
        u /= r;
        v /= r;
      }
      at(i, j) = detail::potential_unchecked(co, u, v);
    }

  ContourSet out;
  out.alpha = alpha;
  out.cell_size = std::max(du, dv);

  // Edge ids: horizontal edge from node (i,j) -> 2*(j*n+i), vertical -> 2*(j*n+i)+1.
  auto h_edge = [&](int i, int j) { return std::int64_t{2} * (std::int64_t{j} * n + i); };
  auto v_edge = [&](int i, int j) { return std::int64_t{2} * (std::int64_t{j} * n + i) + 1; };
  auto edge_point = [&](std::int64_t id) {
    const std::int64_t node = id / 2;
    const int i = static_cast<int>(node % n);
    const int j = static_cast<int>(node / n);
    const double f0 = at(i, j);
    const double f1 = (id % 2 == 0) ? at(i + 1, j) : at(i, j + 1);
    const double t = f1 != f0 ? std::clamp((alpha - f0) / (f1 - f0), 0.0, 1.0) : 0.5;
    return (id % 2 == 0) ? PhasePoint{node_u(i) + t * du, node_v(j)}
                         : PhasePoint{node_u(i), node_v(j) + t * dv};
  };

  std::vector<std::array<std::int64_t, 2>> segments;
  double hess = 0.0;
  auto second_diff = [&](int i, int j) {
    double m = 0.0;
    if (i > 0 && i + 1 < n) m = std::max(m, std::abs(at(i + 1, j) - 2 * at(i, j) + at(i - 1, j)));
    if (j > 0 && j + 1 < n) m = std::max(m, std::abs(at(i, j + 1) - 2 * at(i, j) + at(i, j - 1)));
    if (i + 1 < n && j + 1 < n)
      m = std::max(m, std::abs(at(i + 1, j + 1) - at(i + 1, j) - at(i, j + 1) + at(i, j)));
    return m;
  };
  for (int j = 0; j + 1 < n; ++j) {
    for (int i = 0; i + 1 < n; ++i) {
      const double f00 = at(i, j), f10 = at(i + 1, j), f01 = at(i, j + 1), f11 = at(i + 1, j + 1);
      const int config = (f00 >= alpha ? 1 : 0) | (f10 >= alpha ? 2 : 0) |
                         (f11 >= alpha ? 4 : 0) | (f01 >= alpha ? 8 : 0);
      if (config == 0 || config == 15) continue;
      const std::int64_t bottom = h_edge(i, j), top = h_edge(i, j + 1);
      const std::int64_t left = v_edge(i, j), right = v_edge(i + 1, j);
      auto add = [&](std::int64_t e0, std::int64_t e1) { segments.push_back({e0, e1}); };
      switch (config) {
        case 1: case 14: add(left, bottom); break;
        case 2: case 13: add(bottom, right); break;
        case 3: case 12: add(left, right); break;
        case 4: case 11: add(right, top); break;
        case 6: case 9: add(bottom, top); break;
        case 7: case 8: add(left, top); break;
        case 5: case 10: {
          const bool center_in = 0.25 * (f00 + f10 + f01 + f11) >= alpha;
          if ((config == 5) == center_in) {
            add(left, top);
            add(bottom, right);
          } else {
            add(left, bottom);
            add(right, top);
          }
          break;
        }
        default: break;
      }
      for (int dj = 0; dj <= 1; ++dj)
        for (int di = 0; di <= 1; ++di) hess = std::max(hess, second_diff(i + di, j + dj));
    }
  }
  out.error_bound = 0.5 * hess + 1e-12;

  // Clip to D. A clipped end becomes a fresh negative id, which links nowhere.
  std::unordered_map<std::int64_t, PhasePoint> points;
  std::int64_t next_clip = -1;
  std::vector<std::array<std::int64_t, 2>> kept;
  kept.reserve(segments.size());
  auto inside = [](PhasePoint p) { return radial_slack(p) >= 0.0; };
  for (const auto& s : segments) {
    PhasePoint p0 = edge_point(s[0]), p1 = edge_point(s[1]);
    const bool in0 = inside(p0), in1 = inside(p1);
    if (!in0 && !in1) continue;
    std::array<std::int64_t, 2> ids = s;
    if (!in0 || !in1) {
      // Intersect the segment with the unit circle: |p0 + t (p1 - p0)| = 1.
      const PhasePoint pin = in0 ? p0 : p1, pout = in0 ? p1 : p0;
      const double dx = pout.u - pin.u, dy = pout.v - pin.v;
      const double qa = dx * dx + dy * dy;
      const double qb = 2.0 * (pin.u * dx + pin.v * dy);
      const double qc = pin.u * pin.u + pin.v * pin.v - 1.0;
      const double disc = std::max(0.0, qb * qb - 4.0 * qa * qc);
      const double t = std::clamp((-qb + std::sqrt(disc)) / (2.0 * qa), 0.0, 1.0);
      PhasePoint clip{pin.u + t * dx, pin.v + t * dy};
      const double r = std::hypot(clip.u, clip.v);
      if (r > 1.0) clip = {clip.u / r, clip.v / r};
      const std::int64_t id = next_clip--;
      points[id] = clip;
      (in0 ? ids[1] : ids[0]) = id;
    }
    for (auto id : ids)
      if (id >= 0 && !points.count(id)) points[id] = edge_point(id);
    kept.push_back(ids);
  }

  // Link segments sharing an edge point into polylines.
  std::unordered_map<std::int64_t, std::vector<std::size_t>> incident;
  for (std::size_t k = 0; k < kept.size(); ++k) {
    incident[kept[k][0]].push_back(k);
    incident[kept[k][1]].push_back(k);
  }
  std::vector<bool> used(kept.size(), false);
  auto walk = [&](std::size_t k0, std::int64_t from) {
    std::vector<PhasePoint> line{points[from]};
    std::size_t k = k0;
    std::int64_t cur = from;
    while (true) {
      used[k] = true;
      const std::int64_t nxt = kept[k][0] == cur ? kept[k][1] : kept[k][0];
      line.push_back(points[nxt]);
      cur = nxt;
      std::size_t next_k = kept.size();
      for (std::size_t cand : incident[cur])
        if (!used[cand]) {
          next_k = cand;
          break;
        }
      if (next_k == kept.size()) break;
      k = next_k;
    }
    return line;
  };
  // Open chains first (start at an end point), then loops.
  for (std::size_t k = 0; k < kept.size(); ++k) {
    if (used[k]) continue;
    for (int e = 0; e < 2; ++e) {
      if (incident[kept[k][e]].size() == 1) {
        out.polylines.push_back(walk(k, kept[k][e]));
        break;
      }
    }
  }
  for (std::size_t k = 0; k < kept.size(); ++k)
    if (!used[k]) out.polylines.push_back(walk(k, kept[k][0]));
  return out;
}

}  // namespace rlws
