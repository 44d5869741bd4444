#pragma once

// Integration of the profile x(s) of a rotational linear Weingarten surface.
//
// The relation aH + bK = c with the principal curvatures k1 = -w/x and
// k2 = (x'' + x)/w, w = sqrt(1 - x^2 - x'^2), is linear in x'':
//
//   k2 = (2cx + aw) / (ax - 2bw),    x'' = w k2 - x.
//
// Every solution stays on a level set of F (see phase_core.hpp); after each
// step the state is projected back onto it.

#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>
#include <string_view>
#include <vector>

#include "rlws/dopri5.hpp"
#include "rlws/error.hpp"
#include "rlws/phase_core.hpp"

namespace rlws {

namespace detail {

/// x'' without precondition checks. Stage points slightly outside D use w = 0.
inline double acceleration_unchecked(const Coefficients& co, double x, double xdot) {
  const double w = std::sqrt(std::max(0.0, 1.0 - x * x - xdot * xdot));
  const double num = w * (2.0 * co.c() * x + co.a() * w);
  const double den = co.a() * x - 2.0 * co.b() * w;
  if (den == 0.0) {
    if (num == 0.0) return -x;
    return std::copysign(std::numeric_limits<double>::infinity(), num);
  }
  return num / den - x;
}

/// ax - 2bw; vanishes on the singular locus.
inline double singular_gap(const Coefficients& co, double x, double xdot) {
  const double w = std::sqrt(std::max(0.0, 1.0 - x * x - xdot * xdot));
  return co.a() * x - 2.0 * co.b() * w;
}

}  // namespace detail

inline double profile_acceleration(const Coefficients& co, double x, double xdot,
                                   const Tolerances& tol = {}) {
  if (x <= tol.w) throw Error(ErrorCode::AxisSingularity, "x'' requested on the rotation axis");
  const double slack = 1.0 - x * x - xdot * xdot;
  if (slack < -tol.domain)
    throw Error(ErrorCode::DomainViolation, "x'' requested outside the phase domain");
  const double gap = detail::singular_gap(co, x, xdot);
  if (std::abs(gap) <= tol.w * (co.a() + 2.0 * std::abs(co.b())))
    throw Error(ErrorCode::SingularDenominator, "x'' is unbounded on the locus a*x = 2*b*w");
  return detail::acceleration_unchecked(co, x, xdot);
}

struct OrbitSample {
  double s = 0.0;
  double x = 0.0;
  double xdot = 0.0;
  double xddot = 0.0;  // +-inf at a singular-locus hit
  double theta = 0.0;  // filled by rotation_angle

  bool xddot_unbounded() const { return !std::isfinite(xddot); }
  PhasePoint phase() const { return {x, xdot}; }
};

enum class OutcomeKind {
  ClosedPeriodic,
  AxisLimit,         // state tends to (0, +-1): the profile meets the axis orthogonally
  AxisCrossing,      // profile reaches the axis with |x'| < 1: cone point, incomplete
  BoundaryHit,       // state reaches the unit circle away from the axis
  SingularLocusHit,  // x'' unbounded with x' != 0
  Truncated,
};

constexpr std::string_view to_string(OutcomeKind kind) {
  switch (kind) {
    case OutcomeKind::ClosedPeriodic: return "ClosedPeriodic";
    case OutcomeKind::AxisLimit: return "AxisLimit";
    case OutcomeKind::AxisCrossing: return "AxisCrossing";
    case OutcomeKind::BoundaryHit: return "BoundaryHit";
    case OutcomeKind::SingularLocusHit: return "SingularLocusHit";
    case OutcomeKind::Truncated: return "Truncated";
  }
  return "Unknown";
}

struct OrbitEnd {
  OutcomeKind kind = OutcomeKind::Truncated;
  double period = 0.0;  // ClosedPeriodic only; 0 for an equilibrium
  int sign = 0;         // AxisLimit: sign of v at (0,+-1); SingularLocusHit: sign of k2 blow-up
  PhasePoint point{};
  double s = 0.0;
};

struct Orbit {
  double alpha = 0.0;
  std::vector<OrbitSample> samples;
  OrbitEnd outcome;                 // end reached with increasing s
  std::optional<OrbitEnd> backward; // end reached with decreasing s (non-periodic orbits)
  bool equilibrium = false;
  double f_drift_max = 0.0;         // max |F - alpha| over samples
  double max_step_residual = 0.0;   // max |F - alpha| of raw steps before projection
  double half_period = 0.0;         // s between consecutive v = 0 crossings (periodic)
  std::vector<PhasePoint> turning_points;
  double rotation_number = std::numeric_limits<double>::quiet_NaN();
};

struct IntegrateOptions {
  double rtol = 1e-10;
  double atol = 1e-12;
  double initial_step = 1e-3;
  double max_step = 1e-2;
  double min_step = 1e-14;
  double max_s = 200.0;
  double start_tol = 1e-8;           // allowed |F(start) - alpha|
  double axis_tol = 1e-5;            // radius around (0, +-1)
  double axis_crossing_margin = 1e-3;
  double boundary_tol = 1e-10;       // w^2 below this is contact with the unit circle
  double closure_tol = 1e-6;
  double singular_switch = 0.05;     // |ax - 2bw| / (a + 2|b|) handing over to continuation
  bool both_directions = true;
  int equilibrium_samples = 257;
  long max_steps = 5'000'000;
};

namespace detail {

using State = std::array<double, 2>;

class ProfileRun {
 public:
  ProfileRun(const Coefficients& co, double alpha, const IntegrateOptions& opts)
      : co_(co), alpha_(alpha), opts_(opts),
        proj_tol_(1e-13 * (1.0 + std::abs(alpha))) {}

  struct Result {
    std::vector<OrbitSample> samples;
    OrbitEnd end;
    std::vector<PhasePoint> turning;
    double half_period = 0.0;
    double max_step_residual = 0.0;
  };

  struct Rhs {
    const Coefficients* co;
    State operator()(const State& y) const {
      return State{y[1], acceleration_unchecked(*co, y[0], y[1])};
    }
  };
  Rhs rhs() const { return Rhs{&co_}; }

  Result run(PhasePoint start) {
    res_ = {};
    State y{start.u, start.v};
    double s = 0.0;
    push(s, y);
    if (start.v == 0.0) {
      const double acc = acceleration_unchecked(co_, y[0], y[1]);
      if (acc > 0.0) ref_up_ = s;
      else if (acc < 0.0) last_down_ = s;
    }
    double h = opts_.initial_step;
    const double scale = co_.a() + 2.0 * std::abs(co_.b());
    long steps = 0;
    bool cooldown = false;
    while (true) {
      if (++steps > opts_.max_steps)
        throw Error(ErrorCode::NumericalDivergence, "profile integration exceeded its step budget");
      if (s >= opts_.max_s) {
        res_.end = {OutcomeKind::Truncated, 0.0, 0, {y[0], y[1]}, s};
        return std::move(res_);
      }
      if (!cooldown && near_singular_locus(y, 0.5, scale, 20.0)) {
        if (continuation(y, s)) return std::move(res_);
        cooldown = true;
        continue;
      }
      cooldown = false;
      h = std::min({h, opts_.max_step, opts_.max_s - s});
      const auto step = dopri5_step<2>(rhs(), y, h, opts_.rtol, opts_.atol);
      if (step.error > 1.0) {
        h *= std::max(0.2, dopri5_step_factor(step.error));
        if (h < opts_.min_step) {
          if (underflow_end(y, s)) return std::move(res_);
          throw Error(ErrorCode::NumericalDivergence, "step size underflow away from any event");
        }
        continue;
      }
      State y1 = step.y;
      if (y1[0] < 0.0 || 1.0 - y1[0] * y1[0] - y1[1] * y1[1] < 0.0) {
        exit_domain(y, s, h);
        return std::move(res_);
      }
      res_.max_step_residual = std::max(res_.max_step_residual, residual(y1));
      if (!project(y1)) {
        h *= 0.5;
        if (h < opts_.min_step) {
          if (underflow_end(y, s)) return std::move(res_);
          throw Error(ErrorCode::NumericalDivergence, "projection onto the level set failed");
        }
        continue;
      }
      if (y[1] != 0.0 && (y1[1] == 0.0 || (y[1] < 0.0) != (y1[1] < 0.0))) {
        if (v_crossing(y, s, h)) return std::move(res_);
      }
      s += h;
      y = y1;
      push(s, y);
      if (1.0 - y[0] * y[0] - y[1] * y[1] < opts_.boundary_tol) {
        finish_on_boundary(y, s);
        return std::move(res_);
      }
      h *= dopri5_step_factor(step.error);
    }
  }

 private:

  // Close to a*x = 2*b*w with a nearly vertical level-curve tangent, where the
  // curve is a graph u = U(v) and |x''| is large.
  bool near_singular_locus(const State& y, double min_vertical, double scale,
                           double min_acc) const {
    if (co_.b() <= 0.0 || std::abs(y[1]) <= 1e-3) return false;
    if (std::abs(singular_gap(co_, y[0], y[1])) >= opts_.singular_switch * scale) return false;
    if (!(std::abs(acceleration_unchecked(co_, y[0], y[1])) >= min_acc)) return false;
    const Gradient g = gradient_unchecked(co_, y[0], y[1]);
    return std::abs(g.du) >= min_vertical * std::hypot(g.du, g.dv);
  }

  double residual(const State& y) const {
    return std::abs(potential_unchecked(co_, y[0], y[1]) - alpha_);
  }

  bool project(State& y) const {
    PhasePoint p{y[0], y[1]};
    PhasePoint q = p;
    if (!detail_project(q)) {
      // Best effort near the boundary where the gradient is steep.
      if (residual(y) <= 1e-10 * (1.0 + std::abs(alpha_))) return true;
      return false;
    }
    y = {q.u, q.v};
    return true;
  }

  bool detail_project(PhasePoint& p) const {
    for (int it = 0; it < 20; ++it) {
      if (p.u < 0.0 || radial_slack(p) <= 0.0) return false;
      const double r = potential_unchecked(co_, p.u, p.v) - alpha_;
      if (std::abs(r) <= proj_tol_) return true;
      const Gradient g = gradient_unchecked(co_, p.u, p.v);
      const double g2 = g.du * g.du + g.dv * g.dv;
      if (!(g2 > 0.0) || !std::isfinite(g2)) return false;
      p.u -= r * g.du / g2;
      p.v -= r * g.dv / g2;
    }
    return std::abs(potential_unchecked(co_, p.u, p.v) - alpha_) <= 1e-11 * (1.0 + std::abs(alpha_));
  }

  void push(double s, const State& y) {
    res_.samples.push_back({s, y[0], y[1], acceleration_unchecked(co_, y[0], y[1]), 0.0});
  }

  // The state left D during the step [s, s+h]; locate the exit and classify it.
  void exit_domain(const State& y, double s, double h) {
    double lo = 0.0, hi = h;
    State ylo = y;
    for (int it = 0; it < 80 && hi - lo > 1e-16 * (1.0 + s); ++it) {
      const double mid = 0.5 * (lo + hi);
      const State ym = dopri5_step<2>(rhs(), y, mid, opts_.rtol, opts_.atol).y;
      if (ym[0] >= 0.0 && 1.0 - ym[0] * ym[0] - ym[1] * ym[1] >= 0.0) {
        lo = mid;
        ylo = ym;
      } else {
        hi = mid;
      }
    }
    if (lo > 0.0 && project(ylo) && residual(ylo) <= 1e-10 * (1.0 + std::abs(alpha_))) {
      push(s + lo, ylo);
      finish_on_boundary(ylo, s + lo);
      return;
    }
    finish_on_boundary(y, s);
  }

  void finish_on_boundary(const State& y, double s) {
    const PhasePoint p{y[0], y[1]};
    const double dist_axis_point = std::hypot(p.u, std::abs(p.v) - 1.0);
    const double slack = radial_slack(p);
    OrbitEnd end;
    end.point = p;
    end.s = s;
    if (dist_axis_point < opts_.axis_tol) {
      end.kind = OutcomeKind::AxisLimit;
      end.sign = p.v > 0.0 ? 1 : -1;
    } else if (p.u <= std::max(slack, 0.0) || p.u < 1e-9) {
      end.kind = std::abs(p.v) < 1.0 - opts_.axis_crossing_margin ? OutcomeKind::AxisCrossing
                                                                  : OutcomeKind::AxisLimit;
      end.sign = p.v > 0.0 ? 1 : -1;
    } else {
      end.kind = OutcomeKind::BoundaryHit;
    }
    res_.end = end;
  }

  bool underflow_end(const State& y, double s) {
    const double slack = 1.0 - y[0] * y[0] - y[1] * y[1];
    if (slack < 1e-6 || y[0] < 1e-6) {
      finish_on_boundary(y, s);
      return true;
    }
    return false;
  }

  // v changes sign within [s, s+h]. Returns true when the orbit closes.
  bool v_crossing(const State& y, double s, double h) {
    double lo = 0.0, hi = h;
    const bool down = y[1] > 0.0;
    State yc = y;
    for (int it = 0; it < 100 && hi - lo > 1e-15 * (1.0 + s); ++it) {
      const double mid = 0.5 * (lo + hi);
      const State ym = dopri5_step<2>(rhs(), y, mid, opts_.rtol, opts_.atol).y;
      if ((ym[1] > 0.0) == down && ym[1] != 0.0) lo = mid;
      else hi = mid;
    }
    yc = dopri5_step<2>(rhs(), y, hi, opts_.rtol, opts_.atol).y;
    const double sc = s + hi;
    yc[1] = 0.0;
    project_u(yc);
    res_.turning.push_back({yc[0], 0.0});
    if (down) {
      if (ref_up_ && !last_down_) res_.half_period = sc - *ref_up_;
      last_down_ = sc;
      return false;
    }
    if (!ref_up_) {
      ref_up_ = sc;
      ref_u_ = yc[0];
      last_down_.reset();
      return false;
    }
    if (last_down_ && std::abs(yc[0] - ref_u_.value_or(res_.samples.front().x)) < opts_.closure_tol) {
      push(sc, yc);
      res_.end = {OutcomeKind::ClosedPeriodic, sc - *ref_up_, 0, {yc[0], 0.0}, sc};
      return true;
    }
    return false;
  }

  // Solves F(u, 0) = alpha for u near yc[0].
  void project_u(State& y) const {
    for (int it = 0; it < 30; ++it) {
      const double r = potential_unchecked(co_, y[0], 0.0) - alpha_;
      if (std::abs(r) <= proj_tol_) return;
      const double w = std::sqrt(std::max(1e-300, 1.0 - y[0] * y[0]));
      const double fu = 0.5 * co_.a() * w - co_.a() * y[0] * y[0] / (2.0 * w) + co_.b_plus_c() * y[0];
      if (fu == 0.0) return;
      const double du = r / fu;
      if (std::abs(du) > 1e-6) return;
      y[0] -= du;
    }
  }

  // Phase-plane continuation near the singular locus, parametrized by v.
  // Returns true when the run ends (hit or boundary), false when the orbit
  // moves away from the locus and ODE stepping resumes.
  bool continuation(State& y, double& s) {
    const double a = co_.a(), b = co_.b();
    const double scale = a + 2.0 * std::abs(b);
    const double acc0 = acceleration_unchecked(co_, y[0], y[1]);
    const double dir = acc0 >= 0.0 ? 1.0 : -1.0;
    auto gfac = [&](double u, double v) {  // dF/dv divided by v
      const double w = std::sqrt(std::max(0.0, 1.0 - u * u - v * v));
      return -a * u / (2.0 * w) + b;
    };
    auto solve_u = [&](double u_guess, double v, double& u_out) {
      double u = u_guess;
      for (int it = 0; it < 40; ++it) {
        if (u <= 0.0 || 1.0 - u * u - v * v <= 0.0) return false;
        const double r = potential_unchecked(co_, u, v) - alpha_;
        if (std::abs(r) <= proj_tol_) {
          u_out = u;
          return true;
        }
        const double fu = gradient_unchecked(co_, u, v).du;
        if (fu == 0.0 || !std::isfinite(fu)) return false;
        u -= r / fu;
      }
      if (std::abs(potential_unchecked(co_, u, v) - alpha_) > 1e-11 * (1.0 + std::abs(alpha_)))
        return false;
      u_out = u;
      return true;
    };
    const double g0sign = gfac(y[0], y[1]) >= 0.0 ? 1.0 : -1.0;
    double dv = 1e-3;
    int guard = 0;
    while (true) {
      if (++guard > 2'000'000)
        throw Error(ErrorCode::NumericalDivergence, "continuation near the singular locus stalled");
      const double u = y[0], v = y[1];
      const Gradient g = gradient_unchecked(co_, u, v);
      const double v1 = v + dir * dv;
      // Turning points (v = 0) are events of the ODE loop; hand back before one.
      if (std::abs(v1) <= 1e-3 || (v1 < 0.0) != (v < 0.0)) return false;
      double u1 = 0.0;
      const bool ok = solve_u(u - g.dv / g.du * dir * dv, v1, u1) &&
                      std::abs(u1 - u) <= 4e-3;
      if (!ok) {
        dv *= 0.5;
        if (dv < 1e-15) {
          if (1.0 - u * u - v * v < 1e-6) {
            finish_on_boundary(y, s);
            return true;
          }
          return false;
        }
        continue;
      }
      if (gfac(u1, v1) * g0sign <= 0.0) {
        locate_fold(y, s, v1, dir, gfac, solve_u);
        return true;
      }
      const double ds = arc_increment(u, v, u1, v1, solve_u);
      if (!(ds > 0.0)) return false;
      s += ds;
      y = {u1, v1};
      push(s, y);
      if (1.0 - u1 * u1 - v1 * v1 < opts_.boundary_tol) {
        finish_on_boundary(y, s);
        return true;
      }
      if (!near_singular_locus(y, 0.3, 2.0 * scale, 10.0)) return false;
      if (s >= opts_.max_s) return false;
      dv = std::min(1e-3, dv * 1.5);
    }
  }

  template <class GFac, class SolveU>
  void locate_fold(const State& y, double s, double v_far, double dir, GFac gfac, SolveU solve_u) {
    const double sign0 = gfac(y[0], y[1]) >= 0.0 ? 1.0 : -1.0;
    double v_lo = y[1], v_hi = v_far;
    double u_lo = y[0];
    for (int it = 0; it < 200 && std::abs(v_hi - v_lo) > 1e-15; ++it) {
      const double vm = 0.5 * (v_lo + v_hi);
      double um = 0.0;
      if (solve_u(u_lo, vm, um) && gfac(um, vm) * sign0 > 0.0) {
        v_lo = vm;
        u_lo = um;
      } else {
        v_hi = vm;
      }
    }
    const double v_star = v_lo, u_star = u_lo;
    // One sample where |k2| is large but still well conditioned, then the hit itself.
    const double offset = std::abs(v_star - y[1]);
    double v_pre = y[1];
    double u_pre = y[0];
    if (offset > 0.0) {
      const double k2_ref = std::abs(k2_of(y[0], y[1]));
      double delta = offset * std::min(1.0, k2_ref / 1e4);
      if (delta < offset) {
        double um = 0.0;
        const double vm = v_star - dir * delta;
        if (solve_u(u_star, vm, um)) {
          v_pre = vm;
          u_pre = um;
        }
      }
    }
    double s_cur = s;
    if (v_pre != y[1]) {
      s_cur += arc_increment(y[0], y[1], u_pre, v_pre, solve_u);
      push(s_cur, {u_pre, v_pre});
    }
    const double k2_side = k2_of(u_pre, v_pre);
    s_cur += arc_increment(u_pre, v_pre, u_star, v_star, solve_u);
    const double inf = std::numeric_limits<double>::infinity();
    res_.samples.push_back({s_cur, u_star, v_star, std::copysign(inf, k2_side), 0.0});
    res_.end = {OutcomeKind::SingularLocusHit, 0.0, k2_side >= 0.0 ? 1 : -1, {u_star, v_star}, s_cur};
  }

  // s-length of the level-curve piece between two nearby points, from
  // ds = dv / x''. 1/x'' is smooth in v through turning points and folds, so
  // Simpson's rule applies; falls back to the trapezoid if the midpoint solve fails.
  template <class SolveU>
  double arc_increment(double u0, double v0, double u1, double v1, SolveU solve_u) const {
    auto inv_acc = [&](double u, double v) {
      const double acc = acceleration_unchecked(co_, u, v);
      return std::isfinite(acc) ? 1.0 / acc : 0.0;
    };
    const double dv = v1 - v0;
    const double vm = 0.5 * (v0 + v1);
    double um = 0.0;
    if (solve_u(0.5 * (u0 + u1), vm, um))
      return dv / 6.0 * (inv_acc(u0, v0) + 4.0 * inv_acc(um, vm) + inv_acc(u1, v1));
    return 0.5 * dv * (inv_acc(u0, v0) + inv_acc(u1, v1));
  }

  double k2_of(double u, double v) const {
    const double w = std::sqrt(std::max(0.0, 1.0 - u * u - v * v));
    return (2.0 * co_.c() * u + co_.a() * w) / (co_.a() * u - 2.0 * co_.b() * w);
  }

  const Coefficients& co_;
  double alpha_;
  const IntegrateOptions& opts_;
  double proj_tol_;
  Result res_;
  std::optional<double> ref_up_;
  std::optional<double> ref_u_;
  std::optional<double> last_down_;
};

}  // namespace detail

/// Integrates the profile through `start` until an outcome event. Non-periodic
/// orbits are also followed backwards, so the samples span both ends.
inline Orbit integrate_profile(const Coefficients& co, double alpha, PhasePoint start,
                               const IntegrateOptions& opts = {}, const Tolerances& tol = {}) {
  if (!in_domain(start, tol.domain))
    throw Error(ErrorCode::InvalidStart, "orbit start lies outside the phase domain");
  const double r0 = std::abs(detail::potential_unchecked(co, start.u, start.v) - alpha);
  if (r0 > opts.start_tol) {
    std::ostringstream msg;
    msg << "orbit start is off the level curve by " << r0;
    throw Error(ErrorCode::InvalidStart, msg.str());
  }

  Orbit orbit;
  orbit.alpha = alpha;
  const CriticalData cd = critical_data(co);
  const PhasePoint crit = cd.critical_point();
  const bool near_critical = std::hypot(start.u - crit.u, start.v) < 1e-6;
  if (std::abs(alpha - cd.alpha0) <= level_tolerance(cd, tol) || near_critical) {
    // Equilibrium: x is constant and the profile is a circle of S^2. Sample one
    // full turn of the rotation angle.
    const double x = crit.u;
    const double w = std::sqrt(1.0 - x * x);
    const double span = 2.0 * std::numbers::pi * (1.0 - x * x) / w;
    const int n = std::max(2, opts.equilibrium_samples);
    for (int i = 0; i < n; ++i) {
      const double s = span * i / (n - 1);
      orbit.samples.push_back({s, x, 0.0, detail::acceleration_unchecked(co, x, 0.0), 0.0});
    }
    orbit.equilibrium = true;
    orbit.outcome = {OutcomeKind::ClosedPeriodic, 0.0, 0, {x, 0.0}, 0.0};
    orbit.f_drift_max = std::abs(detail::potential_unchecked(co, x, 0.0) - alpha);
    orbit.turning_points.push_back({x, 0.0});
    return orbit;
  }

  detail::ProfileRun fwd(co, alpha, opts);
  auto f = fwd.run(start);
  orbit.outcome = f.end;
  orbit.half_period = f.half_period;
  orbit.max_step_residual = f.max_step_residual;
  orbit.turning_points = f.turning;

  const bool open_end = f.end.kind != OutcomeKind::ClosedPeriodic &&
                        f.end.kind != OutcomeKind::Truncated;
  if (opts.both_directions && open_end) {
    // Reversibility: (x(-s), -x'(-s)) is again a solution.
    detail::ProfileRun bwd(co, alpha, opts);
    auto b = bwd.run({start.u, -start.v});
    std::vector<OrbitSample> merged;
    merged.reserve(b.samples.size() + f.samples.size());
    for (auto it = b.samples.rbegin(); it != b.samples.rend(); ++it) {
      if (it->s == 0.0) continue;
      OrbitSample smp = *it;
      smp.s = -smp.s;
      smp.xdot = -smp.xdot;
      merged.push_back(smp);
    }
    merged.insert(merged.end(), f.samples.begin(), f.samples.end());
    orbit.samples = std::move(merged);
    OrbitEnd be = b.end;
    be.point.v = -be.point.v;
    be.s = -be.s;
    if (be.kind == OutcomeKind::AxisLimit || be.kind == OutcomeKind::AxisCrossing) be.sign = -be.sign;
    orbit.backward = be;
    orbit.max_step_residual = std::max(orbit.max_step_residual, b.max_step_residual);
    for (PhasePoint p : b.turning) orbit.turning_points.push_back(p);
  } else {
    orbit.samples = std::move(f.samples);
  }
  for (const OrbitSample& smp : orbit.samples)
    orbit.f_drift_max = std::max(
        orbit.f_drift_max, std::abs(detail::potential_unchecked(co, smp.x, smp.xdot) - alpha));
  return orbit;
}

/// Default start on C_alpha: the smallest v = 0 crossing, else the upper axis
/// or circle intersection.
inline PhasePoint default_start(const Coefficients& co, double alpha, const Tolerances& tol = {}) {
  const auto roots = level_turning_points(co, alpha, tol);
  if (!roots.empty()) return {roots.front(), 0.0};
  const CriticalData cd = critical_data(co);
  if (std::abs(alpha - cd.alpha0) <= level_tolerance(cd, tol)) return cd.critical_point();
  const BoundaryIntersections bi = boundary_intersections(co, alpha, tol);
  if (!bi.axis.empty()) return bi.axis.front();
  if (!bi.circle.empty()) return bi.circle.front();
  throw Error(ErrorCode::InvalidStart, "level curve has no usable start point");
}

}  // namespace rlws
