#pragma once

// Closed-form analysis of the first integral
//
//   F(u,v) = (a/2) u sqrt(1-u^2-v^2) + (b/2)(u^2+v^2) + (c/2) u^2
//
// on the half disk D = {u >= 0, u^2+v^2 <= 1}. A profile x(s) of a rotational
// surface in S^3 with aH + bK = c satisfies F(x, x') = alpha for a constant
// alpha, so the level curves C_alpha carry every profile.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "rlws/error.hpp"

namespace rlws {

struct Tolerances {
  double domain = 1e-12;     // clamp of 1-u^2-v^2 at zero
  double level_rel = 1e-9;   // tol_level = level_rel * (1 + |alpha0|)
  double delta_rel = 1e-12;  // tol_delta = delta_rel * (a^2 + 4|bc|)
  double w = 1e-9;           // smallest usable sqrt(1-u^2-v^2) or x
};

/// Canonical Weingarten triple with a > 0, b != 0, c >= 0 and nonzero
/// discriminant. Only `validate_normalize` creates one.
class Coefficients {
 public:
  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double c() const noexcept { return c_; }
  double delta() const noexcept { return delta_; }
  /// True when the raw input was multiplied by -1 to make c >= 0.
  bool negated() const noexcept { return negated_; }
  double b_plus_c() const noexcept { return b_ + c_; }

  friend Coefficients validate_normalize(double, double, double, const Tolerances&);

 private:
  Coefficients(double a, double b, double c, bool negated)
      : a_(a), b_(b), c_(c), delta_(a * a + 4.0 * b * c), negated_(negated) {}

  double a_, b_, c_, delta_;
  bool negated_;
};

struct PhasePoint {
  double u = 0.0;  // profile height x
  double v = 0.0;  // its arc-length derivative x'

  friend bool operator==(const PhasePoint&, const PhasePoint&) = default;
};

/// 1 - u^2 - v^2, the square of w.
inline double radial_slack(PhasePoint p) { return 1.0 - p.u * p.u - p.v * p.v; }

inline bool in_domain(PhasePoint p, double tol = 1e-12) {
  return p.u >= -tol && radial_slack(p) >= -tol;
}

inline Coefficients validate_normalize(double a_raw, double b_raw, double c_raw,
                                       const Tolerances& tol = {}) {
  if (!std::isfinite(a_raw) || !std::isfinite(b_raw) || !std::isfinite(c_raw))
    throw Error(ErrorCode::InvalidArgument, "coefficients must be finite");
  bool negated = false;
  if (c_raw < 0.0) {
    a_raw = -a_raw;
    b_raw = -b_raw;
    c_raw = -c_raw;
    negated = true;
  }
  if (a_raw == 0.0)
    throw Error(ErrorCode::RejectZeroA, "a == 0 is not supported (pure Gaussian-curvature relation)");
  if (b_raw == 0.0)
    throw Error(ErrorCode::RejectZeroB, "b == 0 is not supported (pure mean-curvature relation)");
  const double delta = a_raw * a_raw + 4.0 * b_raw * c_raw;
  const double tol_delta = tol.delta_rel * (a_raw * a_raw + 4.0 * std::abs(b_raw * c_raw));
  if (std::abs(delta) <= tol_delta)
    throw Error(ErrorCode::RejectZeroDiscriminant, "discriminant is zero (a^2 + 4bc == 0)");
  if (a_raw < 0.0)
    throw Error(ErrorCode::RejectNegativeA, "a < 0 after normalizing c >= 0 is not supported");
  return Coefficients(a_raw, b_raw, c_raw, negated);
}

namespace detail {

inline double potential_unchecked(const Coefficients& co, double u, double v) {
  const double w = std::sqrt(std::max(0.0, 1.0 - u * u - v * v));
  return 0.5 * co.a() * u * w + 0.5 * co.b() * (u * u + v * v) + 0.5 * co.c() * u * u;
}

struct Gradient {
  double du = 0.0;
  double dv = 0.0;
};

// Requires w > 0.
inline Gradient gradient_unchecked(const Coefficients& co, double u, double v) {
  const double w = std::sqrt(std::max(0.0, 1.0 - u * u - v * v));
  const double a = co.a();
  return {0.5 * a * w - a * u * u / (2.0 * w) + co.b_plus_c() * u,
          (-a * u / (2.0 * w) + co.b()) * v};
}

}  // namespace detail

inline double weingarten_potential(const Coefficients& co, PhasePoint p,
                                   const Tolerances& tol = {}) {
  if (p.u < -tol.domain || radial_slack(p) < -tol.domain) {
    std::ostringstream msg;
    msg << "point (" << p.u << ", " << p.v << ") lies outside the phase domain";
    throw Error(ErrorCode::DomainViolation, msg.str());
  }
  return detail::potential_unchecked(co, p.u, p.v);
}

inline detail::Gradient potential_gradient(const Coefficients& co, PhasePoint p,
                                           const Tolerances& tol = {}) {
  const double slack = radial_slack(p);
  if (slack < -tol.domain)
    throw Error(ErrorCode::DomainViolation, "gradient requested outside the phase domain");
  if (std::sqrt(std::max(0.0, slack)) <= tol.w)
    throw Error(ErrorCode::BoundarySingularity, "gradient is singular on the unit circle");
  return detail::gradient_unchecked(co, p.u, p.v);
}

enum class ActiveCritical { Plus, Minus, Both };

struct CriticalData {
  double u_plus = 0.0;
  double u_minus = 0.0;
  double alpha0 = 0.0;
  double tau = 0.0;
  double alpha_min = 0.0;
  double alpha_max = 0.0;
  ActiveCritical active_critical = ActiveCritical::Plus;

  /// The interior critical point (u_+,0) when b+c >= 0, (u_-,0) when b+c <= 0.
  PhasePoint critical_point() const {
    return {active_critical == ActiveCritical::Minus ? u_minus : u_plus, 0.0};
  }
};

inline CriticalData critical_data(const Coefficients& co) {
  const double a = co.a();
  const double s = co.b_plus_c();
  const double r = std::hypot(a, s);
  CriticalData cd;
  const double up2 = 0.5 * (1.0 + std::abs(s) / r);
  cd.u_plus = std::sqrt(up2);
  // Product of the roots of u^4 - u^2 + a^2/(4r^2) avoids cancellation.
  cd.u_minus = std::sqrt(a * a / (4.0 * r * r * up2));
  cd.tau = s > 0.0 ? a * a / (r + s) : r - s;
  cd.alpha0 = s < 0.0 ? a * a / (4.0 * (r - s)) : 0.25 * (r + s);
  cd.alpha_min = s <= 0.0 ? 0.5 * co.b() : std::min(0.0, 0.5 * co.b());
  cd.alpha_max = cd.alpha0;
  cd.active_critical = s > 0.0 ? ActiveCritical::Plus
                       : s < 0.0 ? ActiveCritical::Minus
                                 : ActiveCritical::Both;
  return cd;
}

inline double level_tolerance(const CriticalData& cd, const Tolerances& tol = {}) {
  return tol.level_rel * (1.0 + std::abs(cd.alpha0));
}

/// Points of C_alpha where dF/du = 0, i.e. where the level curve has a
/// horizontal tangent. Two points for b/2 < alpha < alpha0, the critical point
/// at alpha0, none otherwise.
inline std::vector<PhasePoint> gamma_locus_intersections(const Coefficients& co, double alpha,
                                                         const Tolerances& tol = {}) {
  const CriticalData cd = critical_data(co);
  const double tol_level = level_tolerance(cd, tol);
  if (alpha <= 0.5 * co.b()) return {};
  if (std::abs(alpha - cd.alpha0) <= tol_level) return {cd.critical_point()};
  if (alpha > cd.alpha0) return {};
  const double a = co.a();
  const double ratio2 = cd.tau * cd.tau / (a * a);
  const double coef = cd.tau - co.b() * ratio2 + co.c();
  const double u2 = (2.0 * alpha - co.b()) / coef;
  const double v2 = 1.0 - u2 * (1.0 + ratio2);
  if (u2 <= 0.0 || v2 < 0.0) return {};
  const double u = std::sqrt(u2);
  const double v = std::sqrt(v2);
  if (v == 0.0) return {{u, 0.0}};
  return {{u, v}, {u, -v}};
}

struct BoundaryIntersections {
  std::vector<PhasePoint> axis;    // C_alpha on {u = 0}
  std::vector<PhasePoint> circle;  // C_alpha on the unit circle
  bool circle_full = false;        // c == 0 and alpha == b/2: the whole half circle
};

inline BoundaryIntersections boundary_intersections(const Coefficients& co, double alpha,
                                                    const Tolerances& tol = {}) {
  constexpr double slack = 1e-14;
  BoundaryIntersections out;
  const double va = 2.0 * alpha / co.b();
  if (va >= -slack && va <= 1.0 + slack) {
    const double v = std::sqrt(std::clamp(va, 0.0, 1.0));
    if (v == 0.0) {
      out.axis.push_back({0.0, 0.0});
    } else {
      out.axis.push_back({0.0, v});
      out.axis.push_back({0.0, -v});
    }
  }
  if (co.c() > 0.0) {
    const double q = (2.0 * alpha - co.b()) / co.c();
    if (q >= -slack && q <= 1.0 + slack) {
      const double u2 = std::clamp(q, 0.0, 1.0);
      const double u = std::sqrt(u2);
      const double v = std::sqrt(1.0 - u2);
      if (v == 0.0) {
        out.circle.push_back({u, 0.0});
      } else {
        out.circle.push_back({u, v});
        out.circle.push_back({u, -v});
      }
    }
  } else {
    const CriticalData cd = critical_data(co);
    out.circle_full = std::abs(2.0 * alpha - co.b()) <= 2.0 * level_tolerance(cd, tol);
  }
  return out;
}

/// True when C_alpha is a set of boundary points only: {(0,0)} for alpha = 0
/// with b > 0, {(0,+-1)} for alpha = b/2 with b < 0. Both are minima of F.
inline bool level_is_degenerate(const Coefficients& co, double alpha, const Tolerances& tol = {}) {
  const double tl = level_tolerance(critical_data(co), tol);
  if (co.b() > 0.0) return std::abs(alpha) <= tl;
  return std::abs(alpha - 0.5 * co.b()) <= tl;
}

/// Points of C_alpha with dF/dv = 0 and v != 0, where a*u = 2*b*w. The profile
/// acceleration and the second principal curvature are unbounded there. Only
/// possible for b > 0.
inline std::vector<PhasePoint> singular_locus_intersections(const Coefficients& co, double alpha) {
  const double a = co.a();
  const double b = co.b();
  if (b <= 0.0) return {};
  // On the locus w = a u / (2b), so F = b/2 + u^2 (a^2/(8b) + c/2).
  const double coef = a * a / (8.0 * b) + 0.5 * co.c();
  const double u2 = (alpha - 0.5 * b) / coef;
  if (u2 <= 0.0) return {};
  const double v2 = 1.0 - u2 * (1.0 + a * a / (4.0 * b * b));
  if (v2 <= 1e-14) return {};
  const double u = std::sqrt(u2);
  const double v = std::sqrt(v2);
  return {{u, v}, {u, -v}};
}

/// Crossings of C_alpha with {v = 0} strictly inside D, ascending in u.
///
/// On v = 0 with u = sin(phi), F = (b+c)/4 + (R/4) sin(2 phi - delta) where
/// R = sqrt(a^2 + (b+c)^2) and delta = atan2(b+c, a).
inline std::vector<double> level_turning_points(const Coefficients& co, double alpha,
                                                const Tolerances& tol = {}) {
  const double s = co.b_plus_c();
  const double r = std::hypot(co.a(), s);
  const double shift = std::atan2(s, co.a());
  double q = (4.0 * alpha - s) / r;
  const CriticalData cd = critical_data(co);
  if (q > 1.0) {
    if (alpha - cd.alpha0 > level_tolerance(cd, tol)) return {};
    q = 1.0;
  }
  if (q < -1.0) return {};
  const double theta = std::asin(q);
  std::vector<double> roots;
  for (double t : {theta, std::numbers::pi - theta}) {
    const double phi = 0.5 * (t + shift);
    const double u = std::sin(phi);
    const double w = std::cos(phi);
    if (phi <= 0.0 || u <= tol.w || w <= tol.w) continue;
    if (!roots.empty() && std::abs(roots.front() - u) <= 1e-12) continue;
    roots.push_back(u);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

enum class LevelKind {
  OutOfRange,
  IncompleteAxis,
  IncompleteBoundary,
  UnclassifiedEndpoint,
  CompleteClosedOrbit,
  CliffordTorus,
};

constexpr std::string_view to_string(LevelKind kind) {
  switch (kind) {
    case LevelKind::OutOfRange: return "OutOfRange";
    case LevelKind::IncompleteAxis: return "IncompleteAxis";
    case LevelKind::IncompleteBoundary: return "IncompleteBoundary";
    case LevelKind::UnclassifiedEndpoint: return "UnclassifiedEndpoint";
    case LevelKind::CompleteClosedOrbit: return "CompleteClosedOrbit";
    case LevelKind::CliffordTorus: return "CliffordTorus";
  }
  return "Unknown";
}

struct SpecialSets {
  std::vector<PhasePoint> axis;
  std::vector<PhasePoint> circle;
  bool circle_full = false;
  std::vector<PhasePoint> gamma;
};

struct LevelClassification {
  LevelKind kind = LevelKind::OutOfRange;
  std::string detail;
  std::vector<PhasePoint> singular_locus_hits;
  SpecialSets special_sets;
};

namespace detail {

inline std::string endpoint_detail(const Coefficients& co, double endpoint_value, int which) {
  std::ostringstream s;
  s << "alpha sits on the open-interval endpoint " << endpoint_value << "; ";
  switch (which) {
    case 0:
      s << "C_alpha meets the axis {u=0} only at (0,0)";
      if (co.b() > 0.0) s << " and reduces to that single point (alpha = 0 is the minimum)";
      break;
    case 1:
      s << "C_alpha meets the axis {u=0} at (0,+-1)";
      if (co.c() == 0.0) s << "; with c = 0 it contains the whole half circle";
      if (co.b() < 0.0) s << "; with b < 0 it reduces to {(0,+-1)}";
      if (co.b() > 0.0 && co.delta() > 0.0)
        s << "; umbilic geodesic spheres live on this level (reported, not asserted complete)";
      break;
    default:
      s << "C_alpha meets the unit circle only at (1,0)";
      break;
  }
  return s.str();
}

}  // namespace detail

/// Places alpha in the completeness taxonomy of rotational linear Weingarten
/// surfaces. Interval precedence: axis, boundary, complete (the first two
/// overlap when b < 0).
inline LevelClassification classify_level(const Coefficients& co, double alpha,
                                          const Tolerances& tol = {}) {
  const CriticalData cd = critical_data(co);
  const double tl = level_tolerance(cd, tol);
  const double b2 = 0.5 * co.b();
  const double bc2 = 0.5 * co.b_plus_c();

  LevelClassification out;
  const BoundaryIntersections bi = boundary_intersections(co, alpha, tol);
  out.special_sets.axis = bi.axis;
  out.special_sets.circle = bi.circle;
  out.special_sets.circle_full = bi.circle_full;
  out.special_sets.gamma = gamma_locus_intersections(co, alpha, tol);
  out.singular_locus_hits = singular_locus_intersections(co, alpha);

  std::ostringstream detail;
  if (alpha < cd.alpha_min - tl || alpha > cd.alpha0 + tl) {
    out.kind = LevelKind::OutOfRange;
    detail << "alpha outside the attained range [" << cd.alpha_min << ", " << cd.alpha0
           << "] of F on D; no profile exists";
    out.detail = detail.str();
    return out;
  }
  if (std::abs(alpha - cd.alpha0) <= tl) {
    out.kind = LevelKind::CliffordTorus;
    const PhasePoint p = cd.critical_point();
    detail << "alpha equals the maximum alpha0 = " << cd.alpha0
           << "; C_alpha is the single critical point (" << p.u
           << ", 0) and the surface is the Clifford torus x = " << p.u;
    if (cd.active_critical == ActiveCritical::Both) detail << " (b+c = 0: u_+ = u_-)";
    out.detail = detail.str();
    return out;
  }
  const double endpoints[3] = {0.0, b2, bc2};
  for (int i = 0; i < 3; ++i) {
    if (std::abs(alpha - endpoints[i]) <= tl) {
      out.kind = LevelKind::UnclassifiedEndpoint;
      out.detail = detail::endpoint_detail(co, endpoints[i], i);
      return out;
    }
  }
  if (alpha > std::min(0.0, b2) && alpha < std::max(0.0, b2)) {
    out.kind = LevelKind::IncompleteAxis;
    out.detail =
        "C_alpha meets the axis {u=0} at two points with |v| < 1; the profile reaches the "
        "rotation axis non-orthogonally and the surface is not complete";
    return out;
  }
  if (alpha > b2 && alpha < bc2) {
    out.kind = LevelKind::IncompleteBoundary;
    out.detail =
        "C_alpha meets the unit circle at two points; the profile leaves the phase domain in "
        "finite arc length and the surface is not complete";
    return out;
  }
  if (alpha > std::max(0.0, bc2) && alpha < cd.alpha0) {
    out.kind = LevelKind::CompleteClosedOrbit;
    detail << "C_alpha avoids the axis and the unit circle and is a smooth simple closed curve; "
              "the profile is periodic and the surface is complete";
    if (!out.singular_locus_hits.empty()) {
      const PhasePoint p = out.singular_locus_hits.front();
      detail << ". WARNING: C_alpha crosses the singular locus a*u = 2*b*w at (" << p.u
             << ", +-" << std::abs(p.v)
             << "), where x'' and k2 are unbounded; the level curve is not traversable as a "
                "C^2 profile";
    }
    out.detail = detail.str();
    return out;
  }
  // Unreachable for valid coefficients: the intervals above cover the range.
  out.kind = LevelKind::OutOfRange;
  out.detail = "alpha not covered by any interval";
  return out;
}

}  // namespace rlws
