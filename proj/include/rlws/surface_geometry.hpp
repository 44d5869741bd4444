#pragma once

// Geometry of the rotational surface psi(s,t) = (x cos t, x sin t, y, z) in S^3
// built from a profile orbit: principal curvatures, the Weingarten residual,
// the rotation angle of the profile, meshes and stereographic projection.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <vector>

#include "rlws/error.hpp"
#include "rlws/phase_core.hpp"
#include "rlws/profile_integrator.hpp"

namespace rlws {

struct CurvaturePair {
  double k1 = 0.0;
  double k2 = 0.0;
  double H = 0.0;
  double K = 0.0;
  bool k2_unbounded = false;
};

enum class CurvatureForm {
  Profile,       // k2 = (x'' + x) / w
  FromRelation,  // k2 = (2cx + aw) / (ax - 2bw), finite where w -> 0
};

/// Principal curvatures of the surface along the profile, with k1 = -w/x <= 0.
inline CurvaturePair principal_curvatures(const Coefficients& co, double x, double xdot,
                                          double xddot, CurvatureForm form = CurvatureForm::Profile,
                                          const Tolerances& tol = {}) {
  if (x <= tol.w) throw Error(ErrorCode::AxisSingularity, "curvature requested on the rotation axis");
  const double slack = 1.0 - x * x - xdot * xdot;
  if (slack < -tol.domain)
    throw Error(ErrorCode::DomainViolation, "curvature requested outside the phase domain");
  const double w = std::sqrt(std::max(0.0, slack));
  CurvaturePair kp;
  kp.k1 = -w / x;
  if (form == CurvatureForm::Profile) {
    if (w <= tol.w)
      throw Error(ErrorCode::BoundarySingularity, "k2 = (x''+x)/w is singular where w = 0");
    kp.k2 = (xddot + x) / w;
    kp.k2_unbounded = !std::isfinite(kp.k2);
  } else {
    const double den = co.a() * x - 2.0 * co.b() * w;
    const double num = 2.0 * co.c() * x + co.a() * w;
    if (std::abs(den) <= tol.w * (co.a() + 2.0 * std::abs(co.b()))) {
      kp.k2 = std::copysign(std::numeric_limits<double>::infinity(), num * (den == 0.0 ? 1.0 : den));
      kp.k2_unbounded = true;
    } else {
      kp.k2 = num / den;
    }
  }
  kp.H = 0.5 * (kp.k1 + kp.k2);
  kp.K = kp.k1 * kp.k2;
  return kp;
}

inline double weingarten_residual(const Coefficients& co, const CurvaturePair& kp) {
  if (kp.k2_unbounded || !std::isfinite(kp.k2))
    throw Error(ErrorCode::UnboundedCurvature, "residual undefined where k2 is unbounded");
  return co.a() * kp.H + co.b() * kp.K - co.c();
}

namespace detail {

// theta' = w / (1 - x^2) and its s-derivative along the profile.
struct ThetaRate {
  double value;
  double slope;
  bool smooth;
};

inline ThetaRate theta_rate(const OrbitSample& smp) {
  const double r2 = 1.0 - smp.x * smp.x;
  const double w = std::sqrt(std::max(0.0, r2 - smp.xdot * smp.xdot));
  ThetaRate t{w / r2, 0.0, false};
  if (w > 1e-6 && std::isfinite(smp.xddot)) {
    const double dw = -smp.xdot * (smp.x + smp.xddot) / w;
    t.slope = dw / r2 + 2.0 * smp.x * smp.xdot * w / (r2 * r2);
    t.smooth = std::isfinite(t.slope);
  }
  return t;
}

}  // namespace detail

/// Fills theta(s), the rotation angle of the profile in the (y,z) plane, with
/// theta = 0 at s = 0. From x^2 + r^2 = 1 and |gamma'| = 1,
/// r^2 theta'^2 = 1 - x'^2 - r'^2, hence theta' = w / (1 - x^2).
inline Orbit rotation_angle(Orbit orbit, const Tolerances& tol = {}) {
  auto& smp = orbit.samples;
  if (smp.empty()) return orbit;
  for (const auto& q : smp)
    if (q.x >= 1.0 - tol.w)
      throw Error(ErrorCode::BoundaryContact, "profile touches x = 1, rotation angle undefined");
  smp[0].theta = 0.0;
  for (std::size_t i = 1; i < smp.size(); ++i) {
    const double h = smp[i].s - smp[i - 1].s;
    const auto r0 = detail::theta_rate(smp[i - 1]);
    const auto r1 = detail::theta_rate(smp[i]);
    // Trapezoid with the Hermite end correction (fourth order) when both slopes exist.
    double inc = 0.5 * h * (r0.value + r1.value);
    if (r0.smooth && r1.smooth) inc += h * h / 12.0 * (r0.slope - r1.slope);
    smp[i].theta = smp[i - 1].theta + std::max(0.0, inc);
  }
  // Shift so that theta(0) = 0 at the start sample.
  double theta0 = smp[0].theta;
  for (const auto& q : smp)
    if (q.s == 0.0) theta0 = q.theta;
  for (auto& q : smp) q.theta -= theta0;

  if (orbit.outcome.kind == OutcomeKind::ClosedPeriodic) {
    if (orbit.equilibrium) {
      orbit.rotation_number = (smp.back().theta - smp.front().theta) / (2.0 * std::numbers::pi);
    } else if (orbit.outcome.period > 0.0) {
      // theta advance over the last full period.
      const double s_end = smp.back().s;
      const double s_begin = s_end - orbit.outcome.period;
      auto theta_at = [&](double s) {
        auto it = std::lower_bound(smp.begin(), smp.end(), s,
                                   [](const OrbitSample& q, double v) { return q.s < v; });
        if (it == smp.begin()) return it->theta;
        if (it == smp.end()) return smp.back().theta;
        const auto& hi = *it;
        const auto& lo = *(it - 1);
        const double t = (s - lo.s) / (hi.s - lo.s);
        return lo.theta + t * (hi.theta - lo.theta);
      };
      orbit.rotation_number =
          (smp.back().theta - theta_at(s_begin)) / (2.0 * std::numbers::pi);
    }
  }
  return orbit;
}

struct UmbilicSphere {
  double rho = 0.0;  // geodesic radius
  double k = 0.0;    // k1 = k2 = -cot(rho)
};

/// Totally umbilic geodesic spheres satisfying the relation. Their profile
/// x(s) = sin(rho) sin(s / sin(rho)) keeps F = b/2 iff c t^2 + a t - b = 0
/// with t = tan(rho) > 0.
inline std::vector<UmbilicSphere> umbilic_spheres(const Coefficients& co) {
  std::vector<double> roots;
  const double a = co.a(), b = co.b(), c = co.c();
  if (c == 0.0) {
    roots.push_back(b / a);
  } else if (co.delta() >= 0.0) {
    const double sq = std::sqrt(co.delta());
    // Stable quadratic roots.
    const double q = -0.5 * (a + sq);
    roots.push_back(q / c);
    if (q != 0.0) roots.push_back(-b / q);
  }
  std::vector<UmbilicSphere> out;
  std::sort(roots.begin(), roots.end());
  for (double t : roots) {
    if (!(t > 0.0)) continue;
    out.push_back({std::atan(t), -1.0 / t});
  }
  return out;
}

struct IsoparametricReport {
  double k1_min = 0.0;
  double k1_max = 0.0;
  double k1_stddev = 0.0;
  bool is_isoparametric = false;
  std::size_t samples_used = 0;
};

/// Checks whether k1 (hence, with the relation, k2) is constant along the orbit.
/// Samples where w/x is ill conditioned (next to the axis or the circle) are skipped.
inline IsoparametricReport isoparametric_test(const Coefficients& /*co*/, const Orbit& orbit,
                                              const Tolerances& tol = {}) {
  std::vector<double> k1;
  for (const auto& q : orbit.samples) {
    const double slack = 1.0 - q.x * q.x - q.xdot * q.xdot;
    if (q.x <= std::max(tol.w, 1e-4) || slack <= 1e-8) continue;
    k1.push_back(-std::sqrt(slack) / q.x);
  }
  if (k1.size() < 100)
    throw Error(ErrorCode::InsufficientSamples, "isoparametric test needs at least 100 samples");
  IsoparametricReport rep;
  rep.samples_used = k1.size();
  const auto [mn, mx] = std::minmax_element(k1.begin(), k1.end());
  rep.k1_min = *mn;
  rep.k1_max = *mx;
  double mean = 0.0;
  for (double k : k1) mean += k;
  mean /= static_cast<double>(k1.size());
  double var = 0.0;
  for (double k : k1) var += (k - mean) * (k - mean);
  rep.k1_stddev = std::sqrt(var / static_cast<double>(k1.size()));
  rep.is_isoparametric = (rep.k1_max - rep.k1_min) <= 1e-6 * (1.0 + std::abs(rep.k1_max));
  return rep;
}

using Vec4 = std::array<double, 4>;
using Vec3 = std::array<double, 3>;

struct Face {
  std::array<std::uint32_t, 4> v{};
  std::uint8_t count = 4;  // 3 for pole-cap triangles
};

struct MeshMeta {
  double a = 0.0, b = 0.0, c = 0.0;
  double alpha = 0.0;
  double rotation_number = std::numeric_limits<double>::quiet_NaN();
  int periods = 1;         // profile periods covered by the mesh
  int pole = 0;            // projection pole (+-1..+-4), 0 when not projected
};

struct SurfaceMesh {
  std::vector<Vec4> vertices;
  std::vector<Face> faces;
  std::size_t n_s = 0;  // rings along the profile (pole caps count as rings)
  std::size_t n_t = 0;
  bool closed_s = false;
  MeshMeta meta;
};

struct ProjectedMesh {
  std::vector<Vec3> vertices;
  std::vector<Face> faces;
  MeshMeta meta;
};

namespace detail {

// Smallest q <= q_max with |r - p/q| <= eps, if any.
inline std::optional<int> rational_denominator(double r, int q_max, double eps) {
  if (!std::isfinite(r)) return std::nullopt;
  for (int q = 1; q <= q_max; ++q)
    if (std::abs(r * q - std::round(r * q)) <= eps * q) return q;
  return std::nullopt;
}

}  // namespace detail

/// Samples psi(s_i, t_j) = (x cos t, x sin t, r cos theta, r sin theta),
/// r = sqrt(1 - x^2), t_j = 2 pi j / n_t.
inline SurfaceMesh build_mesh(const Coefficients& co, const Orbit& orbit, int n_t,
                              int q_max = 64) {
  if (orbit.samples.empty()) throw Error(ErrorCode::EmptyOrbit, "cannot mesh an empty orbit");
  if (n_t < 3) throw Error(ErrorCode::InvalidArgument, "n_t must be at least 3");
  SurfaceMesh mesh;
  mesh.n_t = static_cast<std::size_t>(n_t);
  mesh.meta = {co.a(), co.b(), co.c(), orbit.alpha, orbit.rotation_number, 1, 0};

  struct Ring {
    double x;
    double theta;
    bool pole;
  };
  std::vector<Ring> rings;
  const auto& smp = orbit.samples;

  if (orbit.outcome.kind == OutcomeKind::ClosedPeriodic && smp.size() >= 2) {
    const auto q = detail::rational_denominator(orbit.rotation_number, q_max, 1e-6);
    const double dtheta = smp.back().theta - smp.front().theta;
    const int periods = q.value_or(1);
    for (int k = 0; k < periods; ++k)
      for (std::size_t i = 0; i + 1 < smp.size(); ++i)
        rings.push_back({smp[i].x, smp[i].theta + k * dtheta, false});
    if (q) {
      mesh.closed_s = true;
    } else {
      rings.push_back({smp.back().x, smp.back().theta, false});
    }
    mesh.meta.periods = periods;
  } else {
    for (const auto& q : smp) rings.push_back({q.x, q.theta, false});
    auto at_axis = [](const std::optional<OrbitEnd>& e) {
      return e && (e->kind == OutcomeKind::AxisLimit || e->kind == OutcomeKind::AxisCrossing);
    };
    if (at_axis(orbit.outcome)) rings.back().pole = true;
    if (at_axis(orbit.backward)) rings.front().pole = true;
  }

  std::vector<std::uint32_t> ring_start;
  for (const Ring& rg : rings) {
    ring_start.push_back(static_cast<std::uint32_t>(mesh.vertices.size()));
    const double r = std::sqrt(std::max(0.0, 1.0 - rg.x * rg.x));
    if (rg.pole) {
      mesh.vertices.push_back({0.0, 0.0, std::cos(rg.theta), std::sin(rg.theta)});
      continue;
    }
    for (int j = 0; j < n_t; ++j) {
      const double t = 2.0 * std::numbers::pi * j / n_t;
      mesh.vertices.push_back({rg.x * std::cos(t), rg.x * std::sin(t), r * std::cos(rg.theta),
                               r * std::sin(rg.theta)});
    }
  }
  mesh.n_s = rings.size();

  const std::size_t n_ring_pairs = mesh.closed_s ? rings.size() : rings.size() - 1;
  for (std::size_t i = 0; i < n_ring_pairs; ++i) {
    const std::size_t i1 = (i + 1) % rings.size();
    const bool p0 = rings[i].pole, p1 = rings[i1].pole;
    if (p0 && p1) continue;
    for (int j = 0; j < n_t; ++j) {
      const auto j1 = static_cast<std::uint32_t>((j + 1) % n_t);
      const auto jj = static_cast<std::uint32_t>(j);
      Face f;
      if (p0) {
        f.v = {ring_start[i], ring_start[i1] + jj, ring_start[i1] + j1, 0};
        f.count = 3;
      } else if (p1) {
        f.v = {ring_start[i] + jj, ring_start[i1], ring_start[i] + j1, 0};
        f.count = 3;
      } else {
        f.v = {ring_start[i] + jj, ring_start[i1] + jj, ring_start[i1] + j1, ring_start[i] + j1};
      }
      mesh.faces.push_back(f);
    }
  }
  return mesh;
}

/// Preference order for automatic pole selection.
inline constexpr std::array<int, 8> kPoleOrder{4, -4, 3, -3, 2, -2, 1, -1};

inline Vec4 pole_point(int pole) {
  Vec4 p{0.0, 0.0, 0.0, 0.0};
  p[static_cast<std::size_t>(std::abs(pole) - 1)] = pole > 0 ? 1.0 : -1.0;
  return p;
}

inline double min_distance_to_pole(const SurfaceMesh& mesh, int pole) {
  const Vec4 p = pole_point(pole);
  double best = std::numeric_limits<double>::infinity();
  for (const Vec4& v : mesh.vertices) {
    double d2 = 0.0;
    for (int k = 0; k < 4; ++k) d2 += (v[k] - p[k]) * (v[k] - p[k]);
    best = std::min(best, d2);
  }
  return std::sqrt(best);
}

/// The pole farthest from the surface; ties within 1e-9 go to the earlier
/// entry of kPoleOrder.
inline int auto_pole(const SurfaceMesh& mesh) {
  int best_pole = kPoleOrder[0];
  double best = -1.0;
  for (int pole : kPoleOrder) {
    const double d = min_distance_to_pole(mesh, pole);
    if (d > best + 1e-9) {
      best = d;
      best_pole = pole;
    }
  }
  return best_pole;
}

/// Stereographic projection from the pole +-e_k: p -> (p without k) / (1 - sign * p_k).
/// `pole == 0` selects the pole automatically.
inline ProjectedMesh stereographic_project(const SurfaceMesh& mesh, int pole = 0) {
  if (pole == 0) pole = auto_pole(mesh);
  if (pole < -4 || pole > 4) throw Error(ErrorCode::InvalidArgument, "pole must be in +-1..+-4");
  if (min_distance_to_pole(mesh, pole) < 1e-3)
    throw Error(ErrorCode::PoleOnSurface, "projection pole lies on the surface");
  const auto axis = static_cast<std::size_t>(std::abs(pole) - 1);
  const double sign = pole > 0 ? 1.0 : -1.0;
  ProjectedMesh out;
  out.faces = mesh.faces;
  out.meta = mesh.meta;
  out.meta.pole = pole;
  out.vertices.reserve(mesh.vertices.size());
  for (const Vec4& v : mesh.vertices) {
    const double den = 1.0 - sign * v[axis];
    Vec3 q{};
    std::size_t m = 0;
    for (std::size_t k = 0; k < 4; ++k)
      if (k != axis) q[m++] = v[k] / den;
    out.vertices.push_back(q);
  }
  return out;
}

}  // namespace rlws
