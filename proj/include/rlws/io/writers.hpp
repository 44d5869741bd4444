#pragma once

// Plain-text serializations: orbit and contour CSV, OBJ meshes.

#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "rlws/io/format.hpp"
#include "rlws/level_curve.hpp"
#include "rlws/profile_integrator.hpp"
#include "rlws/surface_geometry.hpp"

namespace rlws::io {

/// Curvature columns for one orbit sample; nan where undefined.
struct SampleCurvature {
  double k1 = std::nan("");
  double k2 = std::nan("");
  double residual = std::nan("");
};

inline SampleCurvature sample_curvature(const Coefficients& co, const OrbitSample& q,
                                        const Tolerances& tol = {}) {
  SampleCurvature out;
  if (q.x <= tol.w) return out;
  const double slack = 1.0 - q.x * q.x - q.xdot * q.xdot;
  const double w = std::sqrt(std::max(0.0, slack));
  out.k1 = -w / q.x;
  if (q.xddot_unbounded()) {
    out.k2 = q.xddot;
    return out;
  }
  const CurvatureForm form = w > tol.w ? CurvatureForm::Profile : CurvatureForm::FromRelation;
  const CurvaturePair kp = principal_curvatures(co, q.x, q.xdot, q.xddot, form, tol);
  out.k2 = kp.k2;
  if (!kp.k2_unbounded) out.residual = weingarten_residual(co, kp);
  return out;
}

inline void write_orbit_csv(std::ostream& os, const Coefficients& co, const Orbit& orbit,
                            const Tolerances& tol = {}) {
  os << "s,x,xdot,xddot,theta,k1,k2,residual\n";
  for (const OrbitSample& q : orbit.samples) {
    const SampleCurvature kc = sample_curvature(co, q, tol);
    os << format_exact(q.s) << ',' << format_exact(q.x) << ',' << format_exact(q.xdot) << ','
       << format_exact(q.xddot) << ',' << format_exact(q.theta) << ',' << format_exact(kc.k1)
       << ',' << format_exact(kc.k2) << ',' << format_exact(kc.residual) << '\n';
  }
}

inline void write_contour_csv(std::ostream& os, const std::vector<ContourSet>& sets) {
  os << "level,polyline,u,v\n";
  for (const ContourSet& set : sets) {
    for (std::size_t k = 0; k < set.polylines.size(); ++k)
      for (const PhasePoint& p : set.polylines[k])
        os << format_exact(set.alpha) << ',' << k << ',' << format_exact(p.u) << ','
           << format_exact(p.v) << '\n';
  }
}

/// ASCII OBJ with 9 significant digits; quads are split into two triangles.
inline void write_obj(std::ostream& os, const ProjectedMesh& mesh) {
  os << "# " << kToolName << ' ' << kToolVersion << " rotational linear Weingarten surface\n";
  os << "# a=" << format_g(mesh.meta.a, 17) << " b=" << format_g(mesh.meta.b, 17)
     << " c=" << format_g(mesh.meta.c, 17) << " alpha=" << format_g(mesh.meta.alpha, 17)
     << " pole=" << mesh.meta.pole << '\n';
  for (const Vec3& v : mesh.vertices)
    os << "v " << format_g(v[0], 9) << ' ' << format_g(v[1], 9) << ' ' << format_g(v[2], 9)
       << '\n';
  for (const Face& f : mesh.faces) {
    os << "f " << f.v[0] + 1 << ' ' << f.v[1] + 1 << ' ' << f.v[2] + 1 << '\n';
    if (f.count == 4) os << "f " << f.v[0] + 1 << ' ' << f.v[2] + 1 << ' ' << f.v[3] + 1 << '\n';
  }
}

}  // namespace rlws::io
