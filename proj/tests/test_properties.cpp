// Randomized invariants. Every generator is seeded so failures reproduce.

#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "rlws/profile_integrator.hpp"
#include "rlws/surface_geometry.hpp"

using namespace rlws;

namespace {

Coefficients make(oracle::Abc k) {
  return validate_normalize(static_cast<double>(k.a), static_cast<double>(k.b),
                            static_cast<double>(k.c));
}

PhasePoint random_interior(oracle::CoefficientGen& g, double min_slack) {
  for (;;) {
    const PhasePoint p{g.uniform(1e-3, 1.0), g.uniform(-1.0, 1.0)};
    if (radial_slack(p) > min_slack) return p;
  }
}

}  // namespace

TEST(Property, GradientMatchesLongDoubleDifferences) {
  oracle::CoefficientGen g(0x1234);
  for (int trial = 0; trial < 200; ++trial) {
    const oracle::Abc k = g.next();
    const Coefficients co = make(k);
    for (int i = 0; i < 5; ++i) {
      const PhasePoint p = random_interior(g, 1e-3);
      const oracle::ld h = 1e-7L * std::sqrt(radial_slack(p));
      const oracle::ld fu = (oracle::F(k, p.u + h, p.v) - oracle::F(k, p.u - h, p.v)) / (2 * h);
      const oracle::ld fv = (oracle::F(k, p.u, p.v + h) - oracle::F(k, p.u, p.v - h)) / (2 * h);
      const auto grad = potential_gradient(co, p);
      const double scale = std::max(1e-4, static_cast<double>(std::hypot(fu, fv)));
      EXPECT_LT(std::hypot(grad.du - static_cast<double>(fu), grad.dv - static_cast<double>(fv)) / scale,
                1e-6);
    }
  }
}

TEST(Property, PotentialEvenInV) {
  oracle::CoefficientGen g(0x2345);
  for (int trial = 0; trial < 500; ++trial) {
    const Coefficients co = make(g.next());
    const PhasePoint p = random_interior(g, 0.0);
    EXPECT_EQ(weingarten_potential(co, p), weingarten_potential(co, {p.u, -p.v}));
  }
}

TEST(Property, CriticalDataInvariants) {
  oracle::CoefficientGen g(0x3456);
  for (int trial = 0; trial < 500; ++trial) {
    const oracle::Abc k = g.next();
    const Coefficients co = make(k);
    const CriticalData cd = critical_data(co);
    const double s = co.b_plus_c();
    EXPECT_NEAR(cd.u_plus * cd.u_plus + cd.u_minus * cd.u_minus, 1.0, 1e-14);
    EXPECT_GT(cd.tau, 0.0);
    EXPECT_NEAR(cd.tau, std::hypot(co.a(), s) - s, 1e-12 * (1 + std::abs(s)));
    EXPECT_NEAR(cd.alpha0, std::hypot(co.a(), s) / 4 + s / 4, 1e-12 * (1 + std::abs(s)));
    // alpha0 is the maximum of F over D, attained at the active point.
    EXPECT_NEAR(weingarten_potential(co, cd.critical_point()), cd.alpha0, 1e-12 * (1 + cd.alpha0));
    for (int i = 0; i < 50; ++i)
      EXPECT_LE(weingarten_potential(co, random_interior(g, 0.0)), cd.alpha0 + 1e-12);
  }
}

TEST(Property, ClassifierCoversAttainedRange) {
  oracle::CoefficientGen g(0x4567);
  for (int trial = 0; trial < 300; ++trial) {
    const Coefficients co = make(g.next());
    const CriticalData cd = critical_data(co);
    for (int i = 0; i < 20; ++i) {
      const double alpha = g.uniform(cd.alpha_min, cd.alpha0);
      const LevelClassification lc = classify_level(co, alpha);
      EXPECT_NE(lc.kind, LevelKind::OutOfRange) << co.a() << ' ' << co.b() << ' ' << co.c() << ' ' << alpha;
      if (lc.kind == LevelKind::CompleteClosedOrbit) {
        EXPECT_TRUE(lc.special_sets.axis.empty());
        EXPECT_TRUE(lc.special_sets.circle.empty());
      }
    }
    EXPECT_EQ(classify_level(co, cd.alpha0 + 1e-3).kind, LevelKind::OutOfRange);
    EXPECT_EQ(classify_level(co, cd.alpha_min - 1e-3).kind, LevelKind::OutOfRange);
  }
}

TEST(Property, SpecialSetsLieOnLevel) {
  oracle::CoefficientGen g(0x5678);
  for (int trial = 0; trial < 300; ++trial) {
    const oracle::Abc k = g.next();
    const Coefficients co = make(k);
    const CriticalData cd = critical_data(co);
    const double alpha = g.uniform(cd.alpha_min, cd.alpha0);
    const LevelClassification lc = classify_level(co, alpha);
    auto check = [&](const std::vector<PhasePoint>& pts, bool circle = false) {
      for (PhasePoint p : pts) {
        const oracle::ld f = circle ? oracle::F_circle(k, p.u) : oracle::F(k, p.u, p.v);
        EXPECT_NEAR(static_cast<double>(f), alpha, 1e-10);
      }
      if (pts.size() == 2) {
        EXPECT_EQ(pts[0].v, -pts[1].v);
      }
    };
    check(lc.special_sets.axis);
    check(lc.special_sets.circle, true);
    for (PhasePoint p : lc.special_sets.circle) {
      EXPECT_NEAR(std::hypot(p.u, p.v), 1.0, 1e-15);
    }
    check(lc.special_sets.gamma);
    check(lc.singular_locus_hits);
    for (double u : level_turning_points(co, alpha))
      EXPECT_NEAR(static_cast<double>(oracle::F(k, u, 0)), alpha, 1e-10);
  }
}

TEST(Property, AccelerationSolvesImplicitEquation) {
  oracle::CoefficientGen g(0x6789);
  int tested = 0;
  while (tested < 1000) {
    const Coefficients co = make(g.next());
    const PhasePoint p = random_interior(g, 1e-3);
    const auto grad = potential_gradient(co, p);
    if (std::abs(grad.dv) <= 1e-6 || p.u < 1e-3) continue;
    const double implicit = -p.v * grad.du / grad.dv;
    EXPECT_NEAR(profile_acceleration(co, p.u, p.v), implicit, 1e-6 * std::max(1.0, std::abs(implicit)));
    ++tested;
  }
}

TEST(Property, UmbilicCurvatureSolvesRelation) {
  oracle::CoefficientGen g(0x789a);
  for (int trial = 0; trial < 500; ++trial) {
    const Coefficients co = make(g.next());
    for (const UmbilicSphere& s : umbilic_spheres(co)) {
      EXPECT_GT(s.rho, 0.0);
      EXPECT_LT(s.rho, std::numbers::pi / 2);
      EXPECT_NEAR(co.a() * s.k + co.b() * s.k * s.k, co.c(), 1e-9 * (1 + co.c()));
    }
  }
}

TEST(Property, OrbitsConserveLevel) {
  oracle::CoefficientGen g(0x89ab);
  int runs = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const Coefficients co = make(g.next());
    const CriticalData cd = critical_data(co);
    const double alpha = g.uniform(cd.alpha_min, cd.alpha0);
    if (level_is_degenerate(co, alpha)) continue;
    const PhasePoint start = default_start(co, alpha);
    const Orbit o = integrate_profile(co, alpha, start);
    EXPECT_LE(o.f_drift_max, 1e-8 * (1 + std::abs(alpha)))
        << co.a() << ' ' << co.b() << ' ' << co.c() << ' ' << alpha;
    for (const auto& q : o.samples)
      EXPECT_LE(q.x * q.x + q.xdot * q.xdot, 1 + 1e-9);
    if (o.outcome.kind == OutcomeKind::ClosedPeriodic && !o.equilibrium) {
      EXPECT_GT(o.outcome.period, 0.0);
      EXPECT_NEAR(o.outcome.period, 2 * o.half_period, 1e-6 * o.outcome.period);
    }
    ++runs;
  }
  EXPECT_GE(runs, 30);
}

TEST(Property, OutcomeAgreesWithClassification) {
  const Coefficients co = validate_normalize(3, 1, 3);
  for (double alpha = 0.01; alpha < 2.25; alpha += 0.037) {
    bool near_endpoint = false;
    for (double e : {0.0, 0.5, 2.0, 2.25}) near_endpoint = near_endpoint || std::abs(alpha - e) < 1e-3;
    if (near_endpoint) continue;
    const LevelKind kind = classify_level(co, alpha).kind;
    const Orbit o = integrate_profile(co, alpha, default_start(co, alpha));
    const auto ends = [&](OutcomeKind k) { return o.outcome.kind == k || (o.backward && o.backward->kind == k); };
    if (kind == LevelKind::CompleteClosedOrbit) {
      EXPECT_EQ(o.outcome.kind, OutcomeKind::ClosedPeriodic) << alpha;
    } else if (kind == LevelKind::IncompleteAxis) {
      EXPECT_NE(o.outcome.kind, OutcomeKind::ClosedPeriodic) << alpha;
      EXPECT_TRUE(ends(OutcomeKind::AxisCrossing) || ends(OutcomeKind::BoundaryHit) ||
                  ends(OutcomeKind::SingularLocusHit))
          << alpha;
    } else if (kind == LevelKind::IncompleteBoundary) {
      EXPECT_NE(o.outcome.kind, OutcomeKind::ClosedPeriodic) << alpha;
    }
  }
}

TEST(Property, CurvatureCrossCheckAlongOrbits) {
  for (double alpha : {2.02, 2.1, 2.2}) {
    const Coefficients co = validate_normalize(3, 1, 3);
    const Orbit o = integrate_profile(co, alpha, default_start(co, alpha));
    for (const auto& q : o.samples) {
      const CurvaturePair p = principal_curvatures(co, q.x, q.xdot, q.xddot);
      const CurvaturePair r = principal_curvatures(co, q.x, q.xdot, q.xddot, CurvatureForm::FromRelation);
      EXPECT_NEAR(p.k2, r.k2, 1e-8 * std::max(1.0, std::abs(r.k2)));
      EXPECT_NEAR(r.K, -(q.xddot + q.x) / q.x, 1e-8 * std::max(1.0, std::abs(r.K)));
    }
  }
}

TEST(Property, NoIsoparametricClosedOrbitsWhenCZero) {
  const Coefficients co = validate_normalize(1, 1, 0);
  const CriticalData cd = critical_data(co);
  // Open interval: at alpha = 0.6 the turning point sits on the tip of the
  // singular locus a u = 2 b w.
  for (double alpha = 0.6007; alpha < cd.alpha0 - 1e-4; alpha += 0.0007) {
    const Orbit o = rotation_angle(integrate_profile(co, alpha, default_start(co, alpha)));
    if (o.outcome.kind != OutcomeKind::ClosedPeriodic) continue;
    EXPECT_FALSE(isoparametric_test(co, o).is_isoparametric) << alpha;
  }
}

TEST(Property, MeshVerticesOnSphere) {
  oracle::CoefficientGen g(0x9abc);
  int meshes = 0;
  for (int trial = 0; trial < 30 && meshes < 12; ++trial) {
    const Coefficients co = make(g.next());
    const CriticalData cd = critical_data(co);
    const double lo = std::max(0.0, 0.5 * co.b_plus_c());
    const double alpha = g.uniform(lo + 0.1 * (cd.alpha0 - lo), cd.alpha0);
    const Orbit o = rotation_angle(integrate_profile(co, alpha, default_start(co, alpha)));
    if (o.outcome.kind != OutcomeKind::ClosedPeriodic) continue;
    const SurfaceMesh m = build_mesh(co, o, 16);
    for (const Vec4& v : m.vertices)
      EXPECT_NEAR(std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2] + v[3] * v[3]), 1.0, 1e-9);
    ++meshes;
  }
  EXPECT_GE(meshes, 5);
}
