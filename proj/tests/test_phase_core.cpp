#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "rlws/phase_core.hpp"

using namespace rlws;

namespace {

oracle::Abc abc(const Coefficients& co) { return {co.a(), co.b(), co.c()}; }

ErrorCode code_of(double a, double b, double c) {
  try {
    validate_normalize(a, b, c);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected rejection of (" << a << ", " << b << ", " << c << ")";
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(ValidateNormalize, Examples) {
  const Coefficients co = validate_normalize(3, 1, 3);
  EXPECT_EQ(co.a(), 3);
  EXPECT_EQ(co.b(), 1);
  EXPECT_EQ(co.c(), 3);
  EXPECT_EQ(co.delta(), 21);
  EXPECT_FALSE(co.negated());
  EXPECT_EQ(validate_normalize(1, -1, 1).delta(), -3);
}

TEST(ValidateNormalize, Rejections) {
  EXPECT_EQ(code_of(2, -1, 1), ErrorCode::RejectZeroDiscriminant);
  EXPECT_EQ(code_of(0, 1, 1), ErrorCode::RejectZeroA);
  EXPECT_EQ(code_of(1, 0, 1), ErrorCode::RejectZeroB);
  EXPECT_EQ(code_of(-1, 1, 1), ErrorCode::RejectNegativeA);
  // (1, 1, -1) flips to (-1, -1, 1).
  EXPECT_EQ(code_of(1, 1, -1), ErrorCode::RejectNegativeA);
  try {
    validate_normalize(2, -1, 1);
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("discriminant is zero"), std::string::npos);
  }
}

TEST(ValidateNormalize, NegatesWhenCNegative) {
  const Coefficients co = validate_normalize(-3, -1, -3);
  EXPECT_TRUE(co.negated());
  EXPECT_EQ(co.a(), 3);
  EXPECT_EQ(co.b(), 1);
  EXPECT_EQ(co.c(), 3);
  EXPECT_EQ(co.delta(), co.a() * co.a() + 4 * co.b() * co.c());
}

TEST(WeingartenPotential, Examples) {
  const Coefficients co = validate_normalize(3, 1, 3);
  EXPECT_NEAR(weingarten_potential(co, {std::sqrt(0.9), 0.0}), 2.25, 1e-14);
  EXPECT_NEAR(weingarten_potential(co, {0.0, 0.6}), 0.5 * 0.36, 1e-15);

  const Coefficients sph = validate_normalize(1, 1, 0);
  const double ref = static_cast<double>(oracle::F(abc(sph), 0.75L, 0.5L));
  EXPECT_NEAR(weingarten_potential(sph, {0.75, 0.5}), ref, 1e-15);
  EXPECT_NEAR(ref, 0.56865, 5e-5);
}

TEST(WeingartenPotential, DomainViolation) {
  const Coefficients co = validate_normalize(3, 1, 3);
  try {
    weingarten_potential(co, {0.9, 0.9});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DomainViolation);
  }
  // Just outside within tol_domain is clamped.
  EXPECT_NO_THROW(weingarten_potential(co, {1.0 + 1e-13, 0.0}));
}

TEST(PotentialGradient, CriticalPointAndAxisSymmetry) {
  const Coefficients co = validate_normalize(3, 1, 3);
  const auto g = potential_gradient(co, {std::sqrt(0.9), 0.0});
  EXPECT_NEAR(g.du, 0.0, 1e-12);
  EXPECT_EQ(g.dv, 0.0);
  EXPECT_EQ(potential_gradient(co, {0.4, 0.0}).dv, 0.0);

  const Coefficients sph = validate_normalize(1, 1, 0);
  const auto h = potential_gradient(sph, {0.632456, 0.707107});
  EXPECT_GT(std::abs(h.du), 0.1);
  EXPECT_NEAR(h.dv, 0.0, 1e-5);
}

TEST(PotentialGradient, BoundarySingularity) {
  const Coefficients co = validate_normalize(3, 1, 3);
  try {
    potential_gradient(co, {0.6, 0.8});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BoundarySingularity);
  }
}

TEST(CriticalData, ThreeOneThree) {
  const CriticalData cd = critical_data(validate_normalize(3, 1, 3));
  EXPECT_NEAR(cd.u_plus * cd.u_plus, 0.9, 1e-15);
  EXPECT_NEAR(cd.u_minus * cd.u_minus, 0.1, 1e-15);
  EXPECT_NEAR(cd.tau, 1.0, 1e-15);
  EXPECT_NEAR(cd.alpha0, 2.25, 1e-15);
  EXPECT_EQ(cd.alpha_min, 0.0);
  EXPECT_EQ(cd.alpha_max, cd.alpha0);
  EXPECT_EQ(cd.active_critical, ActiveCritical::Plus);

  // Roots of u^4 - u^2 + a^2 / (4 (a^2 + (b+c)^2)) found by bisection.
  const auto quartic = oracle::roots(
      [](oracle::ld u) { return u * u * u * u - u * u + 9.0L / 100.0L; }, 0.0L, 1.0L);
  ASSERT_EQ(quartic.size(), 2u);
  EXPECT_NEAR(cd.u_minus, static_cast<double>(quartic[0]), 1e-14);
  EXPECT_NEAR(cd.u_plus, static_cast<double>(quartic[1]), 1e-14);
}

TEST(CriticalData, SymmetricAndSphere) {
  const CriticalData sym = critical_data(validate_normalize(1, -1, 1));
  EXPECT_NEAR(sym.u_plus, 1 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(sym.u_minus, 1 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(sym.alpha0, 0.25, 1e-15);
  EXPECT_EQ(sym.alpha_min, -0.5);
  EXPECT_EQ(sym.active_critical, ActiveCritical::Both);

  const Coefficients co = validate_normalize(1, 1, 0);
  const CriticalData cd = critical_data(co);
  EXPECT_NEAR(cd.u_plus, 0.923880, 1e-6);
  EXPECT_NEAR(cd.tau, std::sqrt(2.0) - 1, 1e-15);
  EXPECT_NEAR(cd.alpha0, (std::sqrt(2.0) + 1) / 4, 1e-15);
  EXPECT_NEAR(weingarten_potential(co, {cd.u_plus, 0.0}), cd.alpha0, 1e-15);
}

TEST(CriticalData, NegativeSumUsesMinus) {
  const Coefficients co = validate_normalize(1, -2, 1);
  const CriticalData cd = critical_data(co);
  EXPECT_EQ(cd.active_critical, ActiveCritical::Minus);
  EXPECT_EQ(cd.alpha_min, -1.0);
  // The active point is the maximum of F on v = 0.
  const auto k = abc(co);
  oracle::ld best = -1e9;
  for (int i = 0; i <= 200000; ++i) best = std::max(best, oracle::F(k, i / 200000.0L, 0));
  EXPECT_NEAR(cd.alpha0, static_cast<double>(best), 1e-10);
  EXPECT_NEAR(weingarten_potential(co, cd.critical_point()), cd.alpha0, 1e-14);
}

TEST(GammaLocus, Examples) {
  const Coefficients co = validate_normalize(3, 1, 3);
  const auto g = gamma_locus_intersections(co, 2.0);
  ASSERT_EQ(g.size(), 2u);
  EXPECT_NEAR(g[0].u, std::sqrt(27.0 / 35.0), 1e-12);
  EXPECT_NEAR(std::abs(g[0].v), std::sqrt(1.0 / 7.0), 1e-12);
  EXPECT_NEAR(g[0].v, -g[1].v, 0.0);
  EXPECT_TRUE(gamma_locus_intersections(co, 0.4).empty());
  EXPECT_TRUE(gamma_locus_intersections(co, 2.3).empty());
  ASSERT_EQ(gamma_locus_intersections(co, 2.25).size(), 1u);

  // Brute-force intersection with the ellipse v^2 = 1 - u^2 (1 + tau^2/a^2).
  const auto ref = oracle::on_ellipse(abc(co), 2.0L, 1.0L + 1.0L / 9.0L);
  ASSERT_EQ(ref.size(), 1u);
  EXPECT_NEAR(g[0].u, static_cast<double>(ref[0].first), 1e-9);

  const Coefficients sph = validate_normalize(1, 1, 0);
  const auto h = gamma_locus_intersections(sph, 0.55);
  ASSERT_EQ(h.size(), 2u);
  EXPECT_NEAR(weingarten_potential(sph, h[0]), 0.55, 1e-12);
  const oracle::ld tau = std::sqrt(2.0L) - 1;
  const auto ref2 = oracle::on_ellipse(abc(sph), 0.55L, 1 + tau * tau);
  ASSERT_EQ(ref2.size(), 1u);
  EXPECT_NEAR(h[0].u, static_cast<double>(ref2[0].first), 1e-9);
  EXPECT_NEAR(std::abs(h[0].v), static_cast<double>(ref2[0].second), 1e-9);
}

TEST(BoundaryIntersections, Examples) {
  const Coefficients co = validate_normalize(3, 1, 3);
  auto bi = boundary_intersections(co, 0.25);
  ASSERT_EQ(bi.axis.size(), 2u);
  EXPECT_NEAR(std::abs(bi.axis[0].v), std::sqrt(0.5), 1e-15);
  EXPECT_TRUE(bi.circle.empty());

  bi = boundary_intersections(co, 1.0);
  EXPECT_TRUE(bi.axis.empty());
  ASSERT_EQ(bi.circle.size(), 2u);
  EXPECT_NEAR(bi.circle[0].u, 0.57735, 1e-5);
  EXPECT_NEAR(std::abs(bi.circle[0].v), 0.816497, 1e-6);
  EXPECT_NEAR(static_cast<double>(oracle::F_circle(abc(co), bi.circle[0].u)), 1.0, 1e-15);

  bi = boundary_intersections(co, 2.1);
  EXPECT_TRUE(bi.axis.empty());
  EXPECT_TRUE(bi.circle.empty());
}

TEST(BoundaryIntersections, FullCircleWhenCZero) {
  const Coefficients co = validate_normalize(1, 1, 0);
  EXPECT_TRUE(boundary_intersections(co, 0.5).circle_full);
  EXPECT_FALSE(boundary_intersections(co, 0.55).circle_full);
  // F on the unit circle is b/2 when c = 0.
  for (double t : {-1.2, -0.3, 0.4, 1.5}) {
    const oracle::ld u = std::cos(static_cast<oracle::ld>(t));
    EXPECT_NEAR(static_cast<double>(oracle::F_circle(abc(co), u)), 0.5, 1e-15);
  }
}

TEST(SingularLocus, Examples) {
  EXPECT_TRUE(singular_locus_intersections(validate_normalize(1, -1, 1), 0.1).empty());
  EXPECT_TRUE(singular_locus_intersections(validate_normalize(3, 1, 3), 2.1).empty());

  const Coefficients co = validate_normalize(1, 1, 0);
  const auto s = singular_locus_intersections(co, 0.55);
  ASSERT_EQ(s.size(), 2u);
  EXPECT_NEAR(s[0].u, std::sqrt(0.4), 1e-12);
  EXPECT_NEAR(std::abs(s[0].v), std::sqrt(0.5), 1e-12);
  // Locus a u = 2 b w is the ellipse v^2 = 1 - u^2 (1 + a^2 / (4 b^2)).
  const auto ref = oracle::on_ellipse(abc(co), 0.55L, 1.25L);
  ASSERT_EQ(ref.size(), 1u);
  EXPECT_NEAR(s[0].u, static_cast<double>(ref[0].first), 1e-9);
}

TEST(TurningPoints, MatchBisection) {
  struct Case {
    double a, b, c, alpha;
  };
  for (Case k : {Case{3, 1, 3, 2.1}, Case{1, 1, 0, 0.602}, Case{1, -1, 1, 0.1},
                 Case{1, -2, 1, -0.3}, Case{3, 1, 3, 0.25}}) {
    const Coefficients co = validate_normalize(k.a, k.b, k.c);
    const auto got = level_turning_points(co, k.alpha);
    const auto ref = oracle::turning_points(abc(co), k.alpha);
    ASSERT_EQ(got.size(), ref.size()) << k.a << ' ' << k.b << ' ' << k.c << ' ' << k.alpha;
    for (std::size_t i = 0; i < got.size(); ++i)
      EXPECT_NEAR(got[i], static_cast<double>(ref[i]), 1e-12);
  }
  const auto tp = level_turning_points(validate_normalize(3, 1, 3), 2.1);
  ASSERT_EQ(tp.size(), 2u);
  EXPECT_NEAR(tp[0], 0.8427, 2e-3);
  EXPECT_NEAR(tp[1], 0.9972, 2e-3);
}

TEST(ClassifyLevel, ThreeOneThree) {
  const Coefficients co = validate_normalize(3, 1, 3);
  EXPECT_EQ(classify_level(co, -0.1).kind, LevelKind::OutOfRange);
  EXPECT_EQ(classify_level(co, 3.0).kind, LevelKind::OutOfRange);
  EXPECT_EQ(classify_level(co, 0.25).kind, LevelKind::IncompleteAxis);
  EXPECT_EQ(classify_level(co, 1.0).kind, LevelKind::IncompleteBoundary);
  EXPECT_EQ(classify_level(co, 2.1).kind, LevelKind::CompleteClosedOrbit);
  EXPECT_EQ(classify_level(co, 2.25).kind, LevelKind::CliffordTorus);
  EXPECT_EQ(classify_level(co, 2.25 + 1e-10).kind, LevelKind::CliffordTorus);
  for (double e : {0.0, 0.5, 2.0}) EXPECT_EQ(classify_level(co, e).kind, LevelKind::UnclassifiedEndpoint);

  const auto lc = classify_level(co, 2.1);
  EXPECT_TRUE(lc.special_sets.axis.empty());
  EXPECT_TRUE(lc.special_sets.circle.empty());
  EXPECT_EQ(lc.special_sets.gamma.size(), 2u);
  EXPECT_FALSE(lc.detail.empty());
}

TEST(ClassifyLevel, NegativeBPrefersAxis) {
  const Coefficients co = validate_normalize(1, -2, 1);
  // (b/2, 0) and (b/2, (b+c)/2) overlap; the axis interval wins.
  EXPECT_EQ(classify_level(co, -0.7).kind, LevelKind::IncompleteAxis);
  EXPECT_EQ(classify_level(co, -0.2).kind, LevelKind::IncompleteAxis);
  EXPECT_EQ(classify_level(co, 0.05).kind, LevelKind::CompleteClosedOrbit);
}

TEST(ClassifyLevel, SingularWarning) {
  const auto lc = classify_level(validate_normalize(1, 1, 0), 0.55);
  EXPECT_EQ(lc.kind, LevelKind::CompleteClosedOrbit);
  EXPECT_EQ(lc.singular_locus_hits.size(), 2u);
  EXPECT_NE(lc.detail.find("singular locus"), std::string::npos);
}

TEST(LevelIsDegenerate, BoundaryOnlyLevels) {
  EXPECT_TRUE(level_is_degenerate(validate_normalize(3, 1, 3), 0.0));
  EXPECT_FALSE(level_is_degenerate(validate_normalize(3, 1, 3), 0.5));
  EXPECT_TRUE(level_is_degenerate(validate_normalize(1, -1, 1), -0.5));
  EXPECT_FALSE(level_is_degenerate(validate_normalize(1, -1, 1), 0.0));
}
