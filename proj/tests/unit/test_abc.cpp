#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "filadyn/abc_flow.hpp"
#include "filadyn/error.hpp"

namespace filadyn {
namespace {

using std::numbers::pi;

void expect_vec(const Vec3& v, double x, double y, double z, double tol = 1e-12) {
  EXPECT_NEAR(v.x, x, tol);
  EXPECT_NEAR(v.y, y, tol);
  EXPECT_NEAR(v.z, z, tol);
}

TEST(AbcPaperForm, Examples) {
  expect_vec(abc_velocity_paper({1, 0, 0}, {0, 0, 0}).velocity, 0, 2, 0);
  expect_vec(abc_velocity_paper({1, 1, 1}, {0, 0, 0}).velocity, 2, 2, 2);
  expect_vec(abc_velocity_paper({1, 0, 0}, {0, 0, pi / 2}).velocity, -2, 0, 0);
}

TEST(AbcStandardForm, Examples) {
  expect_vec(abc_velocity_standard({1, 0, 0}, {0, 0, 0}), 0, 1, 0);
  expect_vec(abc_velocity_standard({1, 1, 1}, {0, 0, 0}), 1, 1, 1);
}

TEST(AbcForms, PaperFormIsReflectedAndDoubled) {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> x(-2 * pi, 2 * pi);
  std::uniform_real_distribution<double> amp(-2.0, 2.0);
  for (int i = 0; i < 1000; ++i) {
    const ABCParams p{amp(rng), amp(rng), amp(rng)};
    const Vec3 q{x(rng), x(rng), x(rng)};
    const ComplexFormValue paper = abc_velocity_paper(p, q);
    const Vec3 ref = 2.0 * abc_velocity_standard(p, -1.0 * q);
    EXPECT_LT(max_abs(paper.velocity - ref), 1e-12);
    EXPECT_LT(paper.imag_residual, 1e-13);
  }
}

TEST(AbcForms, PeriodicInEachCoordinate) {
  const ABCParams p{0.7, -1.3, 0.4};
  const Vec3 q{0.3, -1.1, 2.2};
  for (const Vec3& shift : {Vec3{2 * pi, 0, 0}, Vec3{0, 2 * pi, 0}, Vec3{0, 0, 2 * pi}}) {
    EXPECT_LT(max_abs(abc_velocity_standard(p, q + shift) - abc_velocity_standard(p, q)), 1e-12);
    EXPECT_LT(max_abs(abc_velocity_paper(p, q + shift).velocity -
                      abc_velocity_paper(p, q).velocity),
              1e-12);
  }
}

// Central differences of the standard field: divergence and curl.
struct Derivatives {
  double divergence;
  Vec3 curl;
};

Derivatives central(const ABCParams& p, const Vec3& q, double h) {
  auto d = [&](int axis) {
    const Vec3 e{axis == 0 ? h : 0.0, axis == 1 ? h : 0.0, axis == 2 ? h : 0.0};
    return (1.0 / (2 * h)) * (abc_velocity_standard(p, q + e) - abc_velocity_standard(p, q - e));
  };
  const Vec3 dx = d(0), dy = d(1), dz = d(2);
  return {dx.x + dy.y + dz.z, {dy.z - dz.y, dz.x - dx.z, dx.y - dy.x}};
}

TEST(AbcForms, StandardFieldIsSolenoidalBeltrami) {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> x(-pi, pi);
  std::uniform_real_distribution<double> amp(-1.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const ABCParams p{amp(rng), amp(rng), amp(rng)};
    const Vec3 q{x(rng), x(rng), x(rng)};
    const Derivatives dv = central(p, q, 1e-4);
    EXPECT_LT(std::fabs(dv.divergence), 1e-6);
    EXPECT_LT(norm(dv.curl - abc_velocity_standard(p, q)), 1e-5);
  }
}

TEST(TubeToCartesian, Examples) {
  expect_vec(tube_to_cartesian({0.0, 0.0, 1.234, 0.7}), 0, 0, 0);
  expect_vec(tube_to_cartesian({1.0, 2.0, 0.0, 0.0}), 1, 0, 2);
  expect_vec(tube_to_cartesian({1.0, pi / 2, pi / 2, 1.0}), 1, 0, pi / 2);
}

TEST(TubeToCartesian, UntwistedMapInvertsAsCylinder) {
  std::mt19937_64 rng(47);
  std::uniform_real_distribution<double> r(0.01, 5.0);
  std::uniform_real_distribution<double> th(-pi + 1e-6, pi - 1e-6);
  std::uniform_real_distribution<double> s(-3.0, 3.0);
  for (int i = 0; i < 1000; ++i) {
    const TubePoint tp{r(rng), s(rng), th(rng), 0.0};
    const Vec3 c = tube_to_cartesian(tp);
    EXPECT_NEAR(std::hypot(c.x, c.y), tp.r, 1e-12);
    EXPECT_NEAR(std::atan2(c.y, c.x), tp.theta0, 1e-12);
    EXPECT_EQ(c.z, tp.s);
  }
}

TEST(TubeVelocity, ToroidalFlowOnAxis) {
  const TubeVelocity v = tube_velocity({0.3, 1.5, -0.25}, {0.0, 0.4, 1.0, 0.2});
  EXPECT_NEAR(v.V_s, 2 * (1.5 - 0.25), 1e-12);
}

TEST(TubeVelocity, StrongStagnationOnAxis) {
  const TubeVelocity v = tube_velocity({1.0, 0.0, 0.0}, {0.0, 0.7, 1.0, 0.0});
  EXPECT_EQ(v.V_s, 0.0);
  EXPECT_EQ(v.V_r, 0.0);
  EXPECT_EQ(v.V_r_imag, 0.0);
}

TEST(TubeVelocity, NearAxisRadialFlow) {
  EXPECT_DOUBLE_EQ(axis_radial_flow(1.0, pi / 2, 0.3), 0.3);
  EXPECT_DOUBLE_EQ(axis_radial_flow(2.0, pi / 6, 0.5), 2.0);
  // The full expression carries i * (2i sin(r s)) = -2 sin(r s), so V_r ~ -2 r (A csc th s).
  const double r = 1e-6;
  for (double s : {0.1, 0.5, 1.0}) {
    const TubeVelocity v = tube_velocity({1.0, 0.0, 0.0}, {r, s, pi / 2, 0.0});
    EXPECT_NEAR(v.V_r / (-2.0 * r), axis_radial_flow(1.0, pi / 2, s), 1e-5);
  }
}

TEST(TubeVelocity, ImaginaryResidualDependsOnBracket) {
  const ABCParams p{0.0, 1.0, 0.0};
  const TubePoint tp{0.8, 0.3, 1.0, 0.0};
  const TubeVelocity printed = tube_velocity(p, tp, RadialBracket::AsPrinted);
  const TubeVelocity symmetric = tube_velocity(p, tp, RadialBracket::Symmetric);
  EXPECT_GT(std::fabs(printed.V_r_imag), 1e-3);
  EXPECT_NEAR(symmetric.V_r_imag, 0.0, 1e-15);
}

TEST(TubeVelocity, SingularAngleIsDomainError) {
  for (double th : {0.0, pi, 1e-13}) {
    try {
      tube_velocity({1, 1, 1}, {0.5, 0.0, th, 0.0});
      FAIL() << "theta = " << th;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::Domain);
    }
  }
  EXPECT_THROW(axis_radial_flow(1.0, 0.0, 1.0), Error);
}

TEST(Stagnation, Examples) {
  EXPECT_EQ(stagnation_classify({1, 0, 0}), StagnationClass::StrongStagnation);
  EXPECT_EQ(stagnation_classify({1, 1, 1}), StagnationClass::NoStagnationConstraint);
  EXPECT_EQ(stagnation_classify({0, 0, 0}), StagnationClass::StrongStagnation);
  EXPECT_EQ(stagnation_classify({0, 0, 0.1}), StagnationClass::NoStagnationConstraint);
  EXPECT_EQ(to_string(StagnationClass::StrongStagnation), "STRONG_STAGNATION");
}

TEST(TubeGrowth, Examples) {
  const TubeGrowthResult m = tube_growth_rate({0.0, 1.0}, {1.0, 0.0, 0.0, 1.0}, 0.0);
  EXPECT_EQ(m.classification, TubeGrowthClass::Marginal);
  ASSERT_TRUE(m.gamma);
  EXPECT_EQ(*m.gamma, 0.0);
  ASSERT_TRUE(m.constrained);
  EXPECT_EQ(m.constrained->B_s, 1.0);

  EXPECT_EQ(tube_growth_rate({0.4, 0.0}, {1.0, 0.0, 0.0, 1.0}, 0.0).classification,
            TubeGrowthClass::TrivialField);
  const TubeGrowthResult slow = tube_growth_rate({0.0, 1.0}, {1.0, 0.0, 0.0, 1.0}, 0.01);
  EXPECT_EQ(slow.classification, TubeGrowthClass::SlowCandidate);
  EXPECT_FALSE(slow.gamma);
}

TEST(TubeGrowth, MarginalOverGrid) {
  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> bt(-3.0, 3.0);
  std::uniform_real_distribution<double> tau(0.1, 4.0);
  for (int i = 0; i < 10; ++i) {
    for (int j = 0; j < 10; ++j) {
      const TubePoint tp{0.1 + 0.3 * i, 0.0, 2 * pi * j / 10.0, tau(rng)};
      double b = bt(rng);
      if (b == 0.0) b = 1.0;
      const TubeGrowthResult res = tube_growth_rate({0.0, b}, tp, 0.0);
      EXPECT_EQ(res.classification, TubeGrowthClass::Marginal);
      EXPECT_EQ(*res.gamma, 0.0);
      EXPECT_LT(res.constraint_residual, 1e-12);
      EXPECT_NEAR(res.constrained->B_s, b / (tp.tau0 * tp.r * tp.r),
                  1e-12 * std::fabs(res.constrained->B_s));
      EXPECT_EQ(tube_growth_rate({0.0, b}, tp, 1e-3).classification,
                TubeGrowthClass::SlowCandidate);

      // the zero rate and constrained field satisfy all three component equations
      const TubeSystemResidual sys = tube_system_residual(0.0, *res.constrained, tp, 0.7, -1.2);
      EXPECT_LT(std::fabs(sys.toroidal), 1e-12);
      EXPECT_LT(std::fabs(sys.poloidal_sin), 1e-12);
      EXPECT_LT(std::fabs(sys.poloidal_cos), 1e-12);
    }
  }
}

TEST(TubeGrowth, NonzeroRateViolatesPoloidalSystem) {
  const TubePoint tp{1.0, 0.0, 0.4, 1.0};
  const TubeGrowthResult res = tube_growth_rate({0.0, 2.0}, tp, 0.0);
  const TubeSystemResidual sys = tube_system_residual(0.1, *res.constrained, tp, 0.7, -1.2);
  EXPECT_GT(std::hypot(sys.poloidal_sin, sys.poloidal_cos), 1e-3);
}

TEST(TubeGrowth, RejectsInvalidGeometry) {
  EXPECT_THROW(tube_growth_rate({0.0, 1.0}, {0.0, 0.0, 0.0, 1.0}, 0.0), Error);
  EXPECT_THROW(tube_growth_rate({0.0, 1.0}, {-1.0, 0.0, 0.0, 1.0}, 0.0), Error);
  EXPECT_THROW(tube_growth_rate({0.0, 1.0}, {1.0, 0.0, 0.0, 0.0}, 0.0), Error);
}

TEST(RadialFlowGradient, Examples) {
  EXPECT_NEAR(radial_flow_gradient(1.0, 0.0, 1.0, 0.0), 2.0, 1e-12);
  EXPECT_NEAR(radial_flow_gradient(1.0, pi / 4, std::sqrt(3.0), 0.0), 7.0, 1e-12);
  EXPECT_NEAR(radial_flow_gradient(2.0, 0.0, 0.0, pi), -2.0, 1e-12);
  EXPECT_THROW(radial_flow_gradient(1.0, pi / 2, 1.0, 0.0), Error);
}

}  // namespace
}  // namespace filadyn
