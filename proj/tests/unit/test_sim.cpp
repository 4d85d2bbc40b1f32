#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "filadyn/error.hpp"
#include "filadyn/sim.hpp"
#include "filadyn/spectrum.hpp"

namespace filadyn {
namespace {

using std::numbers::pi;

const DynamoMatrix kRotation = DynamoMatrix::from_rows(0, 1, -1, 0);

double state_norm(const FieldState& s) { return std::hypot(s.b_n, s.b_b); }

// Scaled Taylor series for exp(M t), squared back up.
Matrix2 taylor_expm(const DynamoMatrix& m, double t) {
  int squarings = 0;
  double scale = t * std::fmax(std::fabs(m.m11) + std::fabs(m.m12), std::fabs(m.m21) + std::fabs(m.m22));
  while (scale > 0.25) {
    scale /= 2;
    ++squarings;
  }
  const double h = t / std::ldexp(1.0, squarings);
  const double a[2][2] = {{m.m11 * h, m.m12 * h}, {m.m21 * h, m.m22 * h}};
  double sum[2][2] = {{1, 0}, {0, 1}};
  double term[2][2] = {{1, 0}, {0, 1}};
  for (int k = 1; k < 30; ++k) {
    double next[2][2];
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) next[i][j] = (term[i][0] * a[0][j] + term[i][1] * a[1][j]) / k;
    }
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        term[i][j] = next[i][j];
        sum[i][j] += term[i][j];
      }
    }
  }
  for (int s = 0; s < squarings; ++s) {
    double sq[2][2];
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) sq[i][j] = sum[i][0] * sum[0][j] + sum[i][1] * sum[1][j];
    }
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) sum[i][j] = sq[i][j];
    }
  }
  return {{{sum[0][0], sum[0][1]}, {sum[1][0], sum[1][1]}}};
}

DynamoMatrix random_matrix(std::mt19937_64& rng, double lo = -2.0, double hi = 2.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  return DynamoMatrix::from_rows(u(rng), u(rng), u(rng), u(rng));
}

TEST(Integrate, ZeroMatrixIsConstant) {
  const Trajectory tr = integrate(DynamoMatrix::from_rows(0, 0, 0, 0), {1, 1}, 1.0, 0.01);
  ASSERT_EQ(tr.size(), 101u);
  for (std::size_t i = 0; i < tr.size(); ++i) {
    EXPECT_EQ(tr.physical(i).b_n, 1.0);
    EXPECT_EQ(tr.physical(i).b_b, 1.0);
  }
}

TEST(Integrate, RotationReturnsAndConservesNorm) {
  const Trajectory tr = integrate(kRotation, {1, 0}, 2 * pi, 1e-3);
  const FieldState end = tr.physical(tr.size() - 1);
  EXPECT_NEAR(tr.times.back(), 2 * pi, 1e-12);
  EXPECT_NEAR(end.b_n, 1.0, 1e-9);
  EXPECT_NEAR(end.b_b, 0.0, 1e-9);
  for (std::size_t i = 0; i < tr.size(); ++i) {
    EXPECT_NEAR(state_norm(tr.physical(i)), 1.0, 1e-9);
  }
}

TEST(Integrate, DegenerateBranchGrowsAtCurvature) {
  const Trajectory tr = integrate(degenerate_branch_matrix(1.0), {1, 1}, 1.0, 1e-3);
  const FieldState end = tr.physical(tr.size() - 1);
  EXPECT_NEAR(end.b_n, std::numbers::e, 1e-9);
  EXPECT_NEAR(end.b_b, std::numbers::e, 1e-9);
}

TEST(Integrate, LongRotationKeepsNorm) {
  const Trajectory tr = integrate(kRotation, {0.3, -0.4}, 100.0, 1e-3);
  double worst = 0.0;
  for (std::size_t i = 0; i < tr.size(); ++i) {
    worst = std::fmax(worst, std::fabs(state_norm(tr.physical(i)) - 0.5));
  }
  EXPECT_LT(worst, 1e-5);
}

TEST(Integrate, TimesStrictlyIncreasing) {
  const Trajectory tr = integrate(kRotation, {1, 0}, 1.05, 0.1);
  EXPECT_EQ(tr.states.size(), tr.size());
  for (std::size_t i = 1; i < tr.size(); ++i) EXPECT_GT(tr.times[i], tr.times[i - 1]);
  EXPECT_LE(tr.times[1] - tr.times[0], 0.1);
  EXPECT_NEAR(tr.times.back(), 1.05, 1e-12);
}

TEST(Integrate, RejectsBadArguments) {
  EXPECT_THROW(integrate(kRotation, {1, 0}, 1.0, 0.0), Error);
  EXPECT_THROW(integrate(kRotation, {1, 0}, 1.0, -1e-3), Error);
  EXPECT_THROW(integrate(kRotation, {1, 0}, 1e-4, 1e-3), Error);
  EXPECT_THROW(integrate(kRotation, {0, 0}, 1.0, 1e-3), Error);
}

TEST(Integrate, Linearity) {
  std::mt19937_64 rng(59);
  for (int i = 0; i < 20; ++i) {
    const DynamoMatrix m = random_matrix(rng);
    const Trajectory a = integrate(m, {0.3, -0.7}, 2.0, 1e-2);
    const Trajectory b = integrate(m, {-2.5 * 0.3, -2.5 * -0.7}, 2.0, 1e-2);
    for (std::size_t k = 0; k < a.size(); ++k) {
      const FieldState x = a.physical(k), y = b.physical(k);
      EXPECT_NEAR(y.b_n, -2.5 * x.b_n, 1e-12 * std::fmax(1.0, std::fabs(y.b_n)));
      EXPECT_NEAR(y.b_b, -2.5 * x.b_b, 1e-12 * std::fmax(1.0, std::fabs(y.b_b)));
    }
  }
}

TEST(Integrate, RenormalizesStrongGrowth) {
  const DynamoMatrix m = DynamoMatrix::from_rows(50, 0, 0, 40);
  const Trajectory tr = integrate(m, {1, 1}, 20.0, 1e-3);
  for (const FieldState& s : tr.states) {
    EXPECT_LE(state_norm(s), 1e101);
    EXPECT_GE(state_norm(s), 1e-101);
  }
  EXPECT_GT(tr.log_scale.back(), 0.0);
  EXPECT_NEAR(tr.log_norm(tr.size() - 1), 1000.0, 1e-6 * 1000.0);
  EXPECT_NEAR(fit_growth_rate(tr).re_gamma, 50.0, 1e-4);
}

TEST(Integrate, FourthOrderConvergence) {
  std::mt19937_64 rng(61);
  for (int i = 0; i < 20; ++i) {
    const DynamoMatrix m = random_matrix(rng);
    const Matrix2 exact = taylor_expm(m, 1.0);
    const FieldState b0{1.0, 0.5};
    const FieldState ref = propagate(exact, b0);
    auto err = [&](double dt) {
      const Trajectory tr = integrate(m, b0, 1.0, dt);
      const FieldState e = tr.physical(tr.size() - 1);
      return std::hypot(e.b_n - ref.b_n, e.b_b - ref.b_b);
    };
    EXPECT_GE(err(0.1) / err(0.05), 12.0) << "draw " << i;
  }
}

TEST(MatrixExponential, MatchesTaylorOracle) {
  std::mt19937_64 rng(67);
  for (int i = 0; i < 500; ++i) {
    const DynamoMatrix m = random_matrix(rng, -3.0, 3.0);
    const Matrix2 e = matrix_exponential(m, 1.3);
    const Matrix2 ref = taylor_expm(m, 1.3);
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c) {
        EXPECT_NEAR(e[r][c], ref[r][c], 1e-10 * std::fmax(1.0, std::fabs(ref[r][c])));
      }
    }
  }
  // repeated eigenvalue and nilpotent part
  const Matrix2 j = matrix_exponential(DynamoMatrix::from_rows(1, 1, 0, 1), 1.0);
  EXPECT_NEAR(j[0][0], std::numbers::e, 1e-14);
  EXPECT_NEAR(j[0][1], std::numbers::e, 1e-14);
  EXPECT_NEAR(j[1][0], 0.0, 1e-14);
}

TEST(FitGrowthRate, ZeroMatrix) {
  const GrowthRateFit f = fit_growth_rate(integrate(DynamoMatrix::from_rows(0, 0, 0, 0), {1, 1}, 20, 1e-2));
  EXPECT_EQ(f.re_gamma, 0.0);
  EXPECT_EQ(f.im_gamma, 0.0);
  EXPECT_TRUE(f.valid());
}

TEST(FitGrowthRate, Rotation) {
  const GrowthRateFit f = fit_growth_rate(integrate(kRotation, {1, 0.5}, 20, 1e-3));
  EXPECT_NEAR(f.re_gamma, 0.0, 1e-6);
  EXPECT_NEAR(f.im_gamma, 1.0, 1e-4);
  EXPECT_TRUE(f.valid());
  EXPECT_GE(f.fit_residual, 0.0);
}

TEST(FitGrowthRate, DegenerateBranch) {
  const GrowthRateFit f = fit_growth_rate(integrate(degenerate_branch_matrix(1.0), {1, 0.5}, 20, 1e-3));
  EXPECT_NEAR(f.re_gamma, 1.0, 1e-6);
  EXPECT_EQ(f.im_gamma, 0.0);
  EXPECT_EQ(f.method, FitMethod::LogNormSlope);
}

TEST(FitGrowthRate, InitialConditionInvariance) {
  std::mt19937_64 rng(71);
  std::uniform_real_distribution<double> angle(0.0, 2 * pi);
  int tested = 0;
  while (tested < 20) {
    const DynamoMatrix m = random_matrix(rng);
    const Spectrum s = characteristic_roots(m);
    if (s.discriminant <= 0.0 || s.gamma_plus.real() - s.gamma_minus.real() <= 0.1) continue;
    ++tested;
    const double a = angle(rng), b = angle(rng);
    const GrowthRateFit f1 = fit_growth_rate(integrate(m, {std::cos(a), std::sin(a)}, 20, 1e-3));
    const GrowthRateFit f2 = fit_growth_rate(integrate(m, {std::cos(b), std::sin(b)}, 20, 1e-3));
    EXPECT_NEAR(f1.re_gamma, f2.re_gamma, 1e-4);
    EXPECT_NEAR(f1.re_gamma, s.gamma_plus.real(), 1e-4);
  }
}

TEST(FitGrowthRate, StrongDecayKeepsRate) {
  // |B| drops far below the double range; the accumulated log scale keeps the rate.
  const Trajectory tr = integrate(DynamoMatrix::from_rows(-400, 0, 0, -400), {1, 1}, 2.0, 1e-4);
  EXPECT_LT(tr.log_norm(tr.size() - 1), -700.0);
  EXPECT_NEAR(fit_growth_rate(tr).re_gamma, -400.0, 1e-4);
}

TEST(FitGrowthRate, VanishingNormIsDegenerateFit) {
  Trajectory tr = integrate(kRotation, {1, 0}, 1.0, 0.01);
  tr.states[50] = {0.0, 0.0};
  try {
    fit_growth_rate(tr);
    FAIL() << "expected a degenerate fit";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegenerateFit);
  }
}

TEST(FitGrowthRate, RejectsShortTrajectory) {
  EXPECT_THROW(fit_growth_rate(integrate(kRotation, {1, 0}, 0.5, 0.1)), Error);
}

TEST(CrossCheck, OscillatoryBranch) {
  PlasmaParams p;
  p.flow.v_s = -1.0;
  const CrossCheckReport r = cross_check(FilamentGeometry::helical(1.0), p, CoefficientScheme::Eq18);
  EXPECT_TRUE(r.passed);
  EXPECT_LT(r.re_residual, 1e-4);
  ASSERT_TRUE(r.im_residual);
  EXPECT_LT(*r.im_residual, 1e-4);
}

TEST(CrossCheck, DegenerateBranchAtTwo) {
  const Spectrum reference =
      solve_quadratic(laminar_characteristic(degenerate_branch(2.0).alpha_lambda, 2.0));
  const CrossCheckReport r = cross_check(degenerate_branch_matrix(2.0), reference);
  EXPECT_TRUE(r.passed);
  EXPECT_NEAR(r.fit.re_gamma, 2.0, 1e-4);
}

TEST(CrossCheck, RandomDrawsAgree) {
  std::mt19937_64 rng(20080601);
  std::uniform_real_distribution<double> kappa(0.1, 5.0), al(-5.0, 5.0), beta(0.0, 1.0),
      vs(-2.0, 2.0);
  for (int i = 0; i < 100; ++i) {
    const double k = kappa(rng);
    PlasmaParams p;
    p.alpha = al(rng);
    p.beta = beta(rng);
    p.flow.v_s = vs(rng);
    const CrossCheckReport r = cross_check({k, k, true}, p, CoefficientScheme::Eq18);
    EXPECT_TRUE(r.passed) << "draw " << i << " re " << r.re_residual << " fit residual "
                          << r.fit.fit_residual;
  }
}

TEST(CrossCheck, SchemeMismatchIsDetected) {
  PlasmaParams p;
  p.alpha = -1.0;
  p.beta = 0.5;
  p.flow.v_s = -1.0;
  const CrossCheckReport r = cross_check(FilamentGeometry::helical(2.0), p, CoefficientScheme::Eq18,
                                         {}, CoefficientScheme::Eq13_14);
  EXPECT_FALSE(r.passed);
  EXPECT_GT(r.re_residual, 1e-4);
}

}  // namespace
}  // namespace filadyn
