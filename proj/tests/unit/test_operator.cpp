#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <random>

#include "filadyn/dynamo_operator.hpp"
#include "filadyn/error.hpp"
#include "filadyn/spectrum.hpp"

namespace filadyn {
namespace {

using cplx = std::complex<double>;

PlasmaParams plasma(double alpha_lambda, double beta, double v_s) {
  PlasmaParams p;
  p.alpha = alpha_lambda;
  p.lambda_exp = 1.0;
  p.beta = beta;
  p.flow.v_s = v_s;
  return p;
}

void expect_matrix(const DynamoMatrix& m, double a, double b, double c, double d) {
  EXPECT_DOUBLE_EQ(m.m11, a);
  EXPECT_DOUBLE_EQ(m.m12, b);
  EXPECT_DOUBLE_EQ(m.m21, c);
  EXPECT_DOUBLE_EQ(m.m22, d);
}

const FilamentGeometry kUnit = FilamentGeometry::helical(1.0);

TEST(BuildMatrix, LaminarEq18) {
  const DynamoMatrix m = build_matrix(kUnit, plasma(-1.0, 0.0, -1.0), CoefficientScheme::Eq18);
  expect_matrix(m, -1.0, 1.0, -2.0, 0.0);
  EXPECT_EQ(m.scheme, CoefficientScheme::Eq18);
}

TEST(BuildMatrix, PhysicsOffLeavesCurvatureCoupling) {
  for (auto s : {CoefficientScheme::Eq13_14, CoefficientScheme::Eq18,
                 CoefficientScheme::Eq24ZeroHelicity, CoefficientScheme::Exact}) {
    expect_matrix(build_matrix(kUnit, plasma(0.0, 0.0, -1.0), s), 0.0, 1.0, -1.0, 0.0);
  }
}

TEST(BuildMatrix, ZeroHelicityTurbulent) {
  const DynamoMatrix m =
      build_matrix(kUnit, plasma(0.0, 0.1, -1.0), CoefficientScheme::Eq24ZeroHelicity);
  expect_matrix(m, -0.2, 1.0, -1.0, -0.1);
}

TEST(BuildMatrix, DiffusionPowerPerScheme) {
  const FilamentGeometry g = FilamentGeometry::helical(2.0);
  const PlasmaParams p = plasma(0.0, 0.5, 0.0);
  EXPECT_DOUBLE_EQ(build_matrix(g, p, CoefficientScheme::Eq13_14).m22, -1.0);
  EXPECT_DOUBLE_EQ(build_matrix(g, p, CoefficientScheme::Eq18).m22, -2.0);
  EXPECT_DOUBLE_EQ(build_matrix(g, p, CoefficientScheme::Exact).m22, -2.0);
  EXPECT_DOUBLE_EQ(build_matrix(g, p, CoefficientScheme::Eq24ZeroHelicity).m22, -8.0);
}

TEST(BuildMatrix, RejectsHelicityUnderZeroHelicityScheme) {
  EXPECT_THROW(build_matrix(kUnit, plasma(-1.0, 0.1, -1.0), CoefficientScheme::Eq24ZeroHelicity),
               Error);
}

TEST(BuildMatrix, RejectsNegativeDiffusivities) {
  EXPECT_THROW(build_matrix(kUnit, plasma(0.0, -0.1, 0.0), CoefficientScheme::Eq18), Error);
  PlasmaParams p = plasma(0.0, 0.0, 0.0);
  p.eta = -1.0;
  EXPECT_THROW(build_matrix(kUnit, p, CoefficientScheme::Eq18), Error);
}

TEST(BuildMatrix, AlphaAndLambdaActAsProduct) {
  PlasmaParams a = plasma(0.0, 0.2, 0.5);
  a.alpha = 2.0;
  a.lambda_exp = -1.5;
  PlasmaParams b = plasma(-3.0, 0.2, 0.5);
  const DynamoMatrix ma = build_matrix(kUnit, a, CoefficientScheme::Eq18);
  const DynamoMatrix mb = build_matrix(kUnit, b, CoefficientScheme::Eq18);
  expect_matrix(ma, mb.m11, mb.m12, mb.m21, mb.m22);
}

TEST(BuildMatrix, TraceDeterminantAndCharacteristicPolynomial) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> kappa(0.0, 5.0);
  std::uniform_real_distribution<double> al(-5.0, 5.0);
  std::uniform_real_distribution<double> beta(0.0, 1.0);
  std::uniform_real_distribution<double> vs(-2.0, 2.0);
  const CoefficientScheme schemes[] = {CoefficientScheme::Eq13_14, CoefficientScheme::Eq18,
                                       CoefficientScheme::Exact};
  for (int i = 0; i < 1000; ++i) {
    const double k = kappa(rng);
    const PlasmaParams p = plasma(al(rng), beta(rng), vs(rng));
    const CoefficientScheme s = schemes[i % 3];
    const double kp = std::pow(k, binormal_diffusion_power(s));
    const double a = p.alpha_lambda();
    const double trace = a - 2.0 * p.beta * k * k - p.beta * kp;
    const double det = -p.beta * kp * (a - 2.0 * p.beta * k * k) - k * (a + k * p.flow.v_s);

    const Quadratic q = characteristic_polynomial(build_matrix({k, k, true}, p, s));
    EXPECT_EQ(q.a, 1.0);
    EXPECT_NEAR(q.b, -trace, 1e-14 * std::fmax(1.0, std::fabs(trace)));
    EXPECT_NEAR(q.c, det, 1e-14 * std::fmax(1.0, std::fabs(det)));
  }
}

TEST(BuildMatrix, ExactSchemeEqualsEq18) {
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> u(0.0, 3.0);
  for (int i = 0; i < 200; ++i) {
    const FilamentGeometry g{u(rng), u(rng), false};
    const PlasmaParams p = plasma(u(rng) - 1.5, u(rng), u(rng) - 1.5);
    const DynamoMatrix a = build_matrix(g, p, CoefficientScheme::Exact);
    const DynamoMatrix b = build_matrix(g, p, CoefficientScheme::Eq18);
    expect_matrix(a, b.m11, b.m12, b.m21, b.m22);
  }
}

TEST(PaperMatrix, LimitMatrixAsPrinted) {
  const PlasmaParams p = plasma(0.0, 0.0, -1.0);
  const PaperMatrixResidual r = paper_matrix_residual(kUnit, p, PaperVariant::Limit25, cplx(0, 1));
  EXPECT_EQ(r.printed[0][0], cplx(0, 1));
  EXPECT_EQ(r.printed[0][1], cplx(-1, 0));
  EXPECT_EQ(r.printed[1][0], cplx(1, 0));
  EXPECT_EQ(r.printed[1][1], cplx(0, -1));
  // The printed (2,2) sign makes the determinant 1 + 1 at gamma = i; gamma I - M
  // is annihilated by the oscillatory root.
  EXPECT_NEAR(std::abs(r.printed_determinant - cplx(2.0, 0.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(r.corrected_determinant), 0.0, 1e-15);
}

TEST(PaperMatrix, ZeroParametersGiveZeroMatrix) {
  const ComplexMatrix2 m =
      paper_matrix({0.0, 0.0, false}, plasma(0.0, 0.0, 0.0), PaperVariant::General18, 0.0);
  for (const auto& row : m) {
    for (const cplx& v : row) EXPECT_EQ(v, cplx(0.0, 0.0));
  }
}

TEST(PaperMatrix, LaminarPrintedMatrixMissesGoldenRoot) {
  const PlasmaParams p = plasma(-1.0, 0.0, -1.0);
  const ComplexMatrix2 at_one = paper_matrix(kUnit, p, PaperVariant::Laminar19, 1.0);
  EXPECT_EQ(at_one[0][0], cplx(2.0));
  EXPECT_EQ(at_one[0][1], cplx(-1.0));
  EXPECT_EQ(at_one[1][0], cplx(2.0));
  EXPECT_EQ(at_one[1][1], cplx(-1.0));
  EXPECT_EQ(determinant(at_one), cplx(0.0));

  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  const PaperMatrixResidual r = paper_matrix_residual(kUnit, p, PaperVariant::Laminar19, phi);
  EXPECT_NEAR(r.printed_determinant.real(), -std::sqrt(5.0), 1e-14);
  EXPECT_GT(std::abs(r.printed_determinant), 1e-6);
}

TEST(PaperMatrix, GeneralDiffersFromCorrectedOnlyInLastEntry) {
  const FilamentGeometry g = FilamentGeometry::helical(1.3);
  const PlasmaParams p = plasma(0.7, 0.4, -0.6);
  const cplx gamma(0.3, -0.8);
  const PaperMatrixResidual r = paper_matrix_residual(g, p, PaperVariant::General18, gamma);
  EXPECT_NEAR(std::abs(r.printed[0][0] - r.corrected[0][0]), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(r.printed[0][1] - r.corrected[0][1]), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(r.printed[1][0] - r.corrected[1][0]), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(r.printed[1][1] + r.corrected[1][1]), 0.0, 1e-15);

  // corrected determinant vanishes at the operator eigenvalues
  const Spectrum s = characteristic_roots(build_matrix(g, p, CoefficientScheme::Eq18));
  const PaperMatrixResidual at_root =
      paper_matrix_residual(g, p, PaperVariant::General18, s.gamma_plus);
  EXPECT_NEAR(std::abs(at_root.corrected_determinant), 0.0, 1e-12);
}

TEST(PaperMatrix, RejectsInconsistentVariantParameters) {
  EXPECT_THROW(paper_matrix(kUnit, plasma(-1.0, 0.1, -1.0), PaperVariant::Laminar19, 0.0), Error);
  EXPECT_THROW(paper_matrix(kUnit, plasma(-1.0, 0.1, -1.0), PaperVariant::Turbulent24, 0.0),
               Error);
  EXPECT_THROW(paper_matrix(kUnit, plasma(0.0, 0.1, -1.0), PaperVariant::Limit25, 0.0), Error);
  EXPECT_NO_THROW(paper_matrix(kUnit, plasma(0.0, 0.1, -1.0), PaperVariant::Turbulent24, 0.0));
}

TEST(PaperMatrix, ZeroHelicityTurbulentSpectrumIsNotGolden) {
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  for (double beta : {0.05, 0.1, 0.5}) {
    const Spectrum s = characteristic_roots(
        build_matrix(kUnit, plasma(0.0, beta, -1.0), CoefficientScheme::Eq24ZeroHelicity));
    EXPECT_GT(std::abs(s.gamma_plus - phi), 0.5);
    EXPECT_GT(std::abs(s.gamma_minus - (1.0 - phi)), 0.5);
  }
}

TEST(Scheme, ParseRoundTrip) {
  for (auto s : {CoefficientScheme::Eq13_14, CoefficientScheme::Eq18,
                 CoefficientScheme::Eq24ZeroHelicity, CoefficientScheme::Exact}) {
    EXPECT_EQ(parse_scheme(to_string(s)), s);
  }
  EXPECT_FALSE(parse_scheme("eq19"));
}

}  // namespace
}  // namespace filadyn
