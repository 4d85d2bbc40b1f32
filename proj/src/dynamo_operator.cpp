#include "filadyn/dynamo_operator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "filadyn/error.hpp"

namespace filadyn {

void validate(const PlasmaParams& params) {
  if (!std::isfinite(params.alpha) || !std::isfinite(params.beta) ||
      !std::isfinite(params.lambda_exp) || !std::isfinite(params.eta)) {
    fail(ErrorCode::InvalidArgument, "plasma parameters must be finite");
  }
  if (params.beta < 0.0) {
    fail(ErrorCode::InvalidArgument, "turbulent diffusivity beta must be nonnegative");
  }
  if (params.eta < 0.0) {
    fail(ErrorCode::InvalidArgument, "resistivity eta must be nonnegative");
  }
  validate(params.flow);
}

int binormal_diffusion_power(CoefficientScheme scheme) {
  switch (scheme) {
    case CoefficientScheme::Eq13_14:
      return 1;
    case CoefficientScheme::Eq18:
    case CoefficientScheme::Exact:
      return 2;
    case CoefficientScheme::Eq24ZeroHelicity:
      return 4;
  }
  return 2;
}

std::string_view to_string(CoefficientScheme scheme) {
  switch (scheme) {
    case CoefficientScheme::Eq13_14:
      return "eq13_14";
    case CoefficientScheme::Eq18:
      return "eq18";
    case CoefficientScheme::Eq24ZeroHelicity:
      return "eq24";
    case CoefficientScheme::Exact:
      return "exact";
  }
  return "?";
}

std::optional<CoefficientScheme> parse_scheme(std::string_view text) {
  for (auto s : {CoefficientScheme::Eq13_14, CoefficientScheme::Eq18,
                 CoefficientScheme::Eq24ZeroHelicity, CoefficientScheme::Exact}) {
    if (text == to_string(s)) return s;
  }
  return std::nullopt;
}

DynamoMatrix build_matrix(const FilamentGeometry& geom, const PlasmaParams& params,
                          CoefficientScheme scheme) {
  validate(geom);
  validate(params);
  const double k = geom.kappa0;
  const double k2 = k * k;
  const double kp = std::pow(k, binormal_diffusion_power(scheme));
  double al = params.alpha_lambda();

  if (scheme == CoefficientScheme::Eq24ZeroHelicity) {
    if (params.alpha != 0.0) {
      std::ostringstream msg;
      msg << "scheme eq24 describes the zero-helicity operator, got alpha = " << params.alpha;
      fail(ErrorCode::InvalidArgument, msg.str());
    }
    al = 0.0;
  }

  DynamoMatrix m;
  m.m11 = al - 2.0 * params.beta * k2;
  m.m12 = k;
  m.m21 = al + k * params.flow.v_s;
  m.m22 = -params.beta * kp;
  m.scheme = scheme;
  return m;
}

std::string_view to_string(PaperVariant variant) {
  switch (variant) {
    case PaperVariant::General18:
      return "general_18";
    case PaperVariant::Laminar19:
      return "laminar_19";
    case PaperVariant::Turbulent24:
      return "turbulent_24";
    case PaperVariant::Limit25:
      return "limit_25";
  }
  return "?";
}

std::complex<double> determinant(const ComplexMatrix2& m) {
  return m[0][0] * m[1][1] - m[0][1] * m[1][0];
}

namespace {

void require_variant_params(const PlasmaParams& params, PaperVariant variant) {
  const bool needs_laminar = variant == PaperVariant::Laminar19 || variant == PaperVariant::Limit25;
  const bool needs_zero_helicity =
      variant == PaperVariant::Turbulent24 || variant == PaperVariant::Limit25;
  if (needs_laminar && params.beta != 0.0) {
    fail(ErrorCode::InvalidArgument,
         std::string(to_string(variant)) + " is the laminar operator and needs beta = 0");
  }
  if (needs_zero_helicity && params.alpha != 0.0) {
    fail(ErrorCode::InvalidArgument,
         std::string(to_string(variant)) + " is the zero-helicity operator and needs alpha = 0");
  }
}

CoefficientScheme scheme_of(PaperVariant variant) {
  return variant == PaperVariant::Turbulent24 ? CoefficientScheme::Eq24ZeroHelicity
                                              : CoefficientScheme::Eq18;
}

}  // namespace

ComplexMatrix2 paper_matrix(const FilamentGeometry& geom, const PlasmaParams& params,
                            PaperVariant variant, std::complex<double> gamma) {
  validate(geom);
  validate(params);
  require_variant_params(params, variant);

  const double k = geom.kappa0;
  const double k2 = k * k;
  const double al = params.alpha_lambda();
  const double beta = params.beta;
  const double vs = params.flow.v_s;

  switch (variant) {
    case PaperVariant::General18:
      return {{{gamma + 2.0 * beta * k2 - al, -k}, {-(al + k * vs), -(gamma + beta * k2)}}};
    case PaperVariant::Laminar19:
      return {{{gamma - al, -k}, {-(al + k * vs), -gamma}}};
    case PaperVariant::Turbulent24:
      return {{{gamma + 2.0 * beta * k2, -k}, {-k * vs, -(gamma + beta * k2 * k2)}}};
    case PaperVariant::Limit25:
      return {{{gamma, -k}, {-k * vs, -gamma}}};
  }
  return {};
}

PaperMatrixResidual paper_matrix_residual(const FilamentGeometry& geom,
                                          const PlasmaParams& params, PaperVariant variant,
                                          std::complex<double> gamma) {
  PaperMatrixResidual r;
  r.printed = paper_matrix(geom, params, variant, gamma);

  const DynamoMatrix m = build_matrix(geom, params, scheme_of(variant));
  r.corrected = {{{gamma - m.m11, -m.m12}, {-m.m21, gamma - m.m22}}};

  r.printed_determinant = determinant(r.printed);
  r.corrected_determinant = determinant(r.corrected);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      r.max_entry_difference =
          std::max(r.max_entry_difference, std::abs(r.printed[i][j] - r.corrected[i][j]));
    }
  }
  return r;
}

}  // namespace filadyn
