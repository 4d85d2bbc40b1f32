#pragma once

#include <array>
#include <complex>
#include <optional>
#include <string_view>

#include "filadyn/flow.hpp"
#include "filadyn/geometry.hpp"

namespace filadyn {

struct PlasmaParams {
  double alpha = 0.0;       // helicity coefficient
  double beta = 0.0;        // turbulent diffusivity
  double lambda_exp = 1.0;  // Lyapunov exponent of |B|
  double eta = 0.0;         // resistivity
  FlowProfile flow;

  /// alpha and lambda only ever act through their product.
  double alpha_lambda() const { return alpha * lambda_exp; }
};

void validate(const PlasmaParams& params);

/// The printed component equations disagree on the power of kappa0 in the
/// binormal diffusion term; each printing is kept as its own scheme.
enum class CoefficientScheme {
  Eq13_14,           // beta kappa0
  Eq18,              // beta kappa0^2
  Eq24ZeroHelicity,  // beta kappa0^4, alpha forced to zero
  Exact,             // beta kappa0^2, from the exact frame Laplacian
};

/// Exponent p of the binormal diffusion term -beta kappa0^p.
int binormal_diffusion_power(CoefficientScheme scheme);

std::string_view to_string(CoefficientScheme scheme);
std::optional<CoefficientScheme> parse_scheme(std::string_view text);

/// Evolution operator for (B_n, B_b): dB/dt = M B, eigenproblem det(gamma I - M) = 0.
struct DynamoMatrix {
  double m11 = 0.0;
  double m12 = 0.0;
  double m21 = 0.0;
  double m22 = 0.0;
  /// Empty for matrices not produced by build_matrix (closed-form realizations,
  /// user-supplied operators).
  std::optional<CoefficientScheme> scheme;

  double trace() const { return m11 + m22; }
  double determinant() const { return m11 * m22 - m12 * m21; }

  static DynamoMatrix from_rows(double a, double b, double c, double d) {
    return {a, b, c, d, std::nullopt};
  }
};

/// m11 = al - 2 beta k^2, m12 = k, m21 = al + k v_s, m22 = -beta k^p, with
/// al = alpha lambda. Under Eq24ZeroHelicity the al terms vanish and a nonzero
/// alpha is rejected.
DynamoMatrix build_matrix(const FilamentGeometry& geom, const PlasmaParams& params,
                          CoefficientScheme scheme);

/// Printed eigenproblem matrices, with the unknown growth rate substituted.
enum class PaperVariant { General18, Laminar19, Turbulent24, Limit25 };

std::string_view to_string(PaperVariant variant);

using ComplexMatrix2 = std::array<std::array<std::complex<double>, 2>, 2>;

std::complex<double> determinant(const ComplexMatrix2& m);

/// The matrix exactly as printed, including its (2,2) sign. Laminar19 needs
/// beta == 0; Turbulent24 needs alpha == 0; Limit25 needs both.
ComplexMatrix2 paper_matrix(const FilamentGeometry& geom, const PlasmaParams& params,
                            PaperVariant variant, std::complex<double> gamma);

struct PaperMatrixResidual {
  ComplexMatrix2 printed{};
  ComplexMatrix2 corrected{};  // gamma I - M with M from build_matrix
  std::complex<double> printed_determinant;
  std::complex<double> corrected_determinant;
  double max_entry_difference = 0.0;
};

/// Compares a printed matrix with gamma I - M for the scheme it was printed under.
PaperMatrixResidual paper_matrix_residual(const FilamentGeometry& geom,
                                          const PlasmaParams& params, PaperVariant variant,
                                          std::complex<double> gamma);

}  // namespace filadyn
