#pragma once

#include <complex>
#include <functional>
#include <string>
#include <utility>

#include "filadyn/dynamo_operator.hpp"

namespace filadyn {

/// Separates numerical zero from physical growth or oscillation.
inline constexpr double kClassEpsilon = 1e-9;

enum class GrowthClass { Fast, Slow, Marginal, Decaying };

/// A growth tag plus the two qualifiers that can accompany any of them.
struct ModeClass {
  GrowthClass growth = GrowthClass::Marginal;
  bool oscillatory = false;
  bool degenerate = false;

  friend bool operator==(const ModeClass&, const ModeClass&) = default;
};

/// "FAST", "MARGINAL+OSCILLATORY", "FAST+DEGENERATE", ...
std::string to_string(const ModeClass& c);
std::string_view to_string(GrowthClass g);

/// a gamma^2 + b gamma + c = 0
struct Quadratic {
  double a = 1.0;
  double b = 0.0;
  double c = 0.0;

  double discriminant() const { return b * b - 4.0 * a * c; }
};

struct Spectrum {
  std::complex<double> gamma_plus;   // Re gamma_plus >= Re gamma_minus; Im >= 0 for a pair
  std::complex<double> gamma_minus;
  double discriminant = 0.0;
  ModeClass classification;
};

/// gamma^2 - trace(M) gamma + det(M)
Quadratic characteristic_polynomial(const DynamoMatrix& m);

/// Both roots of `q` (a != 0), ordered. The classification treats the
/// quadratic as independent of beta, so a positive real part reads as FAST.
Spectrum solve_quadratic(const Quadratic& q);

/// Eigenvalues of M.
Spectrum characteristic_roots(const DynamoMatrix& m);

/// The laminar characteristic quadratic as printed:
///   gamma^2 + al gamma - (al + k) k = 0,  al = alpha lambda.
Quadratic laminar_characteristic(double alpha_lambda, double kappa0);

struct ClosedFormPair {
  double stretching = 0.0;  // the larger root
  double squeezing = 0.0;
};

/// Tolerance on the closed-form validity condition kappa0 == -alpha lambda.
inline constexpr double kClosedFormValidity = 1e-12;

/// Laminar closed form al (-1 +- sqrt 5) / 2, valid only where kappa0 == -al.
/// Throws Error(ValidityCondition) elsewhere.
ClosedFormPair paper_closed_form_laminar(double alpha_lambda, double kappa0);

struct DegenerateBranch {
  double alpha_lambda = 0.0;
  double gamma = 0.0;
};

/// The zero-discriminant branch of the laminar quadratic: al = -2 kappa0,
/// double root gamma = kappa0.
DegenerateBranch degenerate_branch(double kappa0);

/// Diagonalizable realization kappa0 I of the degenerate double root, used as
/// the time-domain counterpart of the branch.
DynamoMatrix degenerate_branch_matrix(double kappa0);

struct AnosovReference {
  double expanding = 0.0;   // (3 + sqrt 5) / 2
  double contracting = 0.0; // (3 - sqrt 5) / 2
};

/// Cat-map eigenvalue pair.
AnosovReference anosov_reference();

/// kappa (-1 + sqrt 5) / 2 and kappa (-1 - sqrt 5) / 2, in that order.
std::pair<double, double> curvature_scaled_anosov(double kappa);

/// Spectrum as a function of the turbulent diffusivity.
using SpectrumFamily = std::function<Spectrum(double beta)>;

/// Diffusivities sampled when probing the ideal limit.
inline constexpr double kBetaSequence[] = {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6};

/// Classifies the limit beta -> 0 of the leading growth rate:
///   FAST      Re gamma_+(0) > eps and the samples converge to it
///   SLOW      Re gamma_+ > eps at some sampled beta > 0 but not at the limit
///   DECAYING  Re gamma_+(0) < -eps
///   MARGINAL  otherwise
/// OSCILLATORY and DEGENERATE describe the limit spectrum. Throws
/// Error(NonConvergence) when the sampled Re gamma_+ is not monotone.
ModeClass classify(const SpectrumFamily& family);

/// Point classification given the spectrum at the point and in the ideal limit.
ModeClass classify_point(const Spectrum& at, const Spectrum& limit);

}  // namespace filadyn
