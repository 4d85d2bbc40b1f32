#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "filadyn/dynamo_operator.hpp"
#include "filadyn/spectrum.hpp"

namespace filadyn {

/// (B_n, B_b)
struct FieldState {
  double b_n = 0.0;
  double b_b = 0.0;
};

/// RK4 samples of dB/dt = M B. Stored states are renormalized whenever their
/// norm leaves [1e-100, 1e100]; the physical state is
/// states[i] * exp(log_scale[i]).
struct Trajectory {
  std::vector<double> times;
  std::vector<FieldState> states;
  std::vector<double> log_scale;

  std::size_t size() const { return times.size(); }
  /// log |B(t_i)| including the accumulated scale.
  double log_norm(std::size_t i) const;
  /// Physical state; overflows to inf if the accumulated scale is too large.
  FieldState physical(std::size_t i) const;
};

/// Classical fourth-order Runge-Kutta with a uniform step t_end / N, where N is
/// the smallest step count with t_end / N <= dt. Throws on dt <= 0,
/// t_end < dt or a zero initial state.
Trajectory integrate(const DynamoMatrix& m, FieldState b0, double t_end, double dt);

using Matrix2 = std::array<std::array<double, 2>, 2>;

/// Closed-form exp(M t) for a real 2x2 matrix.
Matrix2 matrix_exponential(const DynamoMatrix& m, double t);

FieldState propagate(const Matrix2& p, FieldState x);

enum class FitMethod { LogNormSlope, Propagator };

/// Fit accepted when fit_residual is below this.
inline constexpr double kFitResidualLimit = 1e-3;

struct GrowthRateFit {
  double re_gamma = 0.0;
  double im_gamma = 0.0;
  double fit_residual = 0.0;
  /// Least-squares slope of log|B| over the retained window, always reported.
  double log_norm_slope = 0.0;
  FitMethod method = FitMethod::LogNormSlope;

  bool valid() const { return fit_residual < kFitResidualLimit; }
};

/// Fraction of leading samples dropped as transient.
inline constexpr double kTransientFraction = 0.2;

/// Growth rate and angular frequency from a trajectory, using the samples
/// after the transient window.
///
/// When the normalized state keeps a fixed direction the rate is the
/// least-squares slope of log|B| and the frequency is zero. Otherwise the
/// one-step propagator is fitted to consecutive normalized states and the
/// rates come from its eigenvalues mu as log(mu) / dt; log|B| alone carries a
/// periodic modulation for non-normal operators that the slope cannot remove.
/// Throws Error(DegenerateFit) when |B| vanishes, InvalidArgument for fewer
/// than 10 samples.
GrowthRateFit fit_growth_rate(const Trajectory& traj);

struct SimOptions {
  double t_end = 20.0;
  double dt = 1e-3;
  FieldState b0{1.0, 0.5};
};

/// Spectral-vs-temporal agreement threshold.
inline constexpr double kCrossCheckTolerance = 1e-4;

struct CrossCheckReport {
  Spectrum spectrum;
  GrowthRateFit fit;
  double re_residual = 0.0;
  /// Present when the spectrum is a conjugate pair.
  std::optional<double> im_residual;
  bool passed = false;
};

/// Integrates `temporal` and compares the fitted rates against `reference`.
CrossCheckReport cross_check(const DynamoMatrix& temporal, const Spectrum& reference,
                             const SimOptions& options = {});

/// Builds the operator once per side; `temporal_scheme` overrides the scheme
/// used for the time integration (a deliberate mismatch is a negative control).
CrossCheckReport cross_check(const FilamentGeometry& geom, const PlasmaParams& params,
                             CoefficientScheme scheme, const SimOptions& options = {},
                             std::optional<CoefficientScheme> temporal_scheme = std::nullopt);

}  // namespace filadyn
