#pragma once

#include <optional>
#include <string_view>

#include "filadyn/vec3.hpp"

namespace filadyn {

struct ABCParams {
  double A = 1.0;
  double B = 1.0;
  double C = 1.0;
};

/// Coordinates in a twisted flux tube. The twist angle follows
/// theta(s) = theta0 - tau0 s.
struct TubePoint {
  double r = 0.0;
  double s = 0.0;
  double theta0 = 0.0;
  double tau0 = 0.0;

  double theta() const { return theta0 - tau0 * s; }
};

struct TubeField {
  double B_s = 0.0;      // toroidal
  double B_theta = 0.0;  // poloidal
};

/// Imaginary part of the complex-exponential sum above which evaluation fails,
/// relative to max(1, |A| + |B| + |C|).
inline constexpr double kImagResidualLimit = 1e-13;

struct ComplexFormValue {
  Vec3 velocity;
  double imag_residual = 0.0;
};

/// Complex-exponential ABC sum
///   A[(i,1,0)e^{iz} + (-i,1,0)e^{-iz}] + B[(0,i,1)e^{ix} + (0,-i,1)e^{-ix}]
///   + C[(1,0,i)e^{iy} + (1,0,-i)e^{-iy}]
/// which is real and equals 2 (-A sin z + C cos y, A cos z - B sin x, B cos x - C sin y).
/// Throws Error(Transcription) if the imaginary part does not cancel.
ComplexFormValue abc_velocity_paper(const ABCParams& p, const Vec3& x);

/// Textbook field (A sin z + C cos y, B sin x + A cos z, C sin y + B cos x).
Vec3 abc_velocity_standard(const ABCParams& p, const Vec3& x);

/// (r cos theta(s), r sin theta(s), s); the axial coordinate is identified with s.
Vec3 tube_to_cartesian(const TubePoint& tp);

/// Last bracket of the radial flow: as printed it pairs e^{i r cos} with
/// e^{-i r sin}; the symmetric reading uses e^{-i r cos} in both places.
enum class RadialBracket { AsPrinted, Symmetric };

std::string_view to_string(RadialBracket b);
std::optional<RadialBracket> parse_radial_bracket(std::string_view text);

/// |sin theta| or |cos theta| below this is treated as a singular angle.
inline constexpr double kSingularBand = 1e-12;

struct TubeVelocity {
  double V_s = 0.0;
  double V_r = 0.0;            // real part of the radial expression
  double V_r_imag = 0.0;       // its imaginary part, reported rather than dropped
};

/// Toroidal and radial flow of the ABC field in tube coordinates:
///   V_s = 2B cos(r cos th) + 2C cos(r sin th)
///   V_r = csc th / (1 + r) [i A m + i C n + i r B (e^{i r cos th} - e^{-i r sin th})]
/// with m = e^{irs} - e^{-irs} and n = e^{i r sin th} - e^{-i r sin th}.
/// Throws Error(Domain) when |sin th| < kSingularBand.
TubeVelocity tube_velocity(const ABCParams& p, const TubePoint& tp,
                           RadialBracket bracket = RadialBracket::AsPrinted);

/// Near-axis radial flow A csc(theta) s as printed. The full expression
/// behaves as -2 r times this for small r.
double axis_radial_flow(double A, double theta, double s);

enum class StagnationClass { StrongStagnation, NoStagnationConstraint };

std::string_view to_string(StagnationClass c);

/// Strong stagnation (B = C = 0): the toroidal flow vanishes and no dynamo
/// action is possible.
StagnationClass stagnation_classify(const ABCParams& p);

enum class TubeGrowthClass { Marginal, TrivialField, SlowCandidate };

std::string_view to_string(TubeGrowthClass c);

struct TubeGrowthResult {
  TubeGrowthClass classification = TubeGrowthClass::Marginal;
  /// Exactly 0 for a marginal mode; empty when no rate follows (slow candidate).
  std::optional<double> gamma;
  /// The field with B_s = B_theta / (tau0 r^2) imposed, when marginal.
  std::optional<TubeField> constrained;
  /// |B_s - tau0^{-1} B_theta / r^2| for the returned field.
  double constraint_residual = 0.0;
};

/// Local growth rate of the ideal tube induction system. With eta == 0 and
/// B_theta != 0 the rate is exactly zero and B_s is tied to B_theta; any
/// resistivity turns the marginal mode into a slow-dynamo candidate.
/// Throws Error(Domain) for r <= 0 or tau0 == 0.
TubeGrowthResult tube_growth_rate(const TubeField& field, const TubePoint& tp, double eta);

struct TubeSystemResidual {
  double toroidal = 0.0;
  double poloidal_sin = 0.0;
  double poloidal_cos = 0.0;
};

/// Residuals of the three component equations of dB/dt = B . grad v for a
/// trial growth rate, given the radial flow and its arclength derivative.
TubeSystemResidual tube_system_residual(double gamma, const TubeField& field, const TubePoint& tp,
                                        double V_r, double dVr_ds);

/// A [(1 + tan^2 theta) tau0^2 + cos s]; singular where cos theta vanishes.
double radial_flow_gradient(double A, double theta, double tau0, double s);

}  // namespace filadyn
