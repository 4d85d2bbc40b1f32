#pragma once

#include <array>

#include "filadyn/vec3.hpp"

namespace filadyn {

/// Constant curvature and torsion of a filament.
///
/// `kappa0` is nonnegative for any curve-derived geometry; `validate` enforces
/// that. Helical equipartition means the filament is a helix with kappa0 == tau0.
struct FilamentGeometry {
  double kappa0 = 0.0;
  double tau0 = 0.0;
  bool helical_equipartition = false;

  /// Equipartition geometry, kappa0 == tau0 == k.
  static FilamentGeometry helical(double k) { return {k, k, true}; }
};

/// Throws Error(InvalidArgument) if `geom` breaks its invariants.
void validate(const FilamentGeometry& geom);

struct FrenetFrame {
  Vec3 t{1.0, 0.0, 0.0};
  Vec3 n{0.0, 1.0, 0.0};
  Vec3 b{0.0, 0.0, 1.0};
};

/// Largest deviation from orthonormality and right-handedness (b = t x n).
double orthonormality_defect(const FrenetFrame& frame);

/// Circular helix (a cos u, a sin u, b_pitch u), parameterized by arclength.
struct HelixSpec {
  double a = 1.0;
  double b_pitch = 0.0;
};

struct HelixSample {
  Vec3 point;
  FrenetFrame frame;
  FilamentGeometry geom;
};

/// Arclength derivatives (dt/ds, dn/ds, db/ds) from the Frenet-Serret equations.
FrenetFrame frenet_derivative(const FrenetFrame& frame, const FilamentGeometry& geom);

/// Exact point, frame and curvature/torsion of a helix at arclength s.
/// Throws on a <= 0 or non-finite inputs.
HelixSample helix_frame(const HelixSpec& spec, double s);

/// Row i holds the coefficients of the second derivative of frame vector i
/// (t, n, b) in the (t, n, b) basis.
using FrameCoefficients = std::array<std::array<double, 3>, 3>;

struct FrameLaplacianReport {
  FrameCoefficients exact{};
  /// Reduced coefficients Delta t = -kappa0^2 t, Delta n = -kappa0^2 n. The
  /// reduced form says nothing about b, so its third row is all zero and
  /// excluded from the residual.
  FrameCoefficients reduced{};
  /// reduced - exact, rows t and n only; row b is zero.
  FrameCoefficients residual{};
};

/// Second arclength derivatives of the frame for constant curvature and torsion:
///   t'' = -k^2 t + k tau b,  n'' = -(k^2 + tau^2) n,  b'' = k tau t - tau^2 b.
FrameLaplacianReport frame_laplacian_exact(const FilamentGeometry& geom);

/// Divergence-free residual dBb/ds - kappa0 B_n; zero when the constraint holds.
/// Reported only, never enforced.
double solenoidal_residual(double b_n, double b_b, const FilamentGeometry& geom, double dbb_ds);

}  // namespace filadyn
