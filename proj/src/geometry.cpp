#include "filadyn/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "filadyn/error.hpp"

namespace filadyn {

void validate(const FilamentGeometry& geom) {
  if (!std::isfinite(geom.kappa0) || !std::isfinite(geom.tau0)) {
    fail(ErrorCode::InvalidArgument, "filament curvature and torsion must be finite");
  }
  if (geom.kappa0 < 0.0) {
    std::ostringstream msg;
    msg << "filament curvature must be nonnegative, got kappa0 = " << geom.kappa0;
    fail(ErrorCode::InvalidArgument, msg.str());
  }
  if (geom.helical_equipartition && geom.kappa0 != geom.tau0) {
    std::ostringstream msg;
    msg << "helical equipartition requires kappa0 == tau0, got " << geom.kappa0 << " and "
        << geom.tau0;
    fail(ErrorCode::InvalidArgument, msg.str());
  }
}

double orthonormality_defect(const FrenetFrame& f) {
  const double defects[] = {
      std::fabs(dot(f.t, f.t) - 1.0),
      std::fabs(dot(f.n, f.n) - 1.0),
      std::fabs(dot(f.b, f.b) - 1.0),
      std::fabs(dot(f.t, f.n)),
      std::fabs(dot(f.t, f.b)),
      std::fabs(dot(f.n, f.b)),
      max_abs(cross(f.t, f.n) - f.b),
  };
  return *std::max_element(std::begin(defects), std::end(defects));
}

FrenetFrame frenet_derivative(const FrenetFrame& frame, const FilamentGeometry& geom) {
  const double k = geom.kappa0;
  const double tau = geom.tau0;
  return {k * frame.n, -k * frame.t + tau * frame.b, -tau * frame.n};
}

HelixSample helix_frame(const HelixSpec& spec, double s) {
  if (!(spec.a > 0.0) || !std::isfinite(spec.a)) {
    fail(ErrorCode::InvalidArgument, "helix radius must be positive and finite");
  }
  if (!std::isfinite(spec.b_pitch) || !std::isfinite(s)) {
    fail(ErrorCode::InvalidArgument, "helix pitch and arclength must be finite");
  }
  const double a = spec.a;
  const double p = spec.b_pitch;
  const double c2 = a * a + p * p;
  const double c = std::sqrt(c2);
  const double u = s / c;
  const double cu = std::cos(u);
  const double su = std::sin(u);

  HelixSample out;
  out.point = {a * cu, a * su, p * u};
  out.frame.t = {-a * su / c, a * cu / c, p / c};
  out.frame.n = {-cu, -su, 0.0};
  out.frame.b = {p * su / c, -p * cu / c, a / c};
  out.geom.kappa0 = a / c2;
  out.geom.tau0 = p / c2;
  out.geom.helical_equipartition = out.geom.kappa0 == out.geom.tau0;
  return out;
}

FrameLaplacianReport frame_laplacian_exact(const FilamentGeometry& geom) {
  validate(geom);
  const double k = geom.kappa0;
  const double tau = geom.tau0;

  FrameLaplacianReport r;
  r.exact = {{
      {-k * k, 0.0, k * tau},
      {0.0, -(k * k + tau * tau), 0.0},
      {k * tau, 0.0, -tau * tau},
  }};
  r.reduced = {{
      {-k * k, 0.0, 0.0},
      {0.0, -k * k, 0.0},
      {0.0, 0.0, 0.0},
  }};
  for (int row = 0; row < 2; ++row) {
    for (int col = 0; col < 3; ++col) {
      r.residual[row][col] = r.reduced[row][col] - r.exact[row][col];
    }
  }
  return r;
}

double solenoidal_residual(double b_n, double /*b_b*/, const FilamentGeometry& geom,
                           double dbb_ds) {
  return dbb_ds - geom.kappa0 * b_n;
}

}  // namespace filadyn
