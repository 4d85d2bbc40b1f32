#include "filadyn/sim.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

#include <Eigen/Dense>

#include "filadyn/error.hpp"

namespace filadyn {

namespace {

constexpr double kUpperRenorm = 1e100;
constexpr double kLowerRenorm = 1e-100;
constexpr double kVanishingNorm = 1e-300;
constexpr double kFixedDirectionSpread = 1e-8;

double norm(FieldState x) { return std::hypot(x.b_n, x.b_b); }

FieldState mul(const DynamoMatrix& m, FieldState x) {
  return {m.m11 * x.b_n + m.m12 * x.b_b, m.m21 * x.b_n + m.m22 * x.b_b};
}

FieldState axpy(FieldState x, double h, FieldState k) { return {x.b_n + h * k.b_n, x.b_b + h * k.b_b}; }

FieldState rk4_step(const DynamoMatrix& m, FieldState x, double h) {
  const FieldState k1 = mul(m, x);
  const FieldState k2 = mul(m, axpy(x, 0.5 * h, k1));
  const FieldState k3 = mul(m, axpy(x, 0.5 * h, k2));
  const FieldState k4 = mul(m, axpy(x, h, k3));
  return {x.b_n + h / 6.0 * (k1.b_n + 2.0 * k2.b_n + 2.0 * k3.b_n + k4.b_n),
          x.b_b + h / 6.0 * (k1.b_b + 2.0 * k2.b_b + 2.0 * k3.b_b + k4.b_b)};
}

// sinh(x)/x and sin(x)/x without cancellation near zero.
double sinhc(double x) { return std::fabs(x) < 1e-4 ? 1.0 + x * x / 6.0 : std::sinh(x) / x; }
double sinc(double x) { return std::fabs(x) < 1e-4 ? 1.0 - x * x / 6.0 : std::sin(x) / x; }

}  // namespace

double Trajectory::log_norm(std::size_t i) const {
  return std::log(norm(states.at(i))) + log_scale.at(i);
}

FieldState Trajectory::physical(std::size_t i) const {
  const double s = std::exp(log_scale.at(i));
  return {states.at(i).b_n * s, states.at(i).b_b * s};
}

Trajectory integrate(const DynamoMatrix& m, FieldState b0, double t_end, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) fail(ErrorCode::InvalidArgument, "dt must be positive");
  if (!(t_end >= dt) || !std::isfinite(t_end)) {
    fail(ErrorCode::InvalidArgument, "t_end must be finite and at least dt");
  }
  if (b0.b_n == 0.0 && b0.b_b == 0.0) {
    fail(ErrorCode::InvalidArgument, "initial field must be nonzero");
  }

  const double ratio = t_end / dt;
  const double nearest = std::round(ratio);
  const auto steps = static_cast<std::size_t>(
      std::fabs(ratio - nearest) <= 1e-9 * ratio ? nearest : std::ceil(ratio));
  const double h = t_end / static_cast<double>(steps);

  Trajectory traj;
  traj.times.reserve(steps + 1);
  traj.states.reserve(steps + 1);
  traj.log_scale.reserve(steps + 1);

  FieldState x = b0;
  double log_scale = 0.0;
  traj.times.push_back(0.0);
  traj.states.push_back(x);
  traj.log_scale.push_back(log_scale);
  for (std::size_t i = 1; i <= steps; ++i) {
    x = rk4_step(m, x, h);
    const double nx = norm(x);
    if (std::isfinite(nx) && nx > 0.0 && (nx > kUpperRenorm || nx < kLowerRenorm)) {
      x = {x.b_n / nx, x.b_b / nx};
      log_scale += std::log(nx);
    }
    traj.times.push_back(i == steps ? t_end : static_cast<double>(i) * h);
    traj.states.push_back(x);
    traj.log_scale.push_back(log_scale);
  }
  return traj;
}

Matrix2 matrix_exponential(const DynamoMatrix& m, double t) {
  // M = s I + N with N traceless, N^2 = q I.
  const double s = 0.5 * m.trace();
  const double n11 = m.m11 - s;
  const double n22 = m.m22 - s;
  const double q = n11 * n11 + m.m12 * m.m21;
  const double d = std::sqrt(std::fabs(q)) * t;

  double c = 1.0;
  double f = t;  // multiplies N
  if (q > 0.0) {
    c = std::cosh(d);
    f = t * sinhc(d);
  } else if (q < 0.0) {
    c = std::cos(d);
    f = t * sinc(d);
  }
  const double e = std::exp(s * t);
  return {{{e * (c + f * n11), e * f * m.m12}, {e * f * m.m21, e * (c + f * n22)}}};
}

FieldState propagate(const Matrix2& p, FieldState x) {
  return {p[0][0] * x.b_n + p[0][1] * x.b_b, p[1][0] * x.b_n + p[1][1] * x.b_b};
}

GrowthRateFit fit_growth_rate(const Trajectory& traj) {
  const std::size_t n = traj.size();
  if (n < 10 || traj.states.size() != n || traj.log_scale.size() != n) {
    fail(ErrorCode::InvalidArgument, "growth-rate fit needs at least 10 consistent samples");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!(norm(traj.states[i]) >= kVanishingNorm)) {
      std::ostringstream msg;
      msg << "field norm vanished at t = " << traj.times[i];
      fail(ErrorCode::DegenerateFit, msg.str());
    }
  }

  const auto first = static_cast<std::size_t>(std::floor(kTransientFraction * static_cast<double>(n)));
  const std::size_t count = n - first;

  std::vector<double> logn(count);
  const double log0 = traj.log_norm(first);
  for (std::size_t i = 0; i < count; ++i) logn[i] = traj.log_norm(first + i) - log0;

  // Least-squares line through (t, log|B|).
  double t_mean = 0.0;
  double l_mean = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    t_mean += traj.times[first + i];
    l_mean += logn[i];
  }
  t_mean /= static_cast<double>(count);
  l_mean /= static_cast<double>(count);
  double stt = 0.0;
  double stl = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const double dt = traj.times[first + i] - t_mean;
    stt += dt * dt;
    stl += dt * (logn[i] - l_mean);
  }
  const double slope = stl / stt;
  double sq = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const double dev = logn[i] - (l_mean + slope * (traj.times[first + i] - t_mean));
    sq += dev * dev;
  }

  GrowthRateFit fit;
  fit.log_norm_slope = slope;
  fit.re_gamma = slope;
  fit.im_gamma = 0.0;
  fit.fit_residual = std::sqrt(sq / static_cast<double>(count));
  fit.method = FitMethod::LogNormSlope;

  auto unit = [&](std::size_t i) {
    const FieldState x = traj.states[i];
    const double nx = norm(x);
    return Eigen::Vector2d(x.b_n / nx, x.b_b / nx);
  };
  const Eigen::Vector2d last = unit(n - 1);
  double spread = 0.0;
  for (std::size_t i = first; i < n; ++i) {
    const Eigen::Vector2d u = unit(i);
    spread = std::max(spread, std::fabs(u.x() * last.y() - u.y() * last.x()));
  }
  if (spread < kFixedDirectionSpread) return fit;

  // One-step propagator P with x_{k+1} = P x_k, fitted on unit-normalized pairs.
  const auto pairs = static_cast<Eigen::Index>(count - 1);
  Eigen::MatrixX2d xs(pairs, 2);
  Eigen::MatrixX2d ys(pairs, 2);
  for (Eigen::Index k = 0; k < pairs; ++k) {
    const std::size_t i = first + static_cast<std::size_t>(k);
    xs.row(k) = unit(i).transpose();
    ys.row(k) = unit(i + 1).transpose() * std::exp(logn[k + 1] - logn[k]);
  }
  const Eigen::ColPivHouseholderQR<Eigen::MatrixX2d> qr(xs);
  if (qr.rank() < 2) return fit;
  const Eigen::Matrix2d pt = qr.solve(ys);
  const Eigen::Matrix2d p = pt.transpose();

  const double h = traj.times[first + 1] - traj.times[first];
  const Eigen::EigenSolver<Eigen::Matrix2d> eig(p);
  std::complex<double> best{-HUGE_VAL, 0.0};
  for (int j = 0; j < 2; ++j) {
    const std::complex<double> g = std::log(eig.eigenvalues()[j]) / h;
    if (g.real() > best.real()) best = g;
  }
  fit.re_gamma = best.real();
  fit.im_gamma = std::fabs(best.imag());
  fit.fit_residual = std::sqrt((ys - xs * pt).rowwise().squaredNorm().mean());
  fit.method = FitMethod::Propagator;
  return fit;
}

CrossCheckReport cross_check(const DynamoMatrix& temporal, const Spectrum& reference,
                             const SimOptions& options) {
  CrossCheckReport r;
  r.spectrum = reference;
  r.fit = fit_growth_rate(integrate(temporal, options.b0, options.t_end, options.dt));
  r.re_residual = std::fabs(r.fit.re_gamma - reference.gamma_plus.real());
  if (reference.discriminant < 0.0) {
    r.im_residual = std::fabs(r.fit.im_gamma - std::fabs(reference.gamma_plus.imag()));
  }
  r.passed = r.fit.valid() && r.re_residual < kCrossCheckTolerance &&
             (!r.im_residual || *r.im_residual < kCrossCheckTolerance);
  return r;
}

CrossCheckReport cross_check(const FilamentGeometry& geom, const PlasmaParams& params,
                             CoefficientScheme scheme, const SimOptions& options,
                             std::optional<CoefficientScheme> temporal_scheme) {
  const DynamoMatrix spectral = build_matrix(geom, params, scheme);
  const DynamoMatrix temporal =
      temporal_scheme ? build_matrix(geom, params, *temporal_scheme) : spectral;
  return cross_check(temporal, characteristic_roots(spectral), options);
}

}  // namespace filadyn
