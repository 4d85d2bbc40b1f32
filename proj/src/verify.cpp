#include "filadyn/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "filadyn/abc_flow.hpp"
#include "filadyn/error.hpp"
#include "filadyn/geometry.hpp"
#include "filadyn/parallel.hpp"
#include "filadyn/sim.hpp"
#include "filadyn/spectrum.hpp"

namespace filadyn {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kFdStep = 1e-5;

SuiteResult below(std::string name, double worst, double threshold, std::string detail = {}) {
  return {std::move(name), worst < threshold, worst, threshold, std::move(detail)};
}

double max_frame_diff(const FrenetFrame& a, const FrenetFrame& b) {
  return std::max({max_abs(a.t - b.t), max_abs(a.n - b.n), max_abs(a.b - b.b)});
}

FrenetFrame central_difference(const HelixSpec& spec, double s, double h) {
  const FrenetFrame p = helix_frame(spec, s + h).frame;
  const FrenetFrame m = helix_frame(spec, s - h).frame;
  const double inv = 1.0 / (2.0 * h);
  return {(p.t - m.t) * inv, (p.n - m.n) * inv, (p.b - m.b) * inv};
}

SuiteResult frenet_finite_difference(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> size(0.1, 10.0);
  std::uniform_real_distribution<double> arclength(-20.0, 20.0);
  double worst = 0.0;
  for (int helix = 0; helix < 100; ++helix) {
    const HelixSpec spec{size(rng), size(rng)};
    for (int k = 0; k < 10; ++k) {
      const double s = arclength(rng);
      const HelixSample sample = helix_frame(spec, s);
      const FrenetFrame analytic = frenet_derivative(sample.frame, sample.geom);
      worst = std::max(worst, max_frame_diff(analytic, central_difference(spec, s, kFdStep)));
    }
  }
  return below("frenet_finite_difference", worst, 1e-6, "100 helices x 10 arclengths, h = 1e-5");
}

SuiteResult frame_laplacian_audit(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> curvature(0.0, 5.0);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double k = curvature(rng);
    const FrameLaplacianReport equal = frame_laplacian_exact(FilamentGeometry::helical(k));
    worst = std::max(worst, std::fabs(equal.residual[1][1] - k * k) / std::max(1.0, k * k));
    const FrameLaplacianReport planar = frame_laplacian_exact({k, 0.0, false});
    for (double v : planar.residual[0]) worst = std::max(worst, std::fabs(v));
  }
  return below("frame_laplacian_audit", worst, 1e-12,
               "n-row residual equals kappa0^2 at kappa0 = tau0; t-row exact at tau0 = 0");
}

SuiteResult golden_ratio() {
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  const ClosedFormPair pair = paper_closed_form_laminar(-1.0, 1.0);
  const AnosovReference anosov = anosov_reference();
  const double worst = std::max({std::fabs(pair.stretching - phi),
                                 std::fabs(pair.squeezing - (1.0 - std::sqrt(5.0)) / 2.0),
                                 std::fabs(phi * phi - anosov.expanding)});
  return below("golden_ratio_branch", worst, 1e-12);
}

SuiteResult oscillatory_branch(const VerifyOptions& o) {
  PlasmaParams params;
  params.flow.v_s = -1.0;
  const DynamoMatrix m = build_matrix(FilamentGeometry::helical(1.0), params, CoefficientScheme::Eq18);
  const Spectrum s = characteristic_roots(m);
  double worst = std::max(std::abs(s.gamma_plus - std::complex<double>(0.0, 1.0)),
                          std::abs(s.gamma_minus - std::complex<double>(0.0, -1.0)));

  const Trajectory traj = integrate(m, {1.0, 0.0}, 100.0, o.dt);
  double drift = 0.0;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    drift = std::max(drift, std::fabs(std::exp(traj.log_norm(i)) - 1.0));
  }
  const GrowthRateFit fit = fit_growth_rate(traj);
  const double freq = std::fabs(fit.im_gamma - 1.0);

  std::ostringstream detail;
  detail << "roots " << worst << " (1e-12), norm drift " << drift << " (1e-5), frequency "
         << freq << " (1e-4)";
  const bool ok = worst < 1e-12 && drift < 1e-5 && freq < 1e-4;
  return {"oscillatory_branch", ok, std::max({worst / 1e-12, drift / 1e-5, freq / 1e-4}), 1.0,
          detail.str()};
}

SuiteResult degenerate_branch_suite(const VerifyOptions& o) {
  constexpr int kCount = 100;
  std::vector<double> spectral(kCount);
  std::vector<double> temporal(kCount);
  parallel_for(kCount, o.threads, [&](std::size_t i) {
    const double k = 0.01 * std::pow(1000.0, static_cast<double>(i) / (kCount - 1));
    const DegenerateBranch br = degenerate_branch(k);
    const Quadratic q = laminar_characteristic(br.alpha_lambda, k);
    const Spectrum s = solve_quadratic(q);
    double err = std::max({std::fabs(q.discriminant()),
                           std::abs(s.gamma_plus - br.gamma), std::abs(s.gamma_minus - br.gamma),
                           std::fabs(br.gamma - k)});
    const ModeClass fast{GrowthClass::Fast, false, true};
    if (!(s.classification == fast)) err = HUGE_VAL;
    spectral[i] = err;

    const SimOptions sim{o.t_end, o.dt, {1.0, 0.5}};
    temporal[i] = cross_check(degenerate_branch_matrix(k), s, sim).re_residual;
  });
  const double ws = *std::max_element(spectral.begin(), spectral.end());
  const double wt = *std::max_element(temporal.begin(), temporal.end());
  std::ostringstream detail;
  detail << "spectral " << ws << " (1e-10), temporal " << wt << " (1e-4)";
  return {"degenerate_branch", ws < 1e-10 && wt < 1e-4, std::max(ws / 1e-10, wt / 1e-4), 1.0,
          detail.str()};
}

struct Draw {
  double kappa0, alpha_lambda, beta, v_s;
};

SuiteResult oracle_sweep(const VerifyOptions& o, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> kappa(0.1, 5.0);
  std::uniform_real_distribution<double> al(-5.0, 5.0);
  std::uniform_real_distribution<double> beta(0.0, 1.0);
  std::uniform_real_distribution<double> vs(-2.0, 2.0);
  std::vector<Draw> draws(static_cast<std::size_t>(std::max(o.draws, 0)));
  for (Draw& d : draws) d = {kappa(rng), al(rng), beta(rng), vs(rng)};

  std::vector<double> residual(draws.size());
  parallel_for(draws.size(), o.threads, [&](std::size_t i) {
    const Draw& d = draws[i];
    PlasmaParams p;
    p.alpha = d.alpha_lambda;
    p.lambda_exp = 1.0;
    p.beta = d.beta;
    p.flow.v_s = d.v_s;
    const std::optional<CoefficientScheme> temporal =
        o.inject_scheme_mismatch ? std::optional(CoefficientScheme::Eq13_14) : std::nullopt;
    const CrossCheckReport r = cross_check({d.kappa0, d.kappa0, true}, p, CoefficientScheme::Eq18,
                                           {o.t_end, o.dt, {1.0, 0.5}}, temporal);
    residual[i] = std::max(r.re_residual, r.im_residual.value_or(0.0));
    if (!r.fit.valid()) residual[i] = HUGE_VAL;
  });
  const double worst = residual.empty() ? 0.0 : *std::max_element(residual.begin(), residual.end());
  std::ostringstream detail;
  detail << draws.size() << " draws, scheme eq18"
         << (o.inject_scheme_mismatch ? ", temporal side eq13_14 (fault injected)" : "");
  return below("spectral_temporal_oracle", worst, kCrossCheckTolerance, detail.str());
}

SuiteResult rk4_order(const VerifyOptions& o, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> entry(-1.0, 1.0);
  double worst = HUGE_VAL;
  for (int i = 0; i < 20; ++i) {
    const DynamoMatrix m = DynamoMatrix::from_rows(entry(rng), entry(rng), entry(rng), entry(rng));
    const FieldState b0{1.0, 0.5};
    const double t_end = 1.0;
    const FieldState exact = propagate(matrix_exponential(m, t_end), b0);
    auto error = [&](double dt) {
      const Trajectory traj = integrate(m, b0, t_end, dt);
      const FieldState x = traj.physical(traj.size() - 1);
      return std::hypot(x.b_n - exact.b_n, x.b_b - exact.b_b);
    };
    worst = std::min(worst, error(o.order_dt) / error(o.order_dt / 2.0));
  }
  std::ostringstream detail;
  detail << "20 matrices, dt " << o.order_dt << " vs " << o.order_dt / 2.0;
  return {"rk4_order", worst >= 12.0, worst, 12.0, detail.str()};
}

Vec3 partial(const ABCParams& p, Vec3 x, int axis) {
  Vec3 plus = x;
  Vec3 minus = x;
  (axis == 0 ? plus.x : axis == 1 ? plus.y : plus.z) += kFdStep;
  (axis == 0 ? minus.x : axis == 1 ? minus.y : minus.z) -= kFdStep;
  return (abc_velocity_standard(p, plus) - abc_velocity_standard(p, minus)) * (0.5 / kFdStep);
}

SuiteResult abc_equivalence(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> amp(-2.0, 2.0);
  std::uniform_real_distribution<double> coord(-2.0 * kPi, 2.0 * kPi);
  double reflection = 0.0;
  double imag = 0.0;
  double divergence = 0.0;
  double beltrami = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const ABCParams p{amp(rng), amp(rng), amp(rng)};
    const Vec3 x{coord(rng), coord(rng), coord(rng)};
    const ComplexFormValue paper = abc_velocity_paper(p, x);
    reflection = std::max(reflection, max_abs(paper.velocity - 2.0 * abc_velocity_standard(p, -x)));
    imag = std::max(imag, paper.imag_residual);

    const Vec3 dx = partial(p, x, 0);
    const Vec3 dy = partial(p, x, 1);
    const Vec3 dz = partial(p, x, 2);
    divergence = std::max(divergence, std::fabs(dx.x + dy.y + dz.z));
    const Vec3 curl{dy.z - dz.y, dz.x - dx.z, dx.y - dy.x};
    beltrami = std::max(beltrami, norm(curl - abc_velocity_standard(p, x)));
  }
  std::ostringstream detail;
  detail << "reflection " << reflection << " (1e-12), imaginary " << imag << " (1e-13), divergence "
         << divergence << " (1e-6), beltrami " << beltrami << " (1e-5)";
  const bool ok = reflection < 1e-12 && imag < 1e-13 && divergence < 1e-6 && beltrami < 1e-5;
  return {"abc_form_equivalence", ok,
          std::max({reflection / 1e-12, imag / 1e-13, divergence / 1e-6, beltrami / 1e-5}), 1.0,
          detail.str()};
}

SuiteResult tube_marginality() {
  double worst = 0.0;
  bool ok = true;
  for (int i = 0; i < 10; ++i) {
    for (int j = 0; j < 10; ++j) {
      const TubePoint tp{0.1 + 0.2 * i, 0.0, 0.1 + 0.3 * j, 1.0};
      const TubeField field{0.0, 1.0 + 0.1 * j};
      const TubeGrowthResult ideal = tube_growth_rate(field, tp, 0.0);
      ok = ok && ideal.classification == TubeGrowthClass::Marginal && ideal.gamma == 0.0;
      worst = std::max(worst, ideal.constraint_residual);
      const TubeSystemResidual sys = tube_system_residual(0.0, *ideal.constrained, tp, 1.3, -0.7);
      worst = std::max({worst, std::fabs(sys.toroidal), std::fabs(sys.poloidal_sin),
                        std::fabs(sys.poloidal_cos)});
      ok = ok && tube_growth_rate(field, tp, 0.01).classification == TubeGrowthClass::SlowCandidate;
    }
  }
  return {"tube_marginality", ok && worst < 1e-12, worst, 1e-12,
          "10 x 10 (r, theta) grid; eta > 0 gives SLOW_CANDIDATE"};
}

SuiteResult laminar19_inconsistency() {
  PlasmaParams p;
  p.alpha = -1.0;
  p.flow.v_s = -1.0;
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  const PaperMatrixResidual r =
      paper_matrix_residual(FilamentGeometry::helical(1.0), p, PaperVariant::Laminar19, phi);
  const double det = std::abs(r.printed_determinant);
  std::ostringstream detail;
  detail << "|det| of the printed laminar matrix at (1+sqrt5)/2 is " << det
         << "; a nonzero value means the inconsistency is detected";
  return {"laminar19_inconsistency_detected", det > 1e-6, det, 1e-6, detail.str()};
}

}  // namespace

std::vector<SuiteResult> run_verification(const VerifyOptions& options) {
  if (!(options.dt > 0.0) || !(options.t_end >= options.dt) || !(options.order_dt > 0.0)) {
    fail(ErrorCode::InvalidArgument, "verification steps must be positive with t_end >= dt");
  }
  std::mt19937_64 rng(options.seed);
  std::vector<SuiteResult> out;
  out.push_back(frenet_finite_difference(rng));
  out.push_back(frame_laplacian_audit(rng));
  out.push_back(golden_ratio());
  out.push_back(oscillatory_branch(options));
  out.push_back(degenerate_branch_suite(options));
  out.push_back(oracle_sweep(options, rng));
  out.push_back(rk4_order(options, rng));
  out.push_back(abc_equivalence(rng));
  out.push_back(tube_marginality());
  out.push_back(laminar19_inconsistency());
  return out;
}

}  // namespace filadyn
