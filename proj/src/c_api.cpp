#include "filadyn/filadyn.h"

#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <string>

#include "filadyn/abc_flow.hpp"
#include "filadyn/dynamo_operator.hpp"
#include "filadyn/error.hpp"
#include "filadyn/flow.hpp"
#include "filadyn/geometry.hpp"
#include "filadyn/sim.hpp"
#include "filadyn/spectrum.hpp"
#include "filadyn/verify.hpp"

using namespace filadyn;

struct fd_model {
  FilamentGeometry geom;
  PlasmaParams params;
  CoefficientScheme scheme = CoefficientScheme::Eq18;
};

struct fd_trajectory {
  Trajectory traj;
};

struct fd_verify_report {
  std::vector<SuiteResult> suites;
};

namespace {

thread_local std::string last_error;

fd_status to_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument:
      return FD_ERR_INVALID_ARGUMENT;
    case ErrorCode::Domain:
      return FD_ERR_DOMAIN;
    case ErrorCode::ValidityCondition:
      return FD_ERR_VALIDITY_CONDITION;
    case ErrorCode::NonConvergence:
      return FD_ERR_NONCONVERGENCE;
    case ErrorCode::DegenerateFit:
      return FD_ERR_DEGENERATE_FIT;
    case ErrorCode::Transcription:
      return FD_ERR_TRANSCRIPTION;
  }
  return FD_ERR_INTERNAL;
}

// Runs fn, translating exceptions into status codes and the thread's message.
template <class Fn>
fd_status guarded(Fn&& fn) {
  try {
    fn();
    last_error.clear();
    return FD_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return FD_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return FD_ERR_INTERNAL;
  }
}

fd_status null_pointer() {
  last_error = "null pointer argument";
  return FD_ERR_NULL_POINTER;
}

template <class... Ptr>
bool any_null(const Ptr*... p) {
  return ((p == nullptr) || ...);
}

fd_complex to_c(std::complex<double> z) { return {z.real(), z.imag()}; }
fd_vec3 to_c(const Vec3& v) { return {v.x, v.y, v.z}; }
Vec3 from_c(const fd_vec3& v) { return {v.x, v.y, v.z}; }
fd_frame to_c(const FrenetFrame& f) { return {to_c(f.t), to_c(f.n), to_c(f.b)}; }
FrenetFrame from_c(const fd_frame& f) { return {from_c(f.t), from_c(f.n), from_c(f.b)}; }
ABCParams from_c(const fd_abc& p) { return {p.A, p.B, p.C}; }
TubePoint from_c(const fd_tube_point& p) { return {p.r, p.s, p.theta0, p.tau0}; }

fd_scheme to_c(std::optional<CoefficientScheme> s) {
  if (!s) return FD_SCHEME_NONE;
  switch (*s) {
    case CoefficientScheme::Eq13_14:
      return FD_SCHEME_EQ13_14;
    case CoefficientScheme::Eq18:
      return FD_SCHEME_EQ18;
    case CoefficientScheme::Eq24ZeroHelicity:
      return FD_SCHEME_EQ24;
    case CoefficientScheme::Exact:
      return FD_SCHEME_EXACT;
  }
  return FD_SCHEME_NONE;
}

std::optional<CoefficientScheme> from_c(fd_scheme s) {
  switch (s) {
    case FD_SCHEME_EQ13_14:
      return CoefficientScheme::Eq13_14;
    case FD_SCHEME_EQ18:
      return CoefficientScheme::Eq18;
    case FD_SCHEME_EQ24:
      return CoefficientScheme::Eq24ZeroHelicity;
    case FD_SCHEME_EXACT:
      return CoefficientScheme::Exact;
    case FD_SCHEME_NONE:
      break;
  }
  return std::nullopt;
}

CoefficientScheme require_scheme(fd_scheme s) {
  const auto scheme = from_c(s);
  if (!scheme) fail(ErrorCode::InvalidArgument, "unknown coefficient scheme");
  return *scheme;
}

fd_matrix to_c(const DynamoMatrix& m) { return {m.m11, m.m12, m.m21, m.m22, to_c(m.scheme)}; }
DynamoMatrix from_c(const fd_matrix& m) { return {m.m11, m.m12, m.m21, m.m22, from_c(m.scheme)}; }

unsigned to_c(const ModeClass& c) {
  unsigned bits = 0;
  switch (c.growth) {
    case GrowthClass::Fast:
      bits = FD_MODE_FAST;
      break;
    case GrowthClass::Slow:
      bits = FD_MODE_SLOW;
      break;
    case GrowthClass::Marginal:
      bits = FD_MODE_MARGINAL;
      break;
    case GrowthClass::Decaying:
      bits = FD_MODE_DECAYING;
      break;
  }
  if (c.oscillatory) bits |= FD_MODE_OSCILLATORY;
  if (c.degenerate) bits |= FD_MODE_DEGENERATE;
  return bits;
}

ModeClass mode_from_c(unsigned bits) {
  ModeClass c;
  if (bits & FD_MODE_FAST) c.growth = GrowthClass::Fast;
  else if (bits & FD_MODE_SLOW) c.growth = GrowthClass::Slow;
  else if (bits & FD_MODE_DECAYING) c.growth = GrowthClass::Decaying;
  else c.growth = GrowthClass::Marginal;
  c.oscillatory = (bits & FD_MODE_OSCILLATORY) != 0;
  c.degenerate = (bits & FD_MODE_DEGENERATE) != 0;
  return c;
}

fd_spectrum to_c(const Spectrum& s) {
  return {to_c(s.gamma_plus), to_c(s.gamma_minus), s.discriminant, to_c(s.classification)};
}

Spectrum from_c(const fd_spectrum& s) {
  return {{s.gamma_plus.re, s.gamma_plus.im},
          {s.gamma_minus.re, s.gamma_minus.im},
          s.discriminant,
          mode_from_c(s.classification)};
}

fd_growth_fit to_c(const GrowthRateFit& f) {
  return {f.re_gamma, f.im_gamma, f.fit_residual, f.log_norm_slope,
          f.method == FitMethod::Propagator ? 1 : 0, f.valid() ? 1 : 0};
}

fd_cross_check to_c(const CrossCheckReport& r) {
  return {to_c(r.spectrum), to_c(r.fit), r.re_residual, r.im_residual ? 1 : 0,
          r.im_residual.value_or(0.0), r.passed ? 1 : 0};
}

SimOptions from_c(const fd_sim_options& o) { return {o.t_end, o.dt, {o.b0_n, o.b0_b}}; }

template <std::size_t N>
void copy_rows(const std::array<std::array<double, N>, N>& in, double (*out)[N]) {
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t j = 0; j < N; ++j) out[i][j] = in[i][j];
  }
}

}  // namespace

extern "C" {

const char* fd_version(void) { return FD_VERSION_STRING; }

const char* fd_status_string(fd_status status) {
  switch (status) {
    case FD_OK:
      return "ok";
    case FD_ERR_INVALID_ARGUMENT:
      return "invalid argument";
    case FD_ERR_DOMAIN:
      return "numeric domain error";
    case FD_ERR_VALIDITY_CONDITION:
      return "validity condition violated";
    case FD_ERR_NONCONVERGENCE:
      return "non-convergence";
    case FD_ERR_DEGENERATE_FIT:
      return "degenerate fit";
    case FD_ERR_TRANSCRIPTION:
      return "transcription check failed";
    case FD_ERR_NULL_POINTER:
      return "null pointer";
    case FD_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

const char* fd_last_error(void) { return last_error.c_str(); }

size_t fd_mode_string(unsigned classification, char* buf, size_t len) {
  const std::string s = to_string(mode_from_c(classification));
  if (buf != nullptr && len > 0) {
    const std::size_t n = std::min(len - 1, s.size());
    std::memcpy(buf, s.data(), n);
    buf[n] = '\0';
  }
  return s.size();
}

const char* fd_scheme_string(fd_scheme scheme) {
  const auto s = from_c(scheme);
  return s ? to_string(*s).data() : "none";
}

fd_status fd_scheme_parse(const char* text, fd_scheme* out) {
  if (any_null(text, out)) return null_pointer();
  return guarded([&] {
    const auto s = parse_scheme(text);
    if (!s) fail(ErrorCode::InvalidArgument, std::string("unknown scheme '") + text + "'");
    *out = to_c(s);
  });
}

fd_status fd_frenet_derivative(const fd_frame* frame, double kappa0, double tau0,
                               fd_frame* derivative) {
  if (any_null(frame, derivative)) return null_pointer();
  return guarded([&] {
    *derivative = to_c(frenet_derivative(from_c(*frame), {kappa0, tau0, false}));
  });
}

fd_status fd_helix_frame(double a, double b_pitch, double s, fd_vec3* point, fd_frame* frame,
                         double* kappa, double* tau) {
  if (any_null(point, frame, kappa, tau)) return null_pointer();
  return guarded([&] {
    const HelixSample h = helix_frame({a, b_pitch}, s);
    *point = to_c(h.point);
    *frame = to_c(h.frame);
    *kappa = h.geom.kappa0;
    *tau = h.geom.tau0;
  });
}

fd_status fd_frame_laplacian(double kappa0, double tau0, fd_laplacian_report* out) {
  if (any_null(out)) return null_pointer();
  return guarded([&] {
    const FrameLaplacianReport r = frame_laplacian_exact({kappa0, tau0, false});
    copy_rows(r.exact, out->exact);
    copy_rows(r.reduced, out->reduced);
    copy_rows(r.residual, out->residual);
  });
}

fd_status fd_solenoidal_residual(double b_n, double b_b, double kappa0, double dbb_ds,
                                 double* out) {
  if (any_null(out)) return null_pointer();
  return guarded([&] { *out = solenoidal_residual(b_n, b_b, {kappa0, 0.0, false}, dbb_ds); });
}

fd_status fd_alpha_helicity(double kappa0, double v_n_meansq, double* alpha) {
  if (any_null(alpha)) return null_pointer();
  return guarded([&] { *alpha = alpha_helicity({kappa0, 0.0, false}, {0.0, 0.0, v_n_meansq}); });
}

double fd_binormal_transfer(double b_n, double v_s) {
  return binormal_transfer(b_n, {v_s, 0.0, 0.0});
}

fd_status fd_model_create(fd_model** out) {
  if (any_null(out)) return null_pointer();
  return guarded([&] { *out = new fd_model(); });
}

void fd_model_destroy(fd_model* model) { delete model; }

fd_status fd_model_set_geometry(fd_model* model, double kappa0, double tau0,
                                int helical_equipartition) {
  if (any_null(model)) return null_pointer();
  return guarded([&] {
    const FilamentGeometry g{kappa0, tau0, helical_equipartition != 0};
    validate(g);
    model->geom = g;
  });
}

fd_status fd_model_set_flow(fd_model* model, double v_s, double v_n, double v_n_meansq) {
  if (any_null(model)) return null_pointer();
  return guarded([&] {
    const FlowProfile f{v_s, v_n, v_n_meansq};
    validate(f);
    model->params.flow = f;
  });
}

fd_status fd_model_set_plasma(fd_model* model, double alpha, double beta, double lambda_exp,
                              double eta) {
  if (any_null(model)) return null_pointer();
  return guarded([&] {
    PlasmaParams p = model->params;
    p.alpha = alpha;
    p.beta = beta;
    p.lambda_exp = lambda_exp;
    p.eta = eta;
    validate(p);
    model->params = p;
  });
}

fd_status fd_model_set_scheme(fd_model* model, fd_scheme scheme) {
  if (any_null(model)) return null_pointer();
  return guarded([&] { model->scheme = require_scheme(scheme); });
}

fd_status fd_model_build_matrix(const fd_model* model, fd_matrix* out) {
  if (any_null(model, out)) return null_pointer();
  return guarded([&] { *out = to_c(build_matrix(model->geom, model->params, model->scheme)); });
}

fd_status fd_model_spectrum(const fd_model* model, fd_spectrum* out) {
  if (any_null(model, out)) return null_pointer();
  return guarded([&] {
    Spectrum s = characteristic_roots(build_matrix(model->geom, model->params, model->scheme));
    PlasmaParams ideal = model->params;
    ideal.beta = 0.0;
    const Spectrum limit = characteristic_roots(build_matrix(model->geom, ideal, model->scheme));
    s.classification = classify_point(s, limit);
    *out = to_c(s);
  });
}

fd_status fd_model_classify(const fd_model* model, unsigned* classification) {
  if (any_null(model, classification)) return null_pointer();
  return guarded([&] {
    const fd_model m = *model;
    *classification = to_c(classify([&m](double beta) {
      PlasmaParams p = m.params;
      p.beta = beta;
      return characteristic_roots(build_matrix(m.geom, p, m.scheme));
    }));
  });
}

fd_status fd_model_paper_matrix(const fd_model* model, fd_paper_variant variant,
                                fd_complex gamma, fd_paper_matrix_report* out) {
  if (any_null(model, out)) return null_pointer();
  return guarded([&] {
    if (variant < FD_PAPER_GENERAL_18 || variant > FD_PAPER_LIMIT_25) {
      fail(ErrorCode::InvalidArgument, "unknown paper matrix variant");
    }
    const PaperMatrixResidual r =
        paper_matrix_residual(model->geom, model->params, static_cast<PaperVariant>(variant),
                              {gamma.re, gamma.im});
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        out->printed[i][j] = to_c(r.printed[i][j]);
        out->corrected[i][j] = to_c(r.corrected[i][j]);
      }
    }
    out->printed_determinant = to_c(r.printed_determinant);
    out->corrected_determinant = to_c(r.corrected_determinant);
    out->max_entry_difference = r.max_entry_difference;
  });
}

fd_status fd_characteristic_roots(const fd_matrix* m, fd_spectrum* out) {
  if (any_null(m, out)) return null_pointer();
  return guarded([&] { *out = to_c(characteristic_roots(from_c(*m))); });
}

fd_status fd_quadratic_roots(double a, double b, double c, fd_spectrum* out) {
  if (any_null(out)) return null_pointer();
  return guarded([&] { *out = to_c(solve_quadratic({a, b, c})); });
}

fd_status fd_laminar_spectrum(double alpha_lambda, double kappa0, fd_spectrum* out) {
  if (any_null(out)) return null_pointer();
  return guarded([&] { *out = to_c(solve_quadratic(laminar_characteristic(alpha_lambda, kappa0))); });
}

fd_status fd_closed_form_laminar(double alpha_lambda, double kappa0, double* stretching,
                                 double* squeezing) {
  if (any_null(stretching, squeezing)) return null_pointer();
  return guarded([&] {
    const ClosedFormPair p = paper_closed_form_laminar(alpha_lambda, kappa0);
    *stretching = p.stretching;
    *squeezing = p.squeezing;
  });
}

fd_status fd_degenerate_branch(double kappa0, double* alpha_lambda, double* gamma) {
  if (any_null(alpha_lambda, gamma)) return null_pointer();
  return guarded([&] {
    const DegenerateBranch b = degenerate_branch(kappa0);
    *alpha_lambda = b.alpha_lambda;
    *gamma = b.gamma;
  });
}

fd_status fd_degenerate_branch_matrix(double kappa0, fd_matrix* out) {
  if (any_null(out)) return null_pointer();
  return guarded([&] { *out = to_c(degenerate_branch_matrix(kappa0)); });
}

void fd_anosov_reference(double* expanding, double* contracting) {
  const AnosovReference r = anosov_reference();
  if (expanding) *expanding = r.expanding;
  if (contracting) *contracting = r.contracting;
}

void fd_anosov_curvature_scaled(double kappa, double* first, double* second) {
  const auto [a, b] = curvature_scaled_anosov(kappa);
  if (first) *first = a;
  if (second) *second = b;
}

unsigned fd_classify_point(const fd_spectrum* at, const fd_spectrum* limit) {
  if (at == nullptr || limit == nullptr) return 0;
  return to_c(classify_point(from_c(*at), from_c(*limit)));
}

fd_status fd_abc_velocity_paper(const fd_abc* p, fd_vec3 x, fd_vec3* out, double* imag_residual) {
  if (any_null(p, out)) return null_pointer();
  return guarded([&] {
    const ComplexFormValue v = abc_velocity_paper(from_c(*p), from_c(x));
    *out = to_c(v.velocity);
    if (imag_residual) *imag_residual = v.imag_residual;
  });
}

fd_status fd_abc_velocity_standard(const fd_abc* p, fd_vec3 x, fd_vec3* out) {
  if (any_null(p, out)) return null_pointer();
  return guarded([&] { *out = to_c(abc_velocity_standard(from_c(*p), from_c(x))); });
}

fd_status fd_tube_to_cartesian(const fd_tube_point* tp, fd_vec3* out) {
  if (any_null(tp, out)) return null_pointer();
  return guarded([&] { *out = to_c(tube_to_cartesian(from_c(*tp))); });
}

fd_status fd_tube_velocity(const fd_abc* p, const fd_tube_point* tp, fd_radial_bracket bracket,
                           fd_tube_flow* out) {
  if (any_null(p, tp, out)) return null_pointer();
  return guarded([&] {
    const TubeVelocity v =
        tube_velocity(from_c(*p), from_c(*tp),
                      bracket == FD_BRACKET_SYMMETRIC ? RadialBracket::Symmetric
                                                      : RadialBracket::AsPrinted);
    *out = {v.V_s, v.V_r, v.V_r_imag};
  });
}

fd_status fd_axis_radial_flow(double A, double theta, double s, double* out) {
  if (any_null(out)) return null_pointer();
  return guarded([&] { *out = axis_radial_flow(A, theta, s); });
}

fd_status fd_stagnation_classify(const fd_abc* p, fd_stagnation* out) {
  if (any_null(p, out)) return null_pointer();
  return guarded([&] {
    *out = stagnation_classify(from_c(*p)) == StagnationClass::StrongStagnation
               ? FD_STRONG_STAGNATION
               : FD_NO_STAGNATION_CONSTRAINT;
  });
}

fd_status fd_tube_growth_rate(double b_s, double b_theta, const fd_tube_point* tp, double eta,
                              fd_tube_growth* out) {
  if (any_null(tp, out)) return null_pointer();
  return guarded([&] {
    const TubeGrowthResult r = tube_growth_rate({b_s, b_theta}, from_c(*tp), eta);
    fd_tube_growth g{};
    g.classification = static_cast<fd_tube_growth_class>(r.classification);
    g.has_gamma = r.gamma ? 1 : 0;
    g.gamma = r.gamma.value_or(0.0);
    g.has_constraint = r.constrained ? 1 : 0;
    g.b_s_constrained = r.constrained ? r.constrained->B_s : 0.0;
    g.constraint_residual = r.constraint_residual;
    *out = g;
  });
}

fd_status fd_radial_flow_gradient(double A, double theta, double tau0, double s, double* out) {
  if (any_null(out)) return null_pointer();
  return guarded([&] { *out = radial_flow_gradient(A, theta, tau0, s); });
}

fd_sim_options fd_sim_default_options(void) {
  const SimOptions o;
  return {o.t_end, o.dt, o.b0.b_n, o.b0.b_b};
}

fd_status fd_integrate(const fd_matrix* m, double b0_n, double b0_b, double t_end, double dt,
                       fd_trajectory** out) {
  if (any_null(m, out)) return null_pointer();
  return guarded([&] {
    auto t = std::make_unique<fd_trajectory>();
    t->traj = integrate(from_c(*m), {b0_n, b0_b}, t_end, dt);
    *out = t.release();
  });
}

void fd_trajectory_destroy(fd_trajectory* traj) { delete traj; }

size_t fd_trajectory_size(const fd_trajectory* traj) { return traj ? traj->traj.size() : 0; }

fd_status fd_trajectory_sample(const fd_trajectory* traj, size_t i, double* t, double* b_n,
                               double* b_b, double* log_norm) {
  if (any_null(traj)) return null_pointer();
  return guarded([&] {
    if (i >= traj->traj.size()) fail(ErrorCode::InvalidArgument, "sample index out of range");
    const FieldState x = traj->traj.physical(i);
    if (t) *t = traj->traj.times[i];
    if (b_n) *b_n = x.b_n;
    if (b_b) *b_b = x.b_b;
    if (log_norm) *log_norm = traj->traj.log_norm(i);
  });
}

fd_status fd_fit_growth_rate(const fd_trajectory* traj, fd_growth_fit* out) {
  if (any_null(traj, out)) return null_pointer();
  return guarded([&] { *out = to_c(fit_growth_rate(traj->traj)); });
}

fd_status fd_matrix_exponential(const fd_matrix* m, double t, double out[4]) {
  if (any_null(m, out)) return null_pointer();
  return guarded([&] {
    const Matrix2 e = matrix_exponential(from_c(*m), t);
    out[0] = e[0][0];
    out[1] = e[0][1];
    out[2] = e[1][0];
    out[3] = e[1][1];
  });
}

fd_status fd_cross_check_matrix(const fd_matrix* temporal, const fd_spectrum* reference,
                                const fd_sim_options* options, fd_cross_check* out) {
  if (any_null(temporal, reference, options, out)) return null_pointer();
  return guarded([&] {
    *out = to_c(cross_check(from_c(*temporal), from_c(*reference), from_c(*options)));
  });
}

fd_status fd_model_cross_check(const fd_model* model, const fd_sim_options* options,
                               fd_scheme temporal_scheme, fd_cross_check* out) {
  if (any_null(model, options, out)) return null_pointer();
  return guarded([&] {
    *out = to_c(cross_check(model->geom, model->params, model->scheme, from_c(*options),
                            from_c(temporal_scheme)));
  });
}

fd_verify_options fd_verify_default_options(void) {
  const VerifyOptions o;
  return {o.seed, o.dt, o.t_end, o.draws, o.order_dt, o.inject_scheme_mismatch ? 1 : 0, o.threads};
}

fd_status fd_verify_run(const fd_verify_options* options, fd_verify_report** out) {
  if (any_null(options, out)) return null_pointer();
  return guarded([&] {
    VerifyOptions o;
    o.seed = options->seed;
    o.dt = options->dt;
    o.t_end = options->t_end;
    o.draws = options->draws;
    o.order_dt = options->order_dt;
    o.inject_scheme_mismatch = options->inject_scheme_mismatch != 0;
    o.threads = options->threads;
    auto report = std::make_unique<fd_verify_report>();
    report->suites = run_verification(o);
    *out = report.release();
  });
}

void fd_verify_report_destroy(fd_verify_report* report) { delete report; }

size_t fd_verify_report_size(const fd_verify_report* report) {
  return report ? report->suites.size() : 0;
}

fd_status fd_verify_report_suite(const fd_verify_report* report, size_t i, const char** name,
                                 int* passed, double* worst, double* threshold,
                                 const char** detail) {
  if (any_null(report)) return null_pointer();
  return guarded([&] {
    if (i >= report->suites.size()) fail(ErrorCode::InvalidArgument, "suite index out of range");
    const SuiteResult& s = report->suites[i];
    if (name) *name = s.name.c_str();
    if (passed) *passed = s.passed ? 1 : 0;
    if (worst) *worst = s.worst;
    if (threshold) *threshold = s.threshold;
    if (detail) *detail = s.detail.c_str();
  });
}

}  // extern "C"
