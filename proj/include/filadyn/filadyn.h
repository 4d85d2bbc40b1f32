/*
 * filadyn: growth-rate spectra of filamentary kinematic dynamos and ABC flows
 * in twisted flux-tube coordinates.
 *
 * Plain C interface over the C++ core. All functions are reentrant; error
 * messages are kept per thread. Functions returning fd_status leave their
 * outputs untouched on failure.
 */
#ifndef FILADYN_FILADYN_H
#define FILADYN_FILADYN_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(FILADYN_BUILDING)
#    define FD_API __declspec(dllexport)
#  else
#    define FD_API __declspec(dllimport)
#  endif
#else
#  define FD_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

#define FD_VERSION_STRING "0.1.0"

typedef enum fd_status {
  FD_OK = 0,
  FD_ERR_INVALID_ARGUMENT = 1,
  FD_ERR_DOMAIN = 2,             /* singular coordinate or division by zero */
  FD_ERR_VALIDITY_CONDITION = 3, /* closed form used outside its condition */
  FD_ERR_NONCONVERGENCE = 4,
  FD_ERR_DEGENERATE_FIT = 5,
  FD_ERR_TRANSCRIPTION = 6,
  FD_ERR_NULL_POINTER = 7,
  FD_ERR_INTERNAL = 8
} fd_status;

FD_API const char* fd_version(void);
FD_API const char* fd_status_string(fd_status status);
/* Message of the last failure on the calling thread; "" if none. */
FD_API const char* fd_last_error(void);

/* ---------------------------------------------------------------- types -- */

typedef struct fd_complex {
  double re;
  double im;
} fd_complex;

typedef struct fd_vec3 {
  double x, y, z;
} fd_vec3;

typedef struct fd_frame {
  fd_vec3 t, n, b;
} fd_frame;

typedef enum fd_scheme {
  FD_SCHEME_EQ13_14 = 0,
  FD_SCHEME_EQ18 = 1,
  FD_SCHEME_EQ24 = 2, /* zero helicity */
  FD_SCHEME_EXACT = 3,
  FD_SCHEME_NONE = -1 /* matrix not produced by the operator builder */
} fd_scheme;

typedef struct fd_matrix {
  double m11, m12, m21, m22;
  fd_scheme scheme;
} fd_matrix;

/* Mode classification bits. Exactly one growth bit is set. */
enum {
  FD_MODE_FAST = 1u << 0,
  FD_MODE_SLOW = 1u << 1,
  FD_MODE_MARGINAL = 1u << 2,
  FD_MODE_DECAYING = 1u << 3,
  FD_MODE_OSCILLATORY = 1u << 4,
  FD_MODE_DEGENERATE = 1u << 5
};

typedef struct fd_spectrum {
  fd_complex gamma_plus; /* Re gamma_plus >= Re gamma_minus */
  fd_complex gamma_minus;
  double discriminant;
  unsigned classification; /* FD_MODE_* bits */
} fd_spectrum;

/* Writes e.g. "FAST+DEGENERATE" (NUL-terminated, truncated to len). Returns
 * the full length. */
FD_API size_t fd_mode_string(unsigned classification, char* buf, size_t len);
FD_API const char* fd_scheme_string(fd_scheme scheme);
/* Parses "eq13_14", "eq18", "eq24", "exact". */
FD_API fd_status fd_scheme_parse(const char* text, fd_scheme* out);

/* ------------------------------------------------------------- geometry -- */

FD_API fd_status fd_frenet_derivative(const fd_frame* frame, double kappa0, double tau0,
                                      fd_frame* derivative);
FD_API fd_status fd_helix_frame(double a, double b_pitch, double s, fd_vec3* point,
                                fd_frame* frame, double* kappa, double* tau);

typedef struct fd_laplacian_report {
  double exact[3][3];    /* rows t'', n'', b'' in the (t, n, b) basis */
  double reduced[3][3];  /* -kappa0^2 t, -kappa0^2 n; row b unused */
  double residual[3][3]; /* reduced - exact, rows t and n */
} fd_laplacian_report;

FD_API fd_status fd_frame_laplacian(double kappa0, double tau0, fd_laplacian_report* out);
FD_API fd_status fd_solenoidal_residual(double b_n, double b_b, double kappa0, double dbb_ds,
                                        double* out);

/* ----------------------------------------------------------------- flow -- */

FD_API fd_status fd_alpha_helicity(double kappa0, double v_n_meansq, double* alpha);
FD_API double fd_binormal_transfer(double b_n, double v_s);

/* ---------------------------------------------------------------- model -- */

/* Geometry, flow, plasma parameters and scheme of one operator. */
typedef struct fd_model fd_model;

FD_API fd_status fd_model_create(fd_model** out);
FD_API void fd_model_destroy(fd_model* model);
FD_API fd_status fd_model_set_geometry(fd_model* model, double kappa0, double tau0,
                                       int helical_equipartition);
FD_API fd_status fd_model_set_flow(fd_model* model, double v_s, double v_n, double v_n_meansq);
FD_API fd_status fd_model_set_plasma(fd_model* model, double alpha, double beta,
                                     double lambda_exp, double eta);
FD_API fd_status fd_model_set_scheme(fd_model* model, fd_scheme scheme);
FD_API fd_status fd_model_build_matrix(const fd_model* model, fd_matrix* out);
/* Eigenvalues of the model's operator; classification against the beta -> 0 limit. */
FD_API fd_status fd_model_spectrum(const fd_model* model, fd_spectrum* out);
/* Family classification over beta -> 0 (fails on non-monotone sequences). */
FD_API fd_status fd_model_classify(const fd_model* model, unsigned* classification);

typedef enum fd_paper_variant {
  FD_PAPER_GENERAL_18 = 0,
  FD_PAPER_LAMINAR_19 = 1,
  FD_PAPER_TURBULENT_24 = 2,
  FD_PAPER_LIMIT_25 = 3
} fd_paper_variant;

typedef struct fd_paper_matrix_report {
  fd_complex printed[2][2];
  fd_complex corrected[2][2]; /* gamma I - M */
  fd_complex printed_determinant;
  fd_complex corrected_determinant;
  double max_entry_difference;
} fd_paper_matrix_report;

FD_API fd_status fd_model_paper_matrix(const fd_model* model, fd_paper_variant variant,
                                       fd_complex gamma, fd_paper_matrix_report* out);

/* ------------------------------------------------------------- spectrum -- */

FD_API fd_status fd_characteristic_roots(const fd_matrix* m, fd_spectrum* out);
/* Roots of a g^2 + b g + c = 0 (a != 0), discriminant b^2 - 4ac. */
FD_API fd_status fd_quadratic_roots(double a, double b, double c, fd_spectrum* out);
/* Printed laminar quadratic g^2 + al g - (al + k) k. */
FD_API fd_status fd_laminar_spectrum(double alpha_lambda, double kappa0, fd_spectrum* out);
/* al (-1 +- sqrt 5)/2; FD_ERR_VALIDITY_CONDITION unless kappa0 == -al. */
FD_API fd_status fd_closed_form_laminar(double alpha_lambda, double kappa0, double* stretching,
                                        double* squeezing);
FD_API fd_status fd_degenerate_branch(double kappa0, double* alpha_lambda, double* gamma);
FD_API fd_status fd_degenerate_branch_matrix(double kappa0, fd_matrix* out);
/* (3 +- sqrt 5)/2 */
FD_API void fd_anosov_reference(double* expanding, double* contracting);
/* kappa (-1 + sqrt 5)/2, kappa (-1 - sqrt 5)/2 */
FD_API void fd_anosov_curvature_scaled(double kappa, double* first, double* second);
FD_API unsigned fd_classify_point(const fd_spectrum* at, const fd_spectrum* limit);

/* ------------------------------------------------------------------ abc -- */

typedef struct fd_abc {
  double A, B, C;
} fd_abc;

typedef struct fd_tube_point {
  double r, s, theta0, tau0;
} fd_tube_point;

typedef enum fd_radial_bracket {
  FD_BRACKET_AS_PRINTED = 0,
  FD_BRACKET_SYMMETRIC = 1
} fd_radial_bracket;

typedef struct fd_tube_flow {
  double v_s;
  double v_r;
  double v_r_imag;
} fd_tube_flow;

typedef enum fd_stagnation {
  FD_STRONG_STAGNATION = 0,
  FD_NO_STAGNATION_CONSTRAINT = 1
} fd_stagnation;

typedef enum fd_tube_growth_class {
  FD_TUBE_MARGINAL = 0,
  FD_TUBE_TRIVIAL_FIELD = 1,
  FD_TUBE_SLOW_CANDIDATE = 2
} fd_tube_growth_class;

typedef struct fd_tube_growth {
  fd_tube_growth_class classification;
  int has_gamma;
  double gamma;
  int has_constraint;
  double b_s_constrained; /* B_theta / (tau0 r^2) */
  double constraint_residual;
} fd_tube_growth;

FD_API fd_status fd_abc_velocity_paper(const fd_abc* p, fd_vec3 x, fd_vec3* out,
                                       double* imag_residual);
FD_API fd_status fd_abc_velocity_standard(const fd_abc* p, fd_vec3 x, fd_vec3* out);
FD_API fd_status fd_tube_to_cartesian(const fd_tube_point* tp, fd_vec3* out);
FD_API fd_status fd_tube_velocity(const fd_abc* p, const fd_tube_point* tp,
                                  fd_radial_bracket bracket, fd_tube_flow* out);
FD_API fd_status fd_axis_radial_flow(double A, double theta, double s, double* out);
FD_API fd_status fd_stagnation_classify(const fd_abc* p, fd_stagnation* out);
FD_API fd_status fd_tube_growth_rate(double b_s, double b_theta, const fd_tube_point* tp,
                                     double eta, fd_tube_growth* out);
FD_API fd_status fd_radial_flow_gradient(double A, double theta, double tau0, double s,
                                         double* out);

/* ------------------------------------------------------------------ sim -- */

typedef struct fd_trajectory fd_trajectory;

typedef struct fd_growth_fit {
  double re_gamma;
  double im_gamma;
  double fit_residual;
  double log_norm_slope;
  int used_propagator; /* 0: log|B| slope, 1: one-step propagator eigenvalues */
  int valid;
} fd_growth_fit;

typedef struct fd_sim_options {
  double t_end;
  double dt;
  double b0_n;
  double b0_b;
} fd_sim_options;

typedef struct fd_cross_check {
  fd_spectrum spectrum;
  fd_growth_fit fit;
  double re_residual;
  int has_im_residual;
  double im_residual;
  int passed;
} fd_cross_check;

/* t_end = 20, dt = 1e-3, B0 = (1, 0.5) */
FD_API fd_sim_options fd_sim_default_options(void);

FD_API fd_status fd_integrate(const fd_matrix* m, double b0_n, double b0_b, double t_end,
                              double dt, fd_trajectory** out);
FD_API void fd_trajectory_destroy(fd_trajectory* traj);
FD_API size_t fd_trajectory_size(const fd_trajectory* traj);
/* Physical state at sample i (may overflow to inf) and log|B|. */
FD_API fd_status fd_trajectory_sample(const fd_trajectory* traj, size_t i, double* t,
                                      double* b_n, double* b_b, double* log_norm);
FD_API fd_status fd_fit_growth_rate(const fd_trajectory* traj, fd_growth_fit* out);
/* exp(M t), row-major into out[4]. */
FD_API fd_status fd_matrix_exponential(const fd_matrix* m, double t, double out[4]);
FD_API fd_status fd_cross_check_matrix(const fd_matrix* temporal, const fd_spectrum* reference,
                                       const fd_sim_options* options, fd_cross_check* out);
/* Spectral side uses the model's scheme; temporal side uses temporal_scheme,
 * or the model's scheme when FD_SCHEME_NONE. */
FD_API fd_status fd_model_cross_check(const fd_model* model, const fd_sim_options* options,
                                      fd_scheme temporal_scheme, fd_cross_check* out);

/* --------------------------------------------------------------- verify -- */

typedef struct fd_verify_options {
  uint64_t seed;
  double dt;
  double t_end;
  int draws;
  double order_dt;
  int inject_scheme_mismatch;
  unsigned threads; /* 0 = hardware concurrency */
} fd_verify_options;

typedef struct fd_verify_report fd_verify_report;

FD_API fd_verify_options fd_verify_default_options(void);
FD_API fd_status fd_verify_run(const fd_verify_options* options, fd_verify_report** out);
FD_API void fd_verify_report_destroy(fd_verify_report* report);
FD_API size_t fd_verify_report_size(const fd_verify_report* report);
/* Pointers stay valid until the report is destroyed. */
FD_API fd_status fd_verify_report_suite(const fd_verify_report* report, size_t i,
                                        const char** name, int* passed, double* worst,
                                        double* threshold, const char** detail);

#ifdef __cplusplus
}
#endif

#endif /* FILADYN_FILADYN_H */
