#include "filadyn/abc_flow.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

#include "filadyn/error.hpp"

namespace filadyn {

namespace {

using cplx = std::complex<double>;
constexpr cplx I{0.0, 1.0};

struct CVec3 {
  cplx x, y, z;
};

CVec3 operator+(const CVec3& a, const CVec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
CVec3 operator*(cplx s, const CVec3& a) { return {s * a.x, s * a.y, s * a.z}; }

// (u e^{i q} + conj(u) e^{-i q}) for a constant complex direction u.
CVec3 wave_pair(const CVec3& u, double q) {
  const cplx e = std::exp(I * q);
  const cplx em = std::exp(-I * q);
  return e * u + em * CVec3{std::conj(u.x), std::conj(u.y), std::conj(u.z)};
}

}  // namespace

ComplexFormValue abc_velocity_paper(const ABCParams& p, const Vec3& x) {
  const CVec3 a_term = wave_pair({I, 1.0, 0.0}, x.z);
  const CVec3 b_term = wave_pair({0.0, I, 1.0}, x.x);
  const CVec3 c_term = wave_pair({1.0, 0.0, I}, x.y);
  const CVec3 sum = cplx(p.A) * a_term + cplx(p.B) * b_term + cplx(p.C) * c_term;

  ComplexFormValue out;
  out.velocity = {sum.x.real(), sum.y.real(), sum.z.real()};
  out.imag_residual =
      std::max({std::fabs(sum.x.imag()), std::fabs(sum.y.imag()), std::fabs(sum.z.imag())});
  const double scale = std::max(1.0, std::fabs(p.A) + std::fabs(p.B) + std::fabs(p.C));
  if (!(out.imag_residual <= kImagResidualLimit * scale)) {
    std::ostringstream msg;
    msg << "complex ABC sum left an imaginary residual of " << out.imag_residual;
    fail(ErrorCode::Transcription, msg.str());
  }
  return out;
}

Vec3 abc_velocity_standard(const ABCParams& p, const Vec3& x) {
  return {p.A * std::sin(x.z) + p.C * std::cos(x.y), p.B * std::sin(x.x) + p.A * std::cos(x.z),
          p.C * std::sin(x.y) + p.B * std::cos(x.x)};
}

Vec3 tube_to_cartesian(const TubePoint& tp) {
  const double th = tp.theta();
  return {tp.r * std::cos(th), tp.r * std::sin(th), tp.s};
}

std::string_view to_string(RadialBracket b) {
  return b == RadialBracket::AsPrinted ? "as_printed" : "symmetric";
}

std::optional<RadialBracket> parse_radial_bracket(std::string_view text) {
  if (text == "as_printed") return RadialBracket::AsPrinted;
  if (text == "symmetric") return RadialBracket::Symmetric;
  return std::nullopt;
}

TubeVelocity tube_velocity(const ABCParams& p, const TubePoint& tp, RadialBracket bracket) {
  if (tp.r < 0.0) fail(ErrorCode::InvalidArgument, "tube radius must be nonnegative");
  const double th = tp.theta();
  const double sin_th = std::sin(th);
  if (std::fabs(sin_th) < kSingularBand) {
    std::ostringstream msg;
    msg << "radial tube flow is singular at theta = " << th << " (csc theta)";
    fail(ErrorCode::Domain, msg.str());
  }
  const double r = tp.r;
  const double rc = r * std::cos(th);
  const double rs = r * sin_th;

  const cplx e_rc = std::exp(I * rc);
  const cplx e_rs = std::exp(I * rs);

  TubeVelocity v;
  v.V_s = (p.B * (e_rc + std::conj(e_rc)) + p.C * (e_rs + std::conj(e_rs))).real();

  const cplx m = std::exp(I * (r * tp.s)) - std::exp(-I * (r * tp.s));
  const cplx n = e_rs - std::conj(e_rs);
  const cplx tail = bracket == RadialBracket::AsPrinted ? e_rc - std::conj(e_rs)
                                                        : e_rc - std::conj(e_rc);
  const cplx bracket_value = I * p.A * m + I * p.C * n + I * r * p.B * tail;
  const cplx vr = (1.0 / sin_th) / (1.0 + r) * bracket_value;
  v.V_r = vr.real();
  v.V_r_imag = vr.imag();
  return v;
}

double axis_radial_flow(double A, double theta, double s) {
  const double sin_th = std::sin(theta);
  if (std::fabs(sin_th) < kSingularBand) {
    fail(ErrorCode::Domain, "near-axis radial flow is singular where sin theta vanishes");
  }
  return A / sin_th * s;
}

std::string_view to_string(StagnationClass c) {
  return c == StagnationClass::StrongStagnation ? "STRONG_STAGNATION" : "NO_STAGNATION_CONSTRAINT";
}

StagnationClass stagnation_classify(const ABCParams& p) {
  return (p.B == 0.0 && p.C == 0.0) ? StagnationClass::StrongStagnation
                                    : StagnationClass::NoStagnationConstraint;
}

std::string_view to_string(TubeGrowthClass c) {
  switch (c) {
    case TubeGrowthClass::Marginal:
      return "MARGINAL";
    case TubeGrowthClass::TrivialField:
      return "TRIVIAL_FIELD";
    case TubeGrowthClass::SlowCandidate:
      return "SLOW_CANDIDATE";
  }
  return "?";
}

TubeGrowthResult tube_growth_rate(const TubeField& field, const TubePoint& tp, double eta) {
  if (!(tp.r > 0.0)) fail(ErrorCode::Domain, "tube growth system divides by r^2 and needs r > 0");
  if (!(eta >= 0.0)) fail(ErrorCode::InvalidArgument, "resistivity must be nonnegative");

  TubeGrowthResult out;
  if (field.B_theta == 0.0) {
    out.classification = TubeGrowthClass::TrivialField;
    return out;
  }
  if (eta > 0.0) {
    out.classification = TubeGrowthClass::SlowCandidate;
    return out;
  }
  if (tp.tau0 == 0.0) fail(ErrorCode::Domain, "toroidal constraint divides by tau0");

  // Combining the two poloidal equations with sin and cos leaves
  // gamma B_theta / r^2 = 0, so the rate vanishes and the common bracket must too.
  const double r2 = tp.r * tp.r;
  TubeField constrained = field;
  constrained.B_s = field.B_theta / (tp.tau0 * r2);

  out.classification = TubeGrowthClass::Marginal;
  out.gamma = 0.0;
  out.constrained = constrained;
  out.constraint_residual = std::fabs(constrained.B_s - (1.0 / tp.tau0) / r2 * field.B_theta);
  return out;
}

TubeSystemResidual tube_system_residual(double gamma, const TubeField& field, const TubePoint& tp,
                                        double V_r, double dVr_ds) {
  if (!(tp.r > 0.0)) fail(ErrorCode::Domain, "tube growth system needs r > 0");
  if (tp.tau0 == 0.0) fail(ErrorCode::Domain, "tube growth system divides by tau0");
  const double th = tp.theta();
  const double r2 = tp.r * tp.r;
  const double bracket = field.B_s - (1.0 / tp.tau0) / r2 * field.B_theta;
  const double pol = gamma * field.B_theta / r2;

  TubeSystemResidual res;
  res.toroidal = gamma * field.B_s - bracket * tp.tau0 * V_r * std::cos(th);
  res.poloidal_sin = pol * std::sin(th) + bracket * dVr_ds * std::cos(th);
  res.poloidal_cos = pol * std::cos(th) - bracket * dVr_ds * std::sin(th);
  return res;
}

double radial_flow_gradient(double A, double theta, double tau0, double s) {
  const double c = std::cos(theta);
  if (std::fabs(c) <= kSingularBand) {
    std::ostringstream msg;
    msg << "radial flow gradient is singular at theta = " << theta << " (tan theta)";
    fail(ErrorCode::Domain, msg.str());
  }
  const double t = std::tan(theta);
  return A * ((1.0 + t * t) * tau0 * tau0 + std::cos(s));
}

}  // namespace filadyn
