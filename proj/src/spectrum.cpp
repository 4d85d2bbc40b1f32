#include "filadyn/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "filadyn/error.hpp"

namespace filadyn {

namespace {

const double kSqrt5 = std::sqrt(5.0);

ModeClass qualifiers(const Spectrum& s) {
  ModeClass c;
  c.oscillatory = std::fabs(s.gamma_plus.imag()) > kClassEpsilon;
  c.degenerate = std::fabs(s.discriminant) <= kClassEpsilon;
  return c;
}

GrowthClass growth_of(double re) {
  if (re > kClassEpsilon) return GrowthClass::Fast;
  if (re < -kClassEpsilon) return GrowthClass::Decaying;
  return GrowthClass::Marginal;
}

}  // namespace

std::string_view to_string(GrowthClass g) {
  switch (g) {
    case GrowthClass::Fast:
      return "FAST";
    case GrowthClass::Slow:
      return "SLOW";
    case GrowthClass::Marginal:
      return "MARGINAL";
    case GrowthClass::Decaying:
      return "DECAYING";
  }
  return "?";
}

std::string to_string(const ModeClass& c) {
  std::string out(to_string(c.growth));
  if (c.oscillatory) out += "+OSCILLATORY";
  if (c.degenerate) out += "+DEGENERATE";
  return out;
}

Quadratic characteristic_polynomial(const DynamoMatrix& m) {
  return {1.0, -m.trace(), m.determinant()};
}

Spectrum solve_quadratic(const Quadratic& q) {
  if (q.a == 0.0 || !std::isfinite(q.a) || !std::isfinite(q.b) || !std::isfinite(q.c)) {
    fail(ErrorCode::InvalidArgument, "quadratic needs finite coefficients and a != 0");
  }
  Spectrum s;
  s.discriminant = q.discriminant();
  if (s.discriminant >= 0.0) {
    // Avoid cancellation: take the larger-magnitude root first, the other from c/a.
    const double root = std::sqrt(s.discriminant);
    const double w = -0.5 * (q.b + std::copysign(root, q.b));
    double r1 = 0.0;
    double r2 = 0.0;
    if (w != 0.0) {
      r1 = w / q.a;
      r2 = q.c / w;
    }
    s.gamma_plus = std::max(r1, r2);
    s.gamma_minus = std::min(r1, r2);
  } else {
    const double re = -q.b / (2.0 * q.a);
    const double im = std::sqrt(-s.discriminant) / (2.0 * std::fabs(q.a));
    s.gamma_plus = {re, im};
    s.gamma_minus = {re, -im};
  }
  s.classification = classify_point(s, s);
  return s;
}

Spectrum characteristic_roots(const DynamoMatrix& m) {
  return solve_quadratic(characteristic_polynomial(m));
}

Quadratic laminar_characteristic(double alpha_lambda, double kappa0) {
  return {1.0, alpha_lambda, -(alpha_lambda + kappa0) * kappa0};
}

ClosedFormPair paper_closed_form_laminar(double alpha_lambda, double kappa0) {
  if (!(std::fabs(kappa0 + alpha_lambda) <= kClosedFormValidity)) {
    std::ostringstream msg;
    msg << "laminar closed form requires kappa0 = -alpha*lambda within " << kClosedFormValidity
        << ", got kappa0 = " << kappa0 << ", alpha*lambda = " << alpha_lambda;
    fail(ErrorCode::ValidityCondition, msg.str());
  }
  const double r1 = alpha_lambda * (-1.0 + kSqrt5) / 2.0;
  const double r2 = alpha_lambda * (-1.0 - kSqrt5) / 2.0;
  return {std::max(r1, r2), std::min(r1, r2)};
}

DegenerateBranch degenerate_branch(double kappa0) {
  if (!std::isfinite(kappa0)) fail(ErrorCode::InvalidArgument, "kappa0 must be finite");
  return {-2.0 * kappa0, kappa0};
}

DynamoMatrix degenerate_branch_matrix(double kappa0) {
  return DynamoMatrix::from_rows(kappa0, 0.0, 0.0, kappa0);
}

AnosovReference anosov_reference() { return {(3.0 + kSqrt5) / 2.0, (3.0 - kSqrt5) / 2.0}; }

std::pair<double, double> curvature_scaled_anosov(double kappa) {
  return {kappa * (-1.0 + kSqrt5) / 2.0, kappa * (-1.0 - kSqrt5) / 2.0};
}

ModeClass classify_point(const Spectrum& at, const Spectrum& limit) {
  ModeClass c = qualifiers(at);
  c.growth = growth_of(at.gamma_plus.real());
  if (c.growth == GrowthClass::Fast && !(limit.gamma_plus.real() > kClassEpsilon)) {
    c.growth = GrowthClass::Slow;
  }
  return c;
}

ModeClass classify(const SpectrumFamily& family) {
  const Spectrum limit = family(0.0);
  const double g0 = limit.gamma_plus.real();

  // Re gamma_+ from the largest sampled beta down to the limit itself.
  std::vector<double> seq;
  for (double beta : kBetaSequence) seq.push_back(family(beta).gamma_plus.real());
  seq.push_back(g0);

  double scale = 1.0;
  for (double g : seq) {
    if (!std::isfinite(g)) fail(ErrorCode::NonConvergence, "non-finite growth rate in beta sequence");
    scale = std::max(scale, std::fabs(g));
  }
  const double tol = 1e-9 * scale;
  bool nonincreasing = true;
  bool nondecreasing = true;
  for (std::size_t i = 1; i < seq.size(); ++i) {
    const double d = seq[i] - seq[i - 1];
    nonincreasing = nonincreasing && d <= tol;
    nondecreasing = nondecreasing && d >= -tol;
  }
  if (!nonincreasing && !nondecreasing) {
    fail(ErrorCode::NonConvergence, "Re gamma is not monotone along the beta -> 0 sequence");
  }

  ModeClass c = qualifiers(limit);
  if (g0 > kClassEpsilon) {
    const double last_sample = seq[seq.size() - 2];
    if (std::fabs(last_sample - g0) > 1e-2 * std::max(1.0, std::fabs(g0))) {
      fail(ErrorCode::NonConvergence, "Re gamma does not approach its beta = 0 value");
    }
    c.growth = GrowthClass::Fast;
  } else if (std::any_of(seq.begin(), seq.end() - 1, [](double g) { return g > kClassEpsilon; })) {
    c.growth = GrowthClass::Slow;
  } else if (g0 < -kClassEpsilon) {
    c.growth = GrowthClass::Decaying;
  } else {
    c.growth = GrowthClass::Marginal;
  }
  return c;
}

}  // namespace filadyn
