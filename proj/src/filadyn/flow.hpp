#pragma once

#include "filadyn/geometry.hpp"

namespace filadyn {

/// Flow along the filament, v = v_s t + v_n n, with the mean square of v_n
/// supplied directly rather than averaged from an ensemble.
struct FlowProfile {
  double v_s = 0.0;
  double v_n = 0.0;
  double v_n_meansq = 0.0;
};

void validate(const FlowProfile& flow);

/// Mean-field helicity alpha = -kappa0 <v_n^2>.
///
/// Accepts signed curvature: a negative kappa0 gives a positive alpha effect.
double alpha_helicity(const FilamentGeometry& geom, const FlowProfile& flow);

/// Binormal amplitude fed from the normal one by the tangential flow, B_b = -B_n v_s.
double binormal_transfer(double b_n, const FlowProfile& flow);

/// Field equipartition B_n == B_b is only reachable with v_s == -1.
bool supports_field_equipartition(const FlowProfile& flow);

}  // namespace filadyn
