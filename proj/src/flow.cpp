#include "filadyn/flow.hpp"

#include <cmath>

#include "filadyn/error.hpp"

namespace filadyn {

void validate(const FlowProfile& flow) {
  if (!std::isfinite(flow.v_s) || !std::isfinite(flow.v_n) || !std::isfinite(flow.v_n_meansq)) {
    fail(ErrorCode::InvalidArgument, "flow components must be finite");
  }
  if (flow.v_n_meansq < 0.0) {
    fail(ErrorCode::InvalidArgument, "mean square normal flow must be nonnegative");
  }
}

double alpha_helicity(const FilamentGeometry& geom, const FlowProfile& flow) {
  validate(flow);
  return -geom.kappa0 * flow.v_n_meansq;
}

double binormal_transfer(double b_n, const FlowProfile& flow) { return -b_n * flow.v_s; }

bool supports_field_equipartition(const FlowProfile& flow) { return flow.v_s == -1.0; }

}  // namespace filadyn
