#pragma once

#include <vector>

namespace numindex {

/// Maximum of g(t) = |t^(p-1) - t| / (1 + t^p) over t >= 1 (equivalently over
/// t in [0,1]); zero exactly when p = 2.
struct MpResult {
  double p = 0.0;
  double value = 0.0;
  double t_star = 1.0;
  double residual = 0.0;  // |g'(t_star)|, 0 when p = 2
};

struct BoundSet {
  double mp = 0.0;
  double mp_over_6 = 0.0;
  double mp_over_12e = 0.0;
  double lower_2d = 0.0;  // max(2^(-1/p), 2^(-1/q)) * mp
  double upper = 0.0;     // mp
  double complex_floor = 0.0;  // 1/e
};

MpResult compute_Mp(double p, double tol = 1e-12);

BoundSet bounds(double p);

}  // namespace numindex
