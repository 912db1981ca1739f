#pragma once

#include "lyapgate/types.hpp"

namespace lyapgate {

// Clamp x to [-B, A]; A, B >= 0 required (both intervals contain zero, so
// clamping never flips the sign of x).
double sat(double x, double A, double B);

// Clock-aware saturation bounds. Physical bounds are symmetric |u_k| <=
// u_max_k; the virtual-time channel obeys |v0| <= u0_max < 1 so that the time
// direction 1 + v0 stays positive.
struct ClockBounds {
  double u0_max = 0.5;
  RealVector u_max;
  bool legacy_symmetric = false;  // text variant A_k = B_k = (1+v0)*u0_max

  void validate(int m) const;
};

// Clamps the feedback vector vtilde = (v0~, v1~, ..., vm~). v0~ is clamped
// first to [-B0, A0] with A0 = u0_max and
//   B0 = min(u0_max, 1 - max_k |ubar_k| / u_max_k),
// then each k >= 1 to [-B_k, A_k] evaluated at the clamped v0:
//   A_k = (1+v0) u_max_k - ubar_k,  B_k = (1+v0) u_max_k + ubar_k.
// ubar_prev holds the previous physical control at the node and must satisfy
// |ubar_k| <= u_max_k. The result keeps the applied physical control
// (ubar + vtilde_k)/(1+v0) inside +-u_max and preserves sign(vtilde_k).
RealVector saturate_clock_aware(const RealVector& vtilde, const RealVector& ubar_prev,
                                const ClockBounds& b);

}  // namespace lyapgate
