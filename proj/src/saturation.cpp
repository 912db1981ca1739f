#include "lyapgate/saturation.hpp"

#include <algorithm>
#include <string>

namespace lyapgate {

double sat(double x, double A, double B) {
  if (A < 0 || B < 0) throw std::invalid_argument("sat: bounds must be nonnegative");
  return std::clamp(x, -B, A);
}

void ClockBounds::validate(int m) const {
  if (!(u0_max > 0.0) || !(u0_max < 1.0))
    throw std::invalid_argument("clock bounds: u0_max must lie in (0, 1)");
  if (u_max.size() != m)
    throw std::invalid_argument("clock bounds: u_max must have one entry per physical channel");
  for (int k = 0; k < m; ++k)
    if (!(u_max(k) > 0.0))
      throw std::invalid_argument("clock bounds: u_max[" + std::to_string(k) + "] must be > 0");
}

RealVector saturate_clock_aware(const RealVector& vtilde, const RealVector& ubar_prev,
                                const ClockBounds& b) {
  const int m = int(ubar_prev.size());
  if (vtilde.size() != m + 1)
    throw std::invalid_argument("saturate_clock_aware: vtilde must have m+1 entries");
  b.validate(m);

  double B0 = b.u0_max;
  for (int k = 0; k < m; ++k) {
    const double slack = 1.0 - std::abs(ubar_prev(k)) / b.u_max(k);
    if (slack < -1e-9)
      throw std::invalid_argument("saturate_clock_aware: |ubar| exceeds u_max on channel " +
                                  std::to_string(k + 1));
    B0 = std::min(B0, std::max(slack, 0.0));
  }

  RealVector out(m + 1);
  const double v0 = sat(vtilde(0), b.u0_max, B0);
  out(0) = v0;
  for (int k = 0; k < m; ++k) {
    double A, B;
    if (b.legacy_symmetric) {
      A = B = (1.0 + v0) * b.u0_max;
    } else {
      A = (1.0 + v0) * b.u_max(k) - ubar_prev(k);
      B = (1.0 + v0) * b.u_max(k) + ubar_prev(k);
    }
    // roundoff guard: the bounds are >= 0 by construction of B0
    out(k + 1) = sat(vtilde(k + 1), std::max(A, 0.0), std::max(B, 0.0));
  }
  return out;
}

}  // namespace lyapgate
