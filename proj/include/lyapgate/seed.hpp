#pragma once

#include <cstdint>

#include "lyapgate/grid.hpp"

namespace lyapgate {

struct SeedConfig {
  double amplitude = 0.0;   // A, same units as the control
  int harmonics = 0;        // M
  double period = 1.0;      // T, required > 0 when M > 0
  std::uint64_t rng_seed = 1;
};

// ubar0_k(t) = u_init_k(t) + A * sum_{l=1..M} [a_kl sin(2 l pi t / T) +
// b_kl cos(2 l pi t / T)], a and b i.i.d. uniform on [-1, 1]. Coefficients
// are drawn channel-major (channel, then harmonic, a before b) from a
// portable generator, and the trig terms are evaluated analytically at the
// grid nodes.
ControlSignal make_seed(const ControlSignal& u_init, const SeedConfig& cfg);

}  // namespace lyapgate
