#include "lyapgate/seed.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace lyapgate {

namespace {
// mt19937_64 output mapped to [-1, 1) with an explicit bit transform;
// std::uniform_real_distribution is not reproducible across platforms.
double uniform_pm1(std::mt19937_64& eng) {
  const double u01 = double(eng() >> 11) * 0x1.0p-53;
  return 2.0 * u01 - 1.0;
}
}  // namespace

ControlSignal make_seed(const ControlSignal& u_init, const SeedConfig& cfg) {
  if (cfg.amplitude < 0)
    throw std::invalid_argument("seed: amplitude must be >= 0");
  if (cfg.harmonics < 0)
    throw std::invalid_argument("seed: harmonics must be >= 0");
  if (cfg.harmonics > 0 && !(cfg.period > 0))
    throw std::invalid_argument("seed: period must be > 0 when harmonics > 0");

  ControlSignal out = u_init;
  if (cfg.amplitude == 0.0 || cfg.harmonics == 0) return out;

  std::mt19937_64 eng(cfg.rng_seed);
  const int channels = u_init.channels();
  const int nodes = u_init.grid.n_nodes();
  for (int k = 0; k < channels; ++k) {
    for (int l = 1; l <= cfg.harmonics; ++l) {
      const double a = uniform_pm1(eng);
      const double b = uniform_pm1(eng);
      const double w = 2.0 * l * std::numbers::pi / cfg.period;
      for (int j = 0; j < nodes; ++j) {
        const double t = u_init.grid.node(j);
        out.values(k, j) += cfg.amplitude * (a * std::sin(w * t) + b * std::cos(w * t));
      }
    }
  }
  return out;
}

}  // namespace lyapgate
