#pragma once

#include <optional>
#include <vector>

#include "lyapgate/gate_family.hpp"
#include "lyapgate/grid.hpp"
#include "lyapgate/metrics.hpp"
#include "lyapgate/model.hpp"
#include "lyapgate/threading.hpp"

namespace lyapgate {

enum class StopReason { Tolerance, MaxIters, Stagnation };
const char* to_string(StopReason r);

struct FixedTimeConfig {
  double Tf = 1.0;
  RealVector gains;                    // one per channel, >= 0
  int max_iters = 100;
  double infidelity_tol = 0.0;         // 0 disables the tolerance stop
  std::optional<RealMatrix> u_bounds;  // 2 x m: row 0 lower, row 1 upper
  int N_sim = 1000;
  int checkpoint_stride = 1;           // adjoint storage stride; 1 = dense
  int stagnation_window = 20;
  double stagnation_eps = 1e-10;       // min V_final improvement per window
  ThreadPool* pool = nullptr;

  void validate(const LindbladModel& model) const;
};

struct FixedTimeResult {
  ControlSignal final_control;           // the last forward pass's input
  std::vector<IterationReport> reports;  // one per iteration, ell = 1..L
  StopReason stop = StopReason::MaxIters;
  double eps_num = 0.0;                  // max observed handoff defect
  RealVector dissipation;                // per iteration: sum_k g_k int F_k^2 dt
  std::vector<RealVector> V_series_log;  // per-iteration within-pass V(t)
};

// Monotonic fixed-gate-time loop: iterate (backward adjoint sweep of every
// active member, closed-loop forward sweep with feedback u = ubar + g F
// clamped to u_bounds) until the infidelity tolerance, the iteration cap, or
// the stagnation guard fires. The Lyapunov handoff V_final(ell) =
// V_initial(ell+1) holds to integration roundoff and its worst defect is
// reported as eps_num. When diag_only, the last report additionally carries
// the corrected infidelity (worst case over the full family, evaluated by an
// extra open-loop pass over the off-diagonal members with the final control).
FixedTimeResult run(const LindbladModel& model, const GateFamily& family,
                    const ControlSignal& seed_control, const FixedTimeConfig& cfg);

// Worst case over the full family: re-simulates the off-diagonal members
// open-loop under the final control and merges with the active-set value.
// Identity when the family is not diag_only. Shared by both solvers.
double corrected_infidelity_pass(const LindbladModel& model, const GateFamily& family,
                                 const ControlSignal& u_final, double active_infidelity,
                                 ThreadPool* pool);

}  // namespace lyapgate
