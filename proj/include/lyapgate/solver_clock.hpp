#pragma once

#include <vector>

#include "lyapgate/gate_family.hpp"
#include "lyapgate/grid.hpp"
#include "lyapgate/metrics.hpp"
#include "lyapgate/model.hpp"
#include "lyapgate/saturation.hpp"
#include "lyapgate/solver_fixed.hpp"
#include "lyapgate/threading.hpp"

namespace lyapgate {

struct ClockConfig {
  double Tf0 = 1.0;    // initial gate time
  double g0 = 0.1;     // clock-channel gain
  RealVector gains;    // physical channels, >= 0
  int max_iters = 200;
  double infidelity_tol = 0.0;  // 0 disables the tolerance stop
  ClockBounds bounds;           // u0_max for the clock, |u| caps per channel
  bool saturate = true;         // clock-aware policy on the virtual controls
  int N_sim = 1000;             // held fixed across steps (virtual-grid density)
  int checkpoint_stride = 1;
  int stagnation_window = 20;
  double stagnation_eps = 1e-10;
  ThreadPool* pool = nullptr;

  void validate(const LindbladModel& model) const;
};

struct ClockResult {
  ControlSignal final_control;           // physical channels on [0, Tf_final]
  RealVector Tf_history;                 // gate time after each step
  std::vector<IterationReport> reports;
  StopReason stop = StopReason::MaxIters;
  double eps_num = 0.0;                  // handoff defect incl. resampling error
  std::vector<RealVector> V_series_log;  // per-iteration within-pass V(tau)
};

// Gate-time-optimizing loop in virtual time tau on [0, Tf^(l-1)]: each step
// resets the reference to (v0 = 0, v_k = u_k), runs the backward adjoint and
// the closed-loop forward pass over the m+1 channels (channel 0 couples the
// full drift superoperator), saturates the virtual controls clock-aware, then
// maps back to physical time via t(tau) = int (1 + v0), Tf_new = t(Tf^(l-1)),
// u_k(t) = v_k/(1 + v0), resampled onto a uniform N_sim grid over the new
// horizon by monotone linear interpolation. g0 = 0 reduces to the fixed-time
// loop (Tf stays put). Since the reference moves between grids, the handoff
// defect also carries the resampling error.
ClockResult run_clock(const LindbladModel& model, const GateFamily& family,
                      const ControlSignal& seed_control, const ClockConfig& cfg);

// Single-member clock feedback term trace(J L_0(rho)) with the unscaled
// drift (dissipators included); the solver sums this over the family.
double clock_feedback_channel(const LindbladModel& model, const Matrix& J, const Matrix& rho);

}  // namespace lyapgate
