#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "lyapgate/grid.hpp"
#include "lyapgate/model.hpp"
#include "lyapgate/saturation.hpp"
#include "lyapgate/superop.hpp"
#include "lyapgate/threading.hpp"

namespace lyapgate {

// Control layout convention shared by both sweep directions:
//   channels == m      -> fixed-time, alpha = 1
//   channels == m + 1  -> clock, row 0 holds v0, alpha = 1 + v0
// The value applied on [t_k, t_{k+1}) is the node-k column in both
// directions: the backward step from node k+1 to node k uses column k. This
// pairing makes the discrete forward/backward RK4 maps exact adjoints of each
// other, so the duality defect and the Theorem-1 handoff stay at roundoff.

// Backward adjoint path: dJ/dt = -L*(J) from t_end down to t_start, realized
// as forward RK4 in s = t_end - t on dJ/ds = +L*(J). Samples stored at the
// given checkpoint stride. Aborts with NumericalError on non-finite samples.
Trajectory integrate_backward_adjoint(const LindbladModel& model, const ControlSignal& u_bar,
                                      const Matrix& J_final, int stride = 1);

// Open-loop Lindblad integration of one state under the given control.
Trajectory integrate_lindblad_forward(const LindbladModel& model, const ControlSignal& u,
                                      const Matrix& rho0, int stride = 1);

// Serves per-sigma J samples to the forward pass in increasing node order.
class JSource {
 public:
  virtual ~JSource() = default;
  virtual void prepare(int node) = 0;
  virtual const Matrix& at(int sigma, int node) const = 0;
  virtual int peak_resident_samples() const = 0;  // per sigma path
};

class DenseJSource final : public JSource {
 public:
  explicit DenseJSource(std::vector<Trajectory> trajs);  // stride 1 required
  void prepare(int) override {}
  const Matrix& at(int sigma, int node) const override;
  int peak_resident_samples() const override;

 private:
  std::vector<Trajectory> trajs_;
};

// Windowed view over stride-c checkpoint trajectories. Each window
// [w*c, min((w+1)*c, N)] is re-integrated backward from its upper checkpoint,
// which bit-reproduces the original sweep (the forward direction of the
// adjoint equation is anti-dissipative and is only used by the exported
// replay_forward_from_checkpoints below).
class ReplayJSource final : public JSource {
 public:
  ReplayJSource(const LindbladModel& model, const ControlSignal& u_bar,
                std::vector<Trajectory> checkpoints);
  void prepare(int node) override;
  const Matrix& at(int sigma, int node) const override;
  int peak_resident_samples() const override;

 private:
  const LindbladModel* model_;
  ControlSignal u_bar_;
  std::vector<Trajectory> checkpoints_;
  int win_lo_ = 1, win_hi_ = 0;  // empty
  std::vector<std::vector<Matrix>> window_;  // [sigma][node - win_lo_]
  int peak_ = 0;
};

// Densifies a stride-c trajectory by forward-integrating the stored backward
// dynamics (dJ/dt = -L*(J)) inside each checkpoint window, resetting to the
// stored sample at every window start; checkpoint nodes keep their stored
// values. stride 1 returns the input unchanged.
Trajectory replay_forward_from_checkpoints(const LindbladModel& model,
                                           const ControlSignal& u_bar,
                                           const Trajectory& checkpoints);

struct ForwardOptions {
  RealVector gains;                    // one per control-signal channel
  std::optional<RealMatrix> box;       // 2 x m (row 0 lo, row 1 hi); fixed-time only
  std::optional<ClockBounds> clock;    // clock-aware policy; requires clock layout
  int rho_stride = 0;                  // 0: store finals only
  ThreadPool* pool = nullptr;
};

struct ForwardResult {
  ControlSignal u_new;                 // applied control, same layout as u_bar
  std::vector<Matrix> rho_final;
  RealVector V_series;                 // per node
  RealMatrix F_series;                 // channels x nodes
  std::vector<Trajectory> rho_trajs;   // empty when rho_stride == 0
};

// Closed-loop forward pass over all sigma-copies in lockstep. At each node:
// F_k = sum_sigma trace(J_sigma L_k(rho_sigma)) is reduced across copies
// (serially, in sigma order), the feedback g_k F_k is saturated per policy,
// the applied control is recorded, and every copy advances one RK4 step with
// the control held at the node value. V(t) = |sigma set| - sum trace(J rho)
// is recorded at every node. The node-N column of u_new and F_series is
// evaluated for diagnostics but never drives a step.
ForwardResult integrate_forward_closed_loop(const LindbladModel& model,
                                            const ControlSignal& u_bar, JSource& J,
                                            const std::vector<Matrix>& rho0,
                                            const ForwardOptions& opt);

}  // namespace lyapgate
