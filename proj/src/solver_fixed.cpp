#include "lyapgate/solver_fixed.hpp"

#include <cmath>
#include <limits>
#include <memory>

#include "lyapgate/sweeps.hpp"

namespace lyapgate {

namespace {
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
}

const char* to_string(StopReason r) {
  switch (r) {
    case StopReason::Tolerance: return "tolerance";
    case StopReason::MaxIters: return "max_iters";
    case StopReason::Stagnation: return "stagnation";
  }
  return "unknown";
}

void FixedTimeConfig::validate(const LindbladModel& model) const {
  if (!(Tf > 0)) throw std::invalid_argument("fixed-time config: Tf must be > 0");
  if (gains.size() != model.num_controls())
    throw std::invalid_argument("fixed-time config: one gain per control channel required");
  if (!gains.allFinite() || (gains.array() < 0).any())
    throw std::invalid_argument("fixed-time config: non-finite gain configuration");
  if (max_iters < 1) throw std::invalid_argument("fixed-time config: max_iters must be >= 1");
  if (N_sim < 10) throw std::invalid_argument("fixed-time config: N_sim must be >= 10");
  if (checkpoint_stride < 1)
    throw std::invalid_argument("fixed-time config: checkpoint_stride must be >= 1");
  if (stagnation_window < 1)
    throw std::invalid_argument("fixed-time config: stagnation_window must be >= 1");
  if (u_bounds) {
    if (u_bounds->rows() != 2 || u_bounds->cols() != model.num_controls())
      throw std::invalid_argument("fixed-time config: u_bounds must be 2 x m");
    if ((u_bounds->row(0).array() > u_bounds->row(1).array()).any())
      throw std::invalid_argument("fixed-time config: u_bounds lower > upper");
  }
}

namespace {

std::vector<Trajectory> backward_family(const LindbladModel& model, const ControlSignal& u_bar,
                                        const GateFamily& family, const std::vector<int>& active,
                                        int stride, ThreadPool* pool) {
  std::vector<Trajectory> trajs(active.size());
  auto body = [&](int i) {
    trajs[size_t(i)] = integrate_backward_adjoint(
        model, u_bar, family.members[size_t(active[size_t(i)])].J_final, stride);
  };
  if (pool) pool->parallel_for(0, int(active.size()), body);
  else for (int i = 0; i < int(active.size()); ++i) body(i);
  return trajs;
}

}  // namespace

double corrected_infidelity_pass(const LindbladModel& model, const GateFamily& family,
                                 const ControlSignal& u_final, double active_infidelity,
                                 ThreadPool* pool) {
  const std::vector<int> off = family.offdiag_indices();
  if (!family.diag_only || off.empty()) return active_infidelity;
  const int N = u_final.grid.n_steps;
  std::vector<double> inf(off.size());
  auto body = [&](int i) {
    const GateMember& mem = family.members[size_t(off[size_t(i)])];
    Trajectory t = integrate_lindblad_forward(model, u_final, mem.rho_init, N);
    inf[size_t(i)] = 1.0 - trace_prod(mem.J_final, t.at(N)).real();
  };
  if (pool) pool->parallel_for(0, int(off.size()), body);
  else for (int i = 0; i < int(off.size()); ++i) body(i);
  double worst = active_infidelity;
  for (double v : inf) worst = std::max(worst, v);
  return worst;
}

FixedTimeResult run(const LindbladModel& model, const GateFamily& family,
                    const ControlSignal& seed_control, const FixedTimeConfig& cfg) {
  cfg.validate(model);
  const TimeGrid grid(0.0, cfg.Tf, cfg.N_sim);
  if (!(seed_control.grid == grid))
    throw std::invalid_argument("fixed-time run: seed must live on the [0, Tf] x N_sim grid");
  if (seed_control.channels() != model.num_controls())
    throw std::invalid_argument("fixed-time run: seed control channel count mismatch");

  const std::vector<int> active = family.active_indices();
  if (active.empty()) throw std::invalid_argument("fixed-time run: empty gate family");
  std::vector<Matrix> rho0;
  rho0.reserve(active.size());
  for (int idx : active) rho0.push_back(family.members[size_t(idx)].rho_init);

  FixedTimeResult res;
  res.reports.reserve(size_t(cfg.max_iters));
  std::vector<double> dissipation;
  ControlSignal ubar = seed_control;
  if (cfg.u_bounds) {
    // project the seed onto the admissible box so the stored reference
    // control satisfies the same bounds the closed loop enforces
    for (int k = 0; k < model.num_controls(); ++k)
      ubar.values.row(k) = ubar.values.row(k)
                               .cwiseMax((*cfg.u_bounds)(0, k))
                               .cwiseMin((*cfg.u_bounds)(1, k));
  }
  double prev_VTf = kNan;
  const double h = grid.h();

  for (int ell = 1; ell <= cfg.max_iters; ++ell) {
    std::vector<Trajectory> jtraj =
        backward_family(model, ubar, family, active, cfg.checkpoint_stride, cfg.pool);
    std::unique_ptr<JSource> src;
    if (cfg.checkpoint_stride == 1)
      src = std::make_unique<DenseJSource>(std::move(jtraj));
    else
      src = std::make_unique<ReplayJSource>(model, ubar, std::move(jtraj));

    ForwardOptions opt;
    opt.gains = cfg.gains;
    opt.box = cfg.u_bounds;
    opt.pool = cfg.pool;
    const ForwardResult fwd = integrate_forward_closed_loop(model, ubar, *src, rho0, opt);

    IterationReport rep;
    rep.ell = ell;
    rep.V_initial = fwd.V_series(0);
    rep.V_final = fwd.V_series(cfg.N_sim);
    rep.handoff_err = std::isnan(prev_VTf) ? kNan : std::abs(prev_VTf - rep.V_initial);
    if (!std::isnan(rep.handoff_err)) res.eps_num = std::max(res.eps_num, rep.handoff_err);
    rep.infidelity = gate_infidelity(fwd.rho_final, family, active);
    rep.corrected_infidelity = kNan;
    rep.Tf = cfg.Tf;
    rep.stationarity_residual = stationarity_residual(fwd.F_series);

    double ssq = 0.0, diss = 0.0;
    for (int k = 0; k < ubar.channels(); ++k) {
      const RealVector d = (fwd.u_new.values.row(k) - ubar.values.row(k)).transpose();
      ssq += trapezoid(d.cwiseProduct(d), h);
      const RealVector f = fwd.F_series.row(k).transpose();
      diss += cfg.gains(k) * trapezoid(f.cwiseProduct(f), h);
    }
    rep.control_l2_change = std::sqrt(ssq);
    dissipation.push_back(diss);
    res.V_series_log.push_back(fwd.V_series);

    ubar = fwd.u_new;
    prev_VTf = rep.V_final;
    res.reports.push_back(rep);

    if (cfg.infidelity_tol > 0 && rep.infidelity <= cfg.infidelity_tol) {
      res.stop = StopReason::Tolerance;
      break;
    }
    const int L = int(res.reports.size());
    if (L > cfg.stagnation_window &&
        res.reports[size_t(L - 1 - cfg.stagnation_window)].V_final - rep.V_final <
            cfg.stagnation_eps) {
      res.stop = StopReason::Stagnation;
      break;
    }
  }

  res.final_control = ubar;
  res.dissipation =
      Eigen::Map<const RealVector>(dissipation.data(), Eigen::Index(dissipation.size()));
  if (!res.reports.empty())
    res.reports.back().corrected_infidelity = corrected_infidelity_pass(
        model, family, ubar, res.reports.back().infidelity, cfg.pool);
  return res;
}

}  // namespace lyapgate
