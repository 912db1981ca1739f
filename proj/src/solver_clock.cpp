#include "lyapgate/solver_clock.hpp"

#include <cmath>
#include <limits>
#include <memory>

#include "lyapgate/sweeps.hpp"

namespace lyapgate {

namespace {
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
}

void ClockConfig::validate(const LindbladModel& model) const {
  if (!(Tf0 > 0)) throw std::invalid_argument("clock config: Tf0 must be > 0");
  if (!std::isfinite(g0) || g0 < 0)
    throw std::invalid_argument("clock config: non-finite gain configuration");
  if (gains.size() != model.num_controls())
    throw std::invalid_argument("clock config: one gain per control channel required");
  if (!gains.allFinite() || (gains.array() < 0).any())
    throw std::invalid_argument("clock config: non-finite gain configuration");
  if (max_iters < 1) throw std::invalid_argument("clock config: max_iters must be >= 1");
  if (N_sim < 10) throw std::invalid_argument("clock config: N_sim must be >= 10");
  if (checkpoint_stride < 1)
    throw std::invalid_argument("clock config: checkpoint_stride must be >= 1");
  if (stagnation_window < 1)
    throw std::invalid_argument("clock config: stagnation_window must be >= 1");
  if (saturate) bounds.validate(model.num_controls());
}

double clock_feedback_channel(const LindbladModel& model, const Matrix& J, const Matrix& rho) {
  return trace_prod(J, apply_drift(model, rho)).real();
}

ClockResult run_clock(const LindbladModel& model, const GateFamily& family,
                      const ControlSignal& seed_control, const ClockConfig& cfg) {
  cfg.validate(model);
  const int m = model.num_controls();
  const int N = cfg.N_sim;
  if (!(seed_control.grid == TimeGrid(0.0, cfg.Tf0, N)))
    throw std::invalid_argument("clock run: seed must live on the [0, Tf0] x N_sim grid");
  if (seed_control.channels() != m)
    throw std::invalid_argument("clock run: seed carries the physical channels only");

  const std::vector<int> active = family.active_indices();
  if (active.empty()) throw std::invalid_argument("clock run: empty gate family");
  std::vector<Matrix> rho0;
  rho0.reserve(active.size());
  for (int idx : active) rho0.push_back(family.members[size_t(idx)].rho_init);

  RealVector gains_full(m + 1);
  gains_full(0) = cfg.g0;
  gains_full.tail(m) = cfg.gains;

  ClockResult res;
  res.reports.reserve(size_t(cfg.max_iters));
  std::vector<double> tf_hist;
  ControlSignal ubar = seed_control;  // physical channels on the current grid
  if (cfg.saturate) {
    // project the seed into the admissible box; the clock-aware saturation
    // assumes |ubar| <= u_max and keeps it invariant from there on
    for (int k = 0; k < m; ++k)
      ubar.values.row(k) = ubar.values.row(k)
                               .cwiseMax(-cfg.bounds.u_max(k))
                               .cwiseMin(cfg.bounds.u_max(k));
  }
  double prev_VTf = kNan;

  for (int ell = 1; ell <= cfg.max_iters; ++ell) {
    // reference reset: vbar = (0, ubar) on the virtual grid [0, Tf^(l-1)]
    ControlSignal vbar;
    vbar.grid = ubar.grid;
    vbar.values.resize(m + 1, N + 1);
    vbar.values.row(0).setZero();
    vbar.values.bottomRows(m) = ubar.values;
    const double h = vbar.grid.h();

    std::vector<Trajectory> jtraj(active.size());
    auto backward = [&](int i) {
      jtraj[size_t(i)] = integrate_backward_adjoint(
          model, vbar, family.members[size_t(active[size_t(i)])].J_final,
          cfg.checkpoint_stride);
    };
    if (cfg.pool) cfg.pool->parallel_for(0, int(active.size()), backward);
    else for (int i = 0; i < int(active.size()); ++i) backward(i);

    std::unique_ptr<JSource> src;
    if (cfg.checkpoint_stride == 1)
      src = std::make_unique<DenseJSource>(std::move(jtraj));
    else
      src = std::make_unique<ReplayJSource>(model, vbar, std::move(jtraj));

    ForwardOptions opt;
    opt.gains = gains_full;
    if (cfg.saturate) opt.clock = cfg.bounds;
    opt.pool = cfg.pool;
    const ForwardResult fwd = integrate_forward_closed_loop(model, vbar, *src, rho0, opt);

    // physical-time map t(tau) and the new horizon
    const RealVector alpha = RealVector::Ones(N + 1) + fwd.u_new.values.row(0).transpose();
    if (!(alpha.minCoeff() > 0))
      throw NumericalError("clock run: time dilation 1 + v0 left the positive domain");
    const RealVector tmap = cumtrapezoid(alpha, h);
    const double Tf_new = tmap(N);

    // u_k(t(tau)) = v_k(tau) / (1 + v0(tau)), resampled onto the uniform grid
    ControlSignal u_next;
    u_next.grid = TimeGrid(0.0, Tf_new, N);
    u_next.values.resize(m, N + 1);
    RealVector tq(N + 1);
    for (int j = 0; j <= N; ++j) tq(j) = u_next.grid.node(j);
    for (int k = 0; k < m; ++k) {
      const RealVector y =
          fwd.u_new.values.row(k + 1).transpose().cwiseQuotient(alpha);
      u_next.values.row(k) = interp_linear(tmap, y, tq).transpose();
    }

    IterationReport rep;
    rep.ell = ell;
    rep.V_initial = fwd.V_series(0);
    rep.V_final = fwd.V_series(N);
    rep.handoff_err = std::isnan(prev_VTf) ? kNan : std::abs(prev_VTf - rep.V_initial);
    if (!std::isnan(rep.handoff_err)) res.eps_num = std::max(res.eps_num, rep.handoff_err);
    rep.infidelity = gate_infidelity(fwd.rho_final, family, active);
    rep.corrected_infidelity = kNan;
    rep.Tf = Tf_new;
    rep.stationarity_residual = stationarity_residual(fwd.F_series);
    double ssq = 0.0;
    for (int k = 0; k <= m; ++k) {
      const RealVector d = (fwd.u_new.values.row(k) - vbar.values.row(k)).transpose();
      ssq += trapezoid(d.cwiseProduct(d), h);
    }
    rep.control_l2_change = std::sqrt(ssq);

    tf_hist.push_back(Tf_new);
    res.V_series_log.push_back(fwd.V_series);
    ubar = std::move(u_next);
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
  res.Tf_history = Eigen::Map<const RealVector>(tf_hist.data(), Eigen::Index(tf_hist.size()));
  if (!res.reports.empty())
    res.reports.back().corrected_infidelity = corrected_infidelity_pass(
        model, family, ubar, res.reports.back().infidelity, cfg.pool);
  return res;
}

}  // namespace lyapgate
