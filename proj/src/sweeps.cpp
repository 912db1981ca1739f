#include "lyapgate/sweeps.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "lyapgate/rk4.hpp"

namespace lyapgate {

namespace {

struct Layout {
  int m = 0;        // physical channels
  bool clock = false;
};

Layout resolve_layout(const LindbladModel& model, const ControlSignal& u) {
  Layout lay;
  lay.m = model.num_controls();
  if (u.channels() == lay.m) {
    lay.clock = false;
  } else if (u.channels() == lay.m + 1) {
    lay.clock = true;
  } else {
    throw std::invalid_argument("control signal must have m or m+1 channels");
  }
  return lay;
}

// Column k of a control signal split into (alpha, physical coefficients).
void interval_control(const ControlSignal& u, const Layout& lay, int k, RealVector& v,
                      double& alpha) {
  if (lay.clock) {
    alpha = 1.0 + u.values(0, k);
    v = u.values.col(k).tail(lay.m);
  } else {
    alpha = 1.0;
    v = u.values.col(k);
  }
}

std::string node_context(const char* what, int sigma, int node, double t,
                         const RealVector& v) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%s: non-finite state (sigma=%d, node=%d, t=%.9g), controls:",
                what, sigma, node, t);
  std::string msg(buf);
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    std::snprintf(buf, sizeof buf, " %.9g", v(k));
    msg += buf;
  }
  return msg;
}

}  // namespace

Trajectory integrate_backward_adjoint(const LindbladModel& model, const ControlSignal& u_bar,
                                      const Matrix& J_final, int stride) {
  const Layout lay = resolve_layout(model, u_bar);
  const TimeGrid& g = u_bar.grid;
  if (J_final.rows() != model.dim() || J_final.cols() != model.dim())
    throw std::invalid_argument("backward sweep: J_final dimension mismatch");
  if (!is_hermitian(J_final, 1e-10))
    throw std::invalid_argument("backward sweep: J_final must be Hermitian");

  Trajectory traj(g, stride);
  GeneratorApplier gen(model);
  ApplyWorkspace ws;
  Rk4Workspace rk;
  Matrix J = J_final;
  traj.set(g.n_steps, J);

  RealVector v(lay.m);
  double alpha = 1.0;
  const double h = g.h();
  for (int j = 0; j < g.n_steps; ++j) {
    const int node = g.n_steps - 1 - j;  // target node; interval [t_node, t_node+1)
    interval_control(u_bar, lay, node, v, alpha);
    gen.set_control(v, alpha);
    auto f = [&](double, const Matrix& x, Matrix& out) { gen.apply_adjoint(x, out, ws); };
    rk4_step_inplace(f, J, 0.0, h, rk);
    hermitize(J);
    if (!J.allFinite())
      throw NumericalError(node_context("backward sweep", -1, node, g.node(node), v));
    if (traj.has_node(node)) traj.set(node, J);
  }
  return traj;
}

Trajectory integrate_lindblad_forward(const LindbladModel& model, const ControlSignal& u,
                                      const Matrix& rho0, int stride) {
  const Layout lay = resolve_layout(model, u);
  const TimeGrid& g = u.grid;
  if (rho0.rows() != model.dim() || rho0.cols() != model.dim())
    throw std::invalid_argument("open-loop sweep: rho0 dimension mismatch");

  Trajectory traj(g, stride);
  GeneratorApplier gen(model);
  ApplyWorkspace ws;
  Rk4Workspace rk;
  Matrix rho = rho0;
  traj.set(0, rho);

  RealVector v(lay.m);
  double alpha = 1.0;
  const double h = g.h();
  for (int k = 0; k < g.n_steps; ++k) {
    interval_control(u, lay, k, v, alpha);
    gen.set_control(v, alpha);
    auto f = [&](double, const Matrix& x, Matrix& out) { gen.apply_forward(x, out, ws); };
    rk4_step_inplace(f, rho, 0.0, h, rk);
    hermitize(rho);
    if (!rho.allFinite())
      throw NumericalError(node_context("open-loop sweep", -1, k + 1, g.node(k + 1), v));
    if (traj.has_node(k + 1)) traj.set(k + 1, rho);
  }
  return traj;
}

DenseJSource::DenseJSource(std::vector<Trajectory> trajs) : trajs_(std::move(trajs)) {
  for (const auto& t : trajs_)
    if (t.stride() != 1)
      throw std::invalid_argument("DenseJSource requires stride-1 trajectories");
}

const Matrix& DenseJSource::at(int sigma, int node) const {
  return trajs_.at(size_t(sigma)).at(node);
}

int DenseJSource::peak_resident_samples() const {
  return trajs_.empty() ? 0 : trajs_[0].stored_count();
}

ReplayJSource::ReplayJSource(const LindbladModel& model, const ControlSignal& u_bar,
                             std::vector<Trajectory> checkpoints)
    : model_(&model), u_bar_(u_bar), checkpoints_(std::move(checkpoints)) {
  if (checkpoints_.empty()) throw std::invalid_argument("ReplayJSource: no trajectories");
  for (const auto& t : checkpoints_)
    if (!(t.grid() == u_bar_.grid))
      throw std::invalid_argument("ReplayJSource: grid mismatch");
  window_.resize(checkpoints_.size());
}

void ReplayJSource::prepare(int node) {
  if (node >= win_lo_ && node <= win_hi_) return;
  const int c = checkpoints_[0].stride();
  const int N = u_bar_.grid.n_steps;
  const int lo = (node / c) * c;
  const int hi = std::min(lo + c, N);
  const Layout lay = resolve_layout(*model_, u_bar_);

  GeneratorApplier gen(*model_);
  ApplyWorkspace ws;
  Rk4Workspace rk;
  RealVector v(lay.m);
  double alpha = 1.0;
  const double h = u_bar_.grid.h();

  for (size_t s = 0; s < checkpoints_.size(); ++s) {
    auto& buf = window_[s];
    buf.assign(size_t(hi - lo + 1), Matrix());
    Matrix J = checkpoints_[s].at(hi);
    buf[size_t(hi - lo)] = J;
    for (int q = hi - 1; q >= lo; --q) {
      interval_control(u_bar_, lay, q, v, alpha);
      gen.set_control(v, alpha);
      auto f = [&](double, const Matrix& x, Matrix& out) { gen.apply_adjoint(x, out, ws); };
      rk4_step_inplace(f, J, 0.0, h, rk);
      hermitize(J);
      if (!J.allFinite())
        throw NumericalError(node_context("replay window", int(s), q, u_bar_.grid.node(q), v));
      buf[size_t(q - lo)] = J;
    }
  }
  win_lo_ = lo;
  win_hi_ = hi;
  peak_ = std::max(peak_, checkpoints_[0].stored_count() + (hi - lo + 1));
}

const Matrix& ReplayJSource::at(int sigma, int node) const {
  if (node < win_lo_ || node > win_hi_)
    throw std::invalid_argument("ReplayJSource::at: node outside prepared window");
  return window_.at(size_t(sigma))[size_t(node - win_lo_)];
}

int ReplayJSource::peak_resident_samples() const { return peak_; }

Trajectory replay_forward_from_checkpoints(const LindbladModel& model,
                                           const ControlSignal& u_bar,
                                           const Trajectory& checkpoints) {
  if (checkpoints.stride() == 1) return checkpoints;
  const Layout lay = resolve_layout(model, u_bar);
  if (!(checkpoints.grid() == u_bar.grid))
    throw std::invalid_argument("replay: grid mismatch");

  const TimeGrid& g = checkpoints.grid();
  Trajectory dense(g, 1);
  GeneratorApplier gen(model);
  ApplyWorkspace ws;
  Rk4Workspace rk;
  RealVector v(lay.m);
  double alpha = 1.0;
  const double h = g.h();

  Matrix J;
  for (int k = 0; k <= g.n_steps; ++k) {
    if (checkpoints.has_node(k)) {
      J = checkpoints.at(k);  // reset to the stored sample at window starts
    } else {
      interval_control(u_bar, lay, k - 1, v, alpha);
      gen.set_control(v, alpha);
      // forward direction of the stored backward dynamics: dJ/dt = -L*(J)
      auto f = [&](double, const Matrix& x, Matrix& out) { gen.apply_adjoint(x, out, ws, -1.0); };
      rk4_step_inplace(f, J, 0.0, h, rk);
      hermitize(J);
      if (!J.allFinite())
        throw NumericalError(node_context("forward replay", -1, k, g.node(k), v));
    }
    dense.set(k, J);
  }
  return dense;
}

ForwardResult integrate_forward_closed_loop(const LindbladModel& model,
                                            const ControlSignal& u_bar, JSource& Jsrc,
                                            const std::vector<Matrix>& rho0,
                                            const ForwardOptions& opt) {
  const Layout lay = resolve_layout(model, u_bar);
  const TimeGrid& g = u_bar.grid;
  const int channels = u_bar.channels();
  const int N = g.n_steps;
  const int ns = int(rho0.size());
  const double h = g.h();

  if (opt.gains.size() != channels)
    throw std::invalid_argument("forward sweep: gains must match control channels");
  if ((opt.gains.array() < 0).any())
    throw std::invalid_argument("forward sweep: gains must be >= 0");
  if (!opt.gains.allFinite())
    throw std::invalid_argument("forward sweep: non-finite gain configuration");
  if (opt.box && lay.clock)
    throw std::invalid_argument("forward sweep: box bounds apply to fixed-time runs only");
  if (opt.clock) {
    if (!lay.clock)
      throw std::invalid_argument("forward sweep: clock policy requires clock layout");
    opt.clock->validate(lay.m);
    if (u_bar.values.row(0).cwiseAbs().maxCoeff() != 0.0)
      throw std::invalid_argument("forward sweep: clock saturation assumes vbar0 = 0");
  }
  if (opt.box && (opt.box->rows() != 2 || opt.box->cols() != lay.m))
    throw std::invalid_argument("forward sweep: box bounds must be 2 x m");
  if (ns == 0) throw std::invalid_argument("forward sweep: no states");
  for (const auto& r : rho0)
    if (r.rows() != model.dim() || r.cols() != model.dim())
      throw std::invalid_argument("forward sweep: rho0 dimension mismatch");

  ForwardResult res;
  res.u_new.grid = g;
  res.u_new.values.resize(channels, N + 1);
  res.V_series.resize(N + 1);
  res.F_series.resize(channels, N + 1);
  if (opt.rho_stride > 0)
    res.rho_trajs.assign(size_t(ns), Trajectory(g, opt.rho_stride));

  std::vector<Matrix> rho(rho0.begin(), rho0.end());
  if (opt.rho_stride > 0)
    for (int s = 0; s < ns; ++s) res.rho_trajs[size_t(s)].set(0, rho[size_t(s)]);

  GeneratorApplier gen(model);
  const size_t nsz = size_t(ns);
  std::vector<ApplyWorkspace> ws(nsz);
  std::vector<Rk4Workspace> rk(nsz);
  std::vector<Matrix> cmat(nsz);                 // rho_sigma * J_sigma
  std::vector<Matrix> drift(lay.clock ? nsz : size_t(0));
  RealMatrix Floc(channels, ns);
  RealVector overlap(ns);

  auto for_each_sigma = [&](const std::function<void(int)>& fn) {
    if (opt.pool) opt.pool->parallel_for(0, ns, fn);
    else for (int s = 0; s < ns; ++s) fn(s);
  };

  RealVector ucol(channels), v_phys(lay.m);
  for (int k = 0; k <= N; ++k) {
    Jsrc.prepare(k);

    // feedback channel values and overlaps, reduced serially in sigma order
    for_each_sigma([&](int s) {
      const Matrix& J = Jsrc.at(s, k);
      const Matrix& r = rho[size_t(s)];
      Matrix& C = cmat[size_t(s)];
      C.noalias() = r * J;
      overlap(s) = C.trace().real();
      const Matrix D = C - C.adjoint();
      const int off = lay.clock ? 1 : 0;
      for (int c = 0; c < lay.m; ++c)
        Floc(off + c, s) = trace_prod(D, model.control(c)).imag();
      if (lay.clock) {
        gen.apply_drift(r, drift[size_t(s)], ws[size_t(s)], 1.0);
        Floc(0, s) = trace_prod(J, drift[size_t(s)]).real();
      }
    });
    res.V_series(k) = double(ns) - overlap.sum();
    res.F_series.col(k) = Floc.rowwise().sum();

    // control update at the node (recorded for k == N, applied otherwise)
    if (!lay.clock) {
      ucol = u_bar.values.col(k) + opt.gains.cwiseProduct(res.F_series.col(k));
      if (opt.box)
        ucol = ucol.cwiseMax(opt.box->row(0).transpose()).cwiseMin(opt.box->row(1).transpose());
    } else {
      RealVector vtilde = opt.gains.cwiseProduct(res.F_series.col(k));
      if (opt.clock) {
        const RealVector ubar_prev = u_bar.values.col(k).tail(lay.m);
        vtilde = saturate_clock_aware(vtilde, ubar_prev, *opt.clock);
      }
      ucol = u_bar.values.col(k) + vtilde;
    }
    res.u_new.values.col(k) = ucol;
    if (k == N) break;

    double alpha = 1.0;
    if (lay.clock) { alpha = 1.0 + ucol(0); v_phys = ucol.tail(lay.m); }
    else v_phys = ucol;
    gen.set_control(v_phys, alpha);

    for_each_sigma([&](int s) {
      Matrix& r = rho[size_t(s)];
      // stage 1 of the clock step reuses the drift evaluated for F_0
      int stage = 0;
      auto f = [&](double, const Matrix& x, Matrix& out) {
        if (lay.clock && stage++ == 0) {
          out = alpha * drift[size_t(s)];
          for (int c = 0; c < lay.m; ++c)
            gen.add_control_comm(c, v_phys(c), x, out, ws[size_t(s)]);
        } else {
          gen.apply_forward(x, out, ws[size_t(s)]);
        }
      };
      rk4_step_inplace(f, r, 0.0, h, rk[size_t(s)]);
      hermitize(r);
      if (!r.allFinite())
        throw NumericalError(node_context("forward sweep", s, k + 1, g.node(k + 1), v_phys));
      if (opt.rho_stride > 0 && res.rho_trajs[size_t(s)].has_node(k + 1))
        res.rho_trajs[size_t(s)].set(k + 1, r);
    });
  }

  res.rho_final = std::move(rho);
  return res;
}

}  // namespace lyapgate
