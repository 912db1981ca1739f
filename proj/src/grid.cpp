#include "lyapgate/grid.hpp"

#include <string>

namespace lyapgate {

TimeGrid::TimeGrid(double t0, double t1, int n) : t_start(t0), t_end(t1), n_steps(n) {
  if (!(t1 > t0)) throw std::invalid_argument("TimeGrid: t_end must exceed t_start");
  if (n < 1) throw std::invalid_argument("TimeGrid: n_steps must be >= 1");
}

ControlSignal ControlSignal::constant(const TimeGrid& g, const RealVector& levels) {
  ControlSignal c;
  c.grid = g;
  c.values = levels.replicate(1, g.n_nodes());
  return c;
}

ControlSignal ControlSignal::zero(const TimeGrid& g, int channels) {
  ControlSignal c;
  c.grid = g;
  c.values = RealMatrix::Zero(channels, g.n_nodes());
  return c;
}

Trajectory::Trajectory(const TimeGrid& grid, int stride) : grid_(grid), stride_(stride) {
  if (stride < 1) throw std::invalid_argument("Trajectory: stride must be >= 1");
  slot_.assign(size_t(grid.n_nodes()), -1);
  int count = 0;
  for (int k = 0; k < grid.n_nodes(); ++k)
    if (keeps(k, stride, grid.n_steps)) slot_[size_t(k)] = count++;
  samples_.resize(size_t(count));
}

bool Trajectory::keeps(int node, int stride, int n_steps) {
  return node % stride == 0 || node == n_steps;
}

bool Trajectory::has_node(int k) const {
  return k >= 0 && k < int(slot_.size()) && slot_[size_t(k)] >= 0;
}

void Trajectory::set(int k, const Matrix& m) {
  if (!has_node(k)) throw std::invalid_argument("Trajectory::set: node not kept: " + std::to_string(k));
  samples_[size_t(slot_[size_t(k)])] = m;
}

const Matrix& Trajectory::at(int k) const {
  if (!has_node(k)) throw std::invalid_argument("Trajectory::at: node not kept: " + std::to_string(k));
  return samples_[size_t(slot_[size_t(k)])];
}

double trapezoid(const RealVector& y, double h) {
  const auto n = y.size();
  if (n < 2) return 0.0;
  return h * (y.sum() - 0.5 * (y(0) + y(n - 1)));
}

RealVector cumtrapezoid(const RealVector& y, double h) {
  RealVector out(y.size());
  out(0) = 0.0;
  for (Eigen::Index k = 1; k < y.size(); ++k)
    out(k) = out(k - 1) + 0.5 * h * (y(k - 1) + y(k));
  return out;
}

RealVector interp_linear(const RealVector& x, const RealVector& y, const RealVector& xq) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("interp_linear: need matching x/y with >= 2 nodes");
  for (Eigen::Index k = 1; k < x.size(); ++k)
    if (!(x(k) > x(k - 1)))
      throw std::invalid_argument("interp_linear: x must be strictly increasing");
  RealVector out(xq.size());
  Eigen::Index j = 0;
  for (Eigen::Index q = 0; q < xq.size(); ++q) {
    double t = xq(q);
    if (t <= x(0)) { out(q) = y(0); continue; }
    if (t >= x(x.size() - 1)) { out(q) = y(y.size() - 1); continue; }
    // queries are typically sorted; advance j, falling back to a rescan
    if (q > 0 && xq(q) < xq(q - 1)) j = 0;
    while (x(j + 1) < t) ++j;
    const double w = (t - x(j)) / (x(j + 1) - x(j));
    out(q) = (1.0 - w) * y(j) + w * y(j + 1);
  }
  return out;
}

}  // namespace lyapgate
