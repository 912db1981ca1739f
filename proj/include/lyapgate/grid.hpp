#pragma once

#include <vector>

#include "lyapgate/types.hpp"

namespace lyapgate {

struct TimeGrid {
  double t_start = 0.0;
  double t_end = 1.0;
  int n_steps = 1;

  TimeGrid() = default;
  TimeGrid(double t0, double t1, int n);

  double h() const { return (t_end - t_start) / n_steps; }
  int n_nodes() const { return n_steps + 1; }
  double node(int k) const { return t_start + k * h(); }
  bool operator==(const TimeGrid&) const = default;
};

// Node-sampled control signal. The applied signal is the zero-order hold of
// the left-node value on [t_k, t_{k+1}); the node-N column is recorded for
// export/diagnostics and never drives a step.
struct ControlSignal {
  TimeGrid grid;
  RealMatrix values;  // channels x n_nodes

  int channels() const { return int(values.rows()); }
  static ControlSignal constant(const TimeGrid& g, const RealVector& levels);
  static ControlSignal zero(const TimeGrid& g, int channels);
};

// Matrix path sampled on grid nodes at a checkpoint stride: stride 1 keeps
// every node, stride c keeps nodes 0, c, 2c, ... plus the final node.
class Trajectory {
 public:
  Trajectory() = default;
  Trajectory(const TimeGrid& grid, int stride);

  const TimeGrid& grid() const { return grid_; }
  int stride() const { return stride_; }
  bool has_node(int k) const;
  void set(int k, const Matrix& m);
  const Matrix& at(int k) const;
  int stored_count() const { return int(samples_.size()); }

  static bool keeps(int node, int stride, int n_steps);

 private:
  TimeGrid grid_;
  int stride_ = 1;
  std::vector<int> slot_;  // node index -> sample index, -1 when not kept
  std::vector<Matrix> samples_;
};

// Trapezoidal quadrature of node samples on a uniform grid of step h.
double trapezoid(const RealVector& y, double h);
// Cumulative trapezoid, out(k) = integral over [0, t_k]; out(0) = 0.
RealVector cumtrapezoid(const RealVector& y, double h);

// Monotone linear interpolation of (x, y) node data at query points xq.
// x must be strictly increasing; queries are clamped to [x.front, x.back].
RealVector interp_linear(const RealVector& x, const RealVector& y, const RealVector& xq);

}  // namespace lyapgate
