#pragma once

#include "lyapgate/types.hpp"

namespace lyapgate {

struct Rk4Workspace {
  Matrix k1, k2, k3, k4, stage;
  void resize(Eigen::Index rows, Eigen::Index cols) {
    if (k1.rows() != rows || k1.cols() != cols) {
      k1.resize(rows, cols); k2.resize(rows, cols); k3.resize(rows, cols);
      k4.resize(rows, cols); stage.resize(rows, cols);
    }
  }
};

// Classical RK4, stage evaluations at t, t+h/2, t+h/2, t+h; f(t, X, out).
// h < 0 integrates backward.
template <class F>
void rk4_step_inplace(F&& f, Matrix& x, double t, double h, Rk4Workspace& w) {
  w.resize(x.rows(), x.cols());
  f(t, x, w.k1);
  w.stage = x + (h / 2) * w.k1;
  f(t + h / 2, w.stage, w.k2);
  w.stage = x + (h / 2) * w.k2;
  f(t + h / 2, w.stage, w.k3);
  w.stage = x + h * w.k3;
  f(t + h, w.stage, w.k4);
  x += (h / 6) * (w.k1 + 2 * w.k2 + 2 * w.k3 + w.k4);
}

template <class F>
Matrix rk4_step(F&& f, const Matrix& x, double t, double h) {
  Rk4Workspace w;
  Matrix y = x;
  rk4_step_inplace(f, y, t, h, w);
  return y;
}

}  // namespace lyapgate
