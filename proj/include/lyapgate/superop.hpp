#pragma once

#include "lyapgate/model.hpp"

namespace lyapgate {

// Per-call scratch for GeneratorApplier; one instance per concurrent state so
// parallel sigma-copies never contend.
struct ApplyWorkspace {
  Matrix w, t;
  void resize(Eigen::Index n) {
    if (w.rows() != n) { w.resize(n, n); t.resize(n, n); }
  }
};

// Workspace-backed generator application for the hot integration loops.
// Configured per ZOH interval via set_control(v, alpha) where alpha = 1 + v0
// is the time-dilation factor (1 for fixed-time runs) and v holds one
// coefficient per physical channel (virtual-channel values v_k = alpha*u_k in
// clock runs, plain u_k otherwise):
//
//   H_eff = alpha*H0 + sum_k v_k H_k,   G = i H_eff + alpha*S
//
//   apply_forward(X)  = -(G X + (G X)^dag) + alpha * sum_q L_q X L_q^dag
//   apply_adjoint(X)  = sign * [ -(G^dag X + (G^dag X)^dag) + alpha * sum_q L_q^dag X L_q ]
//
// Both exploit Hermiticity of X (valid for every RK4 stage input: the
// superoperators preserve Hermiticity, so stage combinations stay Hermitian):
// the commutator/anticommutator half costs one gemm, each dissipator two.
class GeneratorApplier {
 public:
  explicit GeneratorApplier(const LindbladModel& model);

  void set_control(const RealVector& v, double alpha = 1.0);

  void apply_forward(const Matrix& x, Matrix& out, ApplyWorkspace& ws) const;
  void apply_adjoint(const Matrix& x, Matrix& out, ApplyWorkspace& ws,
                     double sign = 1.0) const;

  // out = alpha * L0(x), independent of the configured control (alpha
  // explicit so feedback evaluation can use the undilated drift).
  void apply_drift(const Matrix& x, Matrix& out, ApplyWorkspace& ws,
                   double alpha = 1.0) const;

  // out += coeff * (-i)[H_k, x], k0 zero-based. One gemm (x Hermitian).
  void add_control_comm(int k0, double coeff, const Matrix& x, Matrix& out,
                        ApplyWorkspace& ws) const;

  const LindbladModel& model() const { return *model_; }
  double alpha() const { return alpha_; }

 private:
  const LindbladModel* model_;
  double alpha_ = 1.0;
  Matrix heff_, g_, gdag_, d0_;  // d0 = i H0 + S (drift generator, alpha-free)
};

}  // namespace lyapgate
