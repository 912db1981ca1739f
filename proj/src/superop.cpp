#include "lyapgate/superop.hpp"

namespace lyapgate {

GeneratorApplier::GeneratorApplier(const LindbladModel& model) : model_(&model) {
  const auto n = model.dim();
  heff_.resize(n, n);
  g_.resize(n, n);
  gdag_.resize(n, n);
  d0_ = Complex(0, 1) * model.H0() + model.half_sum_LdagL();
  set_control(RealVector::Zero(model.num_controls()), 1.0);
}

void GeneratorApplier::set_control(const RealVector& v, double alpha) {
  if (v.size() != model_->num_controls())
    throw std::invalid_argument("set_control: control vector length mismatch");
  alpha_ = alpha;
  heff_ = alpha * model_->H0();
  for (int k = 0; k < model_->num_controls(); ++k)
    heff_.noalias() += v(k) * model_->control(k);
  g_ = Complex(0, 1) * heff_ + alpha * model_->half_sum_LdagL();
  gdag_ = g_.adjoint();
}

void GeneratorApplier::apply_forward(const Matrix& x, Matrix& out,
                                     ApplyWorkspace& ws) const {
  ws.resize(x.rows());
  ws.w.noalias() = g_ * x;
  out = -ws.w - ws.w.adjoint();
  for (int q = 0; q < model_->num_jumps(); ++q) {
    ws.t.noalias() = model_->jump(q) * x;
    out.noalias() += alpha_ * (ws.t * model_->jump_dag(q));
  }
}

void GeneratorApplier::apply_adjoint(const Matrix& x, Matrix& out,
                                     ApplyWorkspace& ws, double sign) const {
  ws.resize(x.rows());
  ws.w.noalias() = gdag_ * x;
  out = -sign * ws.w - sign * ws.w.adjoint();
  for (int q = 0; q < model_->num_jumps(); ++q) {
    ws.t.noalias() = model_->jump_dag(q) * x;
    out.noalias() += (sign * alpha_) * (ws.t * model_->jump(q));
  }
}

void GeneratorApplier::apply_drift(const Matrix& x, Matrix& out,
                                   ApplyWorkspace& ws, double alpha) const {
  ws.resize(x.rows());
  ws.w.noalias() = d0_ * x;
  out = -alpha * ws.w - alpha * ws.w.adjoint();
  for (int q = 0; q < model_->num_jumps(); ++q) {
    ws.t.noalias() = model_->jump(q) * x;
    out.noalias() += alpha * (ws.t * model_->jump_dag(q));
  }
}

void GeneratorApplier::add_control_comm(int k0, double coeff, const Matrix& x,
                                        Matrix& out, ApplyWorkspace& ws) const {
  ws.resize(x.rows());
  ws.w.noalias() = model_->control(k0) * x;
  out.noalias() += Complex(0, -coeff) * ws.w;
  out.noalias() += Complex(0, coeff) * ws.w.adjoint();
}

}  // namespace lyapgate
