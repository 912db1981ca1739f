#include "lyapgate/model.hpp"

#include <string>

namespace lyapgate {

LindbladModel::LindbladModel(Matrix H0, std::vector<Matrix> controls,
                             std::vector<Matrix> jumps, double hermiticity_tol)
    : H0_(std::move(H0)), controls_(std::move(controls)), jumps_(std::move(jumps)) {
  const auto n = H0_.rows();
  if (n < 1 || H0_.cols() != n) throw std::invalid_argument("H0 must be square, dim >= 1");
  if (!is_hermitian(H0_, hermiticity_tol))
    throw std::invalid_argument("H0 must be Hermitian");
  for (size_t k = 0; k < controls_.size(); ++k) {
    if (controls_[k].rows() != n || controls_[k].cols() != n)
      throw std::invalid_argument("control " + std::to_string(k + 1) + ": dimension mismatch");
    if (!is_hermitian(controls_[k], hermiticity_tol))
      throw std::invalid_argument("control " + std::to_string(k + 1) + " must be Hermitian");
  }
  S_ = Matrix::Zero(n, n);
  jump_dags_.reserve(jumps_.size());
  for (size_t q = 0; q < jumps_.size(); ++q) {
    if (jumps_[q].rows() != n || jumps_[q].cols() != n)
      throw std::invalid_argument("jump " + std::to_string(q + 1) + ": dimension mismatch");
    jump_dags_.push_back(jumps_[q].adjoint());
    S_.noalias() += 0.5 * (jump_dags_[q] * jumps_[q]);
  }
}

Matrix apply_drift(const LindbladModel& m, const Matrix& rho) {
  if (rho.rows() != m.dim() || rho.cols() != m.dim())
    throw std::invalid_argument("apply_drift: dimension mismatch");
  Matrix out = Complex(0, -1) * (m.H0() * rho - rho * m.H0());
  for (int q = 0; q < m.num_jumps(); ++q)
    out += m.jump(q) * rho * m.jump_dag(q);
  out -= m.half_sum_LdagL() * rho + rho * m.half_sum_LdagL();
  return out;
}

Matrix apply_control_superop(const LindbladModel& m, int k, const Matrix& rho) {
  if (k < 1 || k > m.num_controls())
    throw std::invalid_argument("control channel out of range: " + std::to_string(k));
  if (rho.rows() != m.dim() || rho.cols() != m.dim())
    throw std::invalid_argument("apply_control_superop: dimension mismatch");
  const Matrix& H = m.control(k - 1);
  return Complex(0, -1) * (H * rho - rho * H);
}

Matrix apply_lindblad(const LindbladModel& m, const RealVector& u, const Matrix& rho) {
  if (u.size() != m.num_controls())
    throw std::invalid_argument("apply_lindblad: control vector length mismatch");
  Matrix out = apply_drift(m, rho);
  for (int k = 0; k < m.num_controls(); ++k)
    out += u(k) * apply_control_superop(m, k + 1, rho);
  return out;
}

Matrix apply_adjoint(const LindbladModel& m, const RealVector& u, const Matrix& J) {
  if (u.size() != m.num_controls())
    throw std::invalid_argument("apply_adjoint: control vector length mismatch");
  if (J.rows() != m.dim() || J.cols() != m.dim())
    throw std::invalid_argument("apply_adjoint: dimension mismatch");
  Matrix H = m.H0();
  for (int k = 0; k < m.num_controls(); ++k) H += u(k) * m.control(k);
  Matrix out = Complex(0, 1) * (H * J - J * H);
  for (int q = 0; q < m.num_jumps(); ++q)
    out += m.jump_dag(q) * J * m.jump(q);
  out -= m.half_sum_LdagL() * J + J * m.half_sum_LdagL();
  return out;
}

namespace {
StateDiagnostics diagnose(const Matrix& x) {
  StateDiagnostics d;
  d.hermiticity_dev = (x - x.adjoint()).cwiseAbs().maxCoeff();
  d.trace_dev = std::abs(x.trace() - Complex(1, 0));
  Eigen::SelfAdjointEigenSolver<Matrix> es((0.5 * (x + x.adjoint())).eval());
  d.min_eigenvalue = es.eigenvalues().minCoeff();
  d.max_eigenvalue = es.eigenvalues().maxCoeff();
  return d;
}
}  // namespace

StateDiagnostics diagnose_density(const Matrix& rho) { return diagnose(rho); }
StateDiagnostics diagnose_observable(const Matrix& J) { return diagnose(J); }

}  // namespace lyapgate
