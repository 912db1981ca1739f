#pragma once

#include <vector>

#include "lyapgate/types.hpp"

namespace lyapgate {

// Open-system model data: drift Hamiltonian H0, control Hamiltonians H_k
// (k = 1..m), jump operators L_q with rates absorbed as sqrt(rate) factors.
// Immutable after construction; L_q^dag and S = 1/2 sum_q L_q^dag L_q are
// precomputed since they appear in every superoperator application.
class LindbladModel {
 public:
  LindbladModel(Matrix H0, std::vector<Matrix> controls, std::vector<Matrix> jumps,
                double hermiticity_tol = 1e-12);

  int dim() const { return int(H0_.rows()); }
  int num_controls() const { return int(controls_.size()); }
  int num_jumps() const { return int(jumps_.size()); }
  const Matrix& H0() const { return H0_; }
  const Matrix& control(int k0) const { return controls_.at(size_t(k0)); }  // 0-based
  const Matrix& jump(int q) const { return jumps_.at(size_t(q)); }
  const Matrix& jump_dag(int q) const { return jump_dags_.at(size_t(q)); }
  const Matrix& half_sum_LdagL() const { return S_; }

 private:
  Matrix H0_;
  std::vector<Matrix> controls_;
  std::vector<Matrix> jumps_;
  std::vector<Matrix> jump_dags_;
  Matrix S_;
};

// Reference superoperator applications (allocating; tests and cold paths).
// The hot integration loops use GeneratorApplier instead.

// L0(rho) = -i[H0, rho] + sum_q (L_q rho L_q^dag - 1/2 {L_q^dag L_q, rho})
Matrix apply_drift(const LindbladModel& model, const Matrix& rho);

// L_k(rho) = -i[H_k, rho], channel k = 1..m.
Matrix apply_control_superop(const LindbladModel& model, int k, const Matrix& rho);

// L_u = L0 + sum_k u_k L_k
Matrix apply_lindblad(const LindbladModel& model, const RealVector& u, const Matrix& rho);

// L*_u(J) = +i[H0 + sum_k u_k H_k, J] + sum_q (L_q^dag J L_q - 1/2 {L_q^dag L_q, J})
Matrix apply_adjoint(const LindbladModel& model, const RealVector& u, const Matrix& J);

// Diagnostic state checks (not applied on every integration step).
struct StateDiagnostics {
  double hermiticity_dev = 0.0;
  double trace_dev = 0.0;       // |trace - 1|
  double min_eigenvalue = 0.0;
  double max_eigenvalue = 0.0;
};
StateDiagnostics diagnose_density(const Matrix& rho);
StateDiagnostics diagnose_observable(const Matrix& J);

}  // namespace lyapgate
