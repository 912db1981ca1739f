#pragma once

#include <vector>

#include "lyapgate/gate_family.hpp"
#include "lyapgate/model.hpp"

namespace lyapgate {

// One solver step's worth of diagnostics; mirrors the iterations.csv row.
// corrected_infidelity and handoff_err are NaN when not available (first
// iteration / corrected pass not run).
struct IterationReport {
  int ell = 0;
  double V_initial = 0.0;
  double V_final = 0.0;
  double handoff_err = 0.0;
  double infidelity = 0.0;
  double corrected_infidelity = 0.0;
  double Tf = 0.0;
  double stationarity_residual = 0.0;
  double control_l2_change = 0.0;
};

// V = |set| - sum_sigma trace(J_sigma rho_sigma); the caller passes the
// active sigma subset, so the constant is n_bar^2 for full-family runs and
// |Lambda_active| under diag_only.
double lyapunov(const std::vector<Matrix>& J, const std::vector<Matrix>& rho);

// Worst case over the requested members of 1 - <phi|rho(Tf)|phi>. rho_finals
// must be indexed like `indices`.
double gate_infidelity(const std::vector<Matrix>& rho_finals, const GateFamily& family,
                       const std::vector<int>& indices);

// Sup over channels and nodes of |F_k(t)|.
double stationarity_residual(const RealMatrix& F_series);

// Sum_sigma trace(Pi_phi_sigma L_u(rho_sigma(Tf))): the free-final-time
// first-order condition, reported as a diagnostic near a time-optimal point.
double tf_stationarity(const std::vector<Matrix>& rho_finals, const std::vector<Matrix>& targets,
                       const LindbladModel& model, const RealVector& u_final);

}  // namespace lyapgate
