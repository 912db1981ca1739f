#include "lyapgate/metrics.hpp"

namespace lyapgate {

double lyapunov(const std::vector<Matrix>& J, const std::vector<Matrix>& rho) {
  if (J.size() != rho.size())
    throw std::invalid_argument("lyapunov: sigma set mismatch");
  double overlap = 0.0;
  for (size_t s = 0; s < J.size(); ++s)
    overlap += trace_prod(J[s], rho[s]).real();
  return double(J.size()) - overlap;
}

double gate_infidelity(const std::vector<Matrix>& rho_finals, const GateFamily& family,
                       const std::vector<int>& indices) {
  if (rho_finals.size() != indices.size())
    throw std::invalid_argument("gate_infidelity: rho_finals/indices mismatch");
  double worst = 0.0;
  for (size_t s = 0; s < indices.size(); ++s) {
    const auto& target = family.members.at(size_t(indices[s])).J_final;
    worst = std::max(worst, 1.0 - trace_prod(target, rho_finals[s]).real());
  }
  return worst;
}

double stationarity_residual(const RealMatrix& F_series) {
  if (F_series.size() == 0) return 0.0;
  return F_series.cwiseAbs().maxCoeff();
}

double tf_stationarity(const std::vector<Matrix>& rho_finals, const std::vector<Matrix>& targets,
                       const LindbladModel& model, const RealVector& u_final) {
  if (rho_finals.size() != targets.size())
    throw std::invalid_argument("tf_stationarity: rho/target mismatch");
  double acc = 0.0;
  for (size_t s = 0; s < rho_finals.size(); ++s)
    acc += trace_prod(targets[s], apply_lindblad(model, u_final, rho_finals[s])).real();
  return acc;
}

}  // namespace lyapgate
