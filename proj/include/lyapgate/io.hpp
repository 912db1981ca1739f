#pragma once

#include <string>
#include <vector>

#include "lyapgate/grid.hpp"
#include "lyapgate/metrics.hpp"

namespace lyapgate {

// One row per solver step, %.17g round-trip precision, NaN fields left
// empty. Fixed column order:
//   ell,V0,VTf,handoff_err,infidelity,corrected_infidelity,Tf,stat_residual,u_l2_change
void write_iterations_csv(const std::string& path, const std::vector<IterationReport>& reports);

// Header "time,u_1,..,u_m", one row per grid node.
void write_control_csv(const std::string& path, const ControlSignal& u);

// Parses a control CSV back onto a uniform grid (spacing uniform within 1e-9
// relative). Malformed rows and non-finite samples are reported by row number.
ControlSignal read_control_csv(const std::string& path);

struct SweepPoint {
  double Tf = 0.0;
  double infidelity = 0.0;
  double corrected_infidelity = 0.0;
};

// Header "Tf,infidelity,corrected_infidelity".
void write_sweep_csv(const std::string& path, const std::vector<SweepPoint>& points);

}  // namespace lyapgate
