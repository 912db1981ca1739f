#pragma once

#include "lyapgate/gate_family.hpp"
#include "lyapgate/grid.hpp"
#include "lyapgate/model.hpp"

namespace lyapgate {

// Single cat qubit: two-photon pumping at kappa2 confines to the +-alpha
// manifold, single-photon loss at kappa1 dephases the cat; one linear-drive
// control channel a + a^dag.
struct ZGatePreset {
  double alpha = 2.0;
  int n_levels = 20;
  double kappa2 = 1.0;
  double kappa1 = 0.01;
};

// Control cat-qubit x target cat-qubit x ancilla qubit; dim = n_fock^2 * 2.
// n_fock = 17 reproduces the reference precision; 10 is the desk-scale
// truncation used by the fast test profile.
struct CnotPreset {
  double alpha2 = 4.0;
  int n_fock = 17;
  double g2 = 10.0;
  double k2 = 1.0;
  double k1 = 0.001;
  int dim_warn_budget = 600;  // stderr memory note above this dimension
};

struct BuiltModel {
  LindbladModel model;
  GateSpec gate;
};

// Z-gate on one cat qubit: swap the even and odd cat states.
BuiltModel build_zgate(const ZGatePreset& p);

// CNOT on two cat qubits with a g2-coupled ancilla; targets are coherent
// (not cat) logical states |0_L> ~ |+alpha>, |1_L> ~ |-alpha>, so the gate
// basis is only quasi-orthogonal (overlap e^{-2 alpha^2}).
BuiltModel build_cnot(const CnotPreset& p);

// Constant turning pulse u(t) = pi / (4 Tf alpha), area pi/(4 alpha)
// independent of Tf, sampled on an n_steps grid over [0, Tf].
ControlSignal adiabatic_control(double Tf, double alpha, int n_steps);

}  // namespace lyapgate
