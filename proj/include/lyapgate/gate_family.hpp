#pragma once

#include <string>
#include <vector>

#include "lyapgate/types.hpp"

namespace lyapgate {

enum class SigmaKind { Diag, RealPair, ImagPair };

// Multi-index sigma: diag(i), or a pair (i, j) with i > j. 1-based as in the
// labels "1", "21R", "31I".
struct SigmaIndex {
  SigmaKind kind = SigmaKind::Diag;
  int i = 1;
  int j = 0;
  std::string label() const;
};

// Two equally sized orthonormal vector sets pinning down the target gate at
// the density-matrix level.
struct GateSpec {
  std::vector<Vector> e;
  std::vector<Vector> f;
  int dim() const { return e.empty() ? 0 : int(e[0].size()); }
  int n_bar() const { return int(e.size()); }
};

struct GateMember {
  SigmaIndex sigma;
  Matrix rho_init;  // Pi_{eps_sigma}
  Matrix J_final;   // Pi_{phi_sigma}
  bool diagonal = false;
};

// The n_bar^2 member family in deterministic order: diagonal ascending, then
// real pairs (i, j) lexicographic, then imaginary pairs. diag_only restricts
// the active (Lyapunov) subset; the full family stays available for
// corrected-infidelity evaluation.
struct GateFamily {
  std::vector<GateMember> members;
  bool diag_only = false;
  int n_bar = 0;

  std::vector<int> active_indices() const;
  std::vector<int> offdiag_indices() const;
};

struct OrthoReport {
  Matrix gram;
  double max_deviation = 0.0;  // max |gram - I|
};
OrthoReport validate_orthonormal(const std::vector<Vector>& vecs);

// Builds the family from the spec. Each set must be orthonormal within
// ortho_tol (Gram deviation); pair vectors (e_j + e_i)/sqrt(2) and
// (e_j + i e_i)/sqrt(2) for i > j are renormalized so every member is an
// exact rank-1 projector even for quasi-orthogonal inputs.
GateFamily build_family(const GateSpec& spec, bool diag_only, double ortho_tol = 1e-8);

}  // namespace lyapgate
