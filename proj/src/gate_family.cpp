#include "lyapgate/gate_family.hpp"

#include "lyapgate/operators.hpp"

namespace lyapgate {

std::string SigmaIndex::label() const {
  switch (kind) {
    case SigmaKind::Diag: return std::to_string(i);
    case SigmaKind::RealPair: return std::to_string(i) + std::to_string(j) + "R";
    case SigmaKind::ImagPair: return std::to_string(i) + std::to_string(j) + "I";
  }
  return "?";
}

std::vector<int> GateFamily::active_indices() const {
  std::vector<int> idx;
  for (int s = 0; s < int(members.size()); ++s)
    if (!diag_only || members[size_t(s)].diagonal) idx.push_back(s);
  return idx;
}

std::vector<int> GateFamily::offdiag_indices() const {
  std::vector<int> idx;
  for (int s = 0; s < int(members.size()); ++s)
    if (!members[size_t(s)].diagonal) idx.push_back(s);
  return idx;
}

OrthoReport validate_orthonormal(const std::vector<Vector>& vecs) {
  OrthoReport r;
  const int n = int(vecs.size());
  r.gram.resize(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      r.gram(i, j) = vecs[size_t(i)].dot(vecs[size_t(j)]);
  r.max_deviation = (r.gram - Matrix::Identity(n, n)).cwiseAbs().maxCoeff();
  return r;
}

namespace {

void require_orthonormal(const std::vector<Vector>& vecs, double tol, const char* name) {
  const int n = int(vecs.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) {
      const Complex g = vecs[size_t(i)].dot(vecs[size_t(j)]);
      const double dev = std::abs(g - (i == j ? Complex(1, 0) : Complex(0, 0)));
      if (dev > tol)
        throw std::invalid_argument(std::string(name) + " set not orthonormal: pair (" +
                                    std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                    ") deviates by " + std::to_string(dev));
    }
}

// Pair member (lower + coeff*higher), renormalized so quasi-orthogonal bases
// (e.g. coherent states with overlap e^{-2|alpha|^2}) still yield unit vectors.
Vector combine(const Vector& a, const Vector& b, Complex coeff) {
  Vector v = a + coeff * b;
  return v / v.norm();
}

}  // namespace

GateFamily build_family(const GateSpec& spec, bool diag_only, double ortho_tol) {
  const int nb = spec.n_bar();
  if (nb < 1) throw std::invalid_argument("gate spec must contain at least one vector");
  if (int(spec.f.size()) != nb)
    throw std::invalid_argument("gate spec: e and f sets must have equal size");
  for (const auto& v : spec.e)
    if (int(v.size()) != spec.dim())
      throw std::invalid_argument("gate spec: inconsistent vector dimensions");
  for (const auto& v : spec.f)
    if (int(v.size()) != spec.dim())
      throw std::invalid_argument("gate spec: inconsistent vector dimensions");
  require_orthonormal(spec.e, ortho_tol, "e");
  require_orthonormal(spec.f, ortho_tol, "f");

  GateFamily fam;
  fam.diag_only = diag_only;
  fam.n_bar = nb;
  fam.members.reserve(size_t(nb) * size_t(nb));

  auto add = [&](SigmaIndex sig, const Vector& eps, const Vector& phi, bool diag) {
    GateMember m;
    m.sigma = sig;
    m.rho_init = projector(eps);
    m.J_final = projector(phi);
    m.diagonal = diag;
    fam.members.push_back(std::move(m));
  };

  for (int i = 1; i <= nb; ++i)
    add({SigmaKind::Diag, i, 0}, spec.e[size_t(i - 1)], spec.f[size_t(i - 1)], true);
  for (int i = 2; i <= nb; ++i)
    for (int j = 1; j < i; ++j)
      add({SigmaKind::RealPair, i, j},
          combine(spec.e[size_t(j - 1)], spec.e[size_t(i - 1)], Complex(1, 0)),
          combine(spec.f[size_t(j - 1)], spec.f[size_t(i - 1)], Complex(1, 0)), false);
  for (int i = 2; i <= nb; ++i)
    for (int j = 1; j < i; ++j)
      add({SigmaKind::ImagPair, i, j},
          combine(spec.e[size_t(j - 1)], spec.e[size_t(i - 1)], Complex(0, 1)),
          combine(spec.f[size_t(j - 1)], spec.f[size_t(i - 1)], Complex(0, 1)), false);

  return fam;
}

}  // namespace lyapgate
