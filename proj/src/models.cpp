#include "lyapgate/models.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "lyapgate/operators.hpp"

namespace lyapgate {

namespace {

Vector kron_vec(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

}  // namespace

BuiltModel build_zgate(const ZGatePreset& p) {
  if (!(p.kappa2 > 0)) throw std::invalid_argument("zgate preset: kappa2 must be > 0");
  if (p.kappa1 < 0) throw std::invalid_argument("zgate preset: kappa1 must be >= 0");
  if (p.n_levels < 2) throw std::invalid_argument("zgate preset: n_levels must be >= 2");

  const int n = p.n_levels;
  const Matrix a = annihilation(n);
  const Matrix confine = a * a - (p.alpha * p.alpha) * identity(n);

  std::vector<Matrix> jumps;
  jumps.push_back(std::sqrt(p.kappa2) * confine);
  if (p.kappa1 > 0) jumps.push_back(std::sqrt(p.kappa1) * a);

  GateSpec gate;
  gate.e = {cat_state(p.alpha, Parity::Even, n), cat_state(p.alpha, Parity::Odd, n)};
  gate.f = {gate.e[1], gate.e[0]};  // parity swap

  return {LindbladModel(Matrix::Zero(n, n), {a + dagger(a)}, std::move(jumps)),
          std::move(gate)};
}

BuiltModel build_cnot(const CnotPreset& p) {
  if (!(p.alpha2 > 0)) throw std::invalid_argument("cnot preset: alpha2 must be > 0");
  if (!(p.k2 > 0)) throw std::invalid_argument("cnot preset: k2 must be > 0");
  if (p.k1 < 0) throw std::invalid_argument("cnot preset: k1 must be >= 0");
  if (p.n_fock < 2) throw std::invalid_argument("cnot preset: n_fock must be >= 2");

  const int n = p.n_fock;
  const int dim = n * n * 2;
  if (dim > p.dim_warn_budget) {
    const double mb = double(dim) * dim * sizeof(Complex) / (1024.0 * 1024.0);
    std::fprintf(stderr, "note: cnot model dimension %d (%.0f MB per dense matrix path)\n",
                 dim, 16 * mb);
  }

  const double alpha = std::sqrt(p.alpha2);
  const Matrix a = annihilation(n);
  const Matrix id = identity(n);
  const Matrix id2 = identity(2);
  const Matrix confine = a * a - p.alpha2 * id;

  Matrix ege = Matrix::Zero(2, 2);  // |e><g| with |g> = (1,0), |e> = (0,1)
  ege(1, 0) = 1.0;

  const Matrix h0_half = p.g2 * kron(kron(confine, id), ege);
  const Matrix H0 = h0_half + dagger(h0_half);
  const Matrix H1 =
      kron(kron(a + dagger(a) - 2.0 * alpha * id, number_operator(n) - p.alpha2 * id), id2);

  std::vector<Matrix> jumps;
  jumps.push_back(std::sqrt(p.k2) * kron(kron(confine, id), id2));
  if (p.k1 > 0) {
    jumps.push_back(std::sqrt(p.k1) * kron(kron(a, id), id2));
    jumps.push_back(std::sqrt(p.k1) * kron(kron(id, a), id2));
  }

  const Vector zero_l = coherent_state(alpha, n);
  const Vector one_l = coherent_state(-alpha, n);
  Vector g = Vector::Zero(2);
  g(0) = 1.0;

  GateSpec gate;
  gate.e = {kron_vec(kron_vec(zero_l, zero_l), g), kron_vec(kron_vec(zero_l, one_l), g),
            kron_vec(kron_vec(one_l, zero_l), g), kron_vec(kron_vec(one_l, one_l), g)};
  gate.f = {gate.e[0], gate.e[1], gate.e[3], gate.e[2]};  // flip target when control is 1_L

  return {LindbladModel(H0, {H1}, std::move(jumps)), std::move(gate)};
}

ControlSignal adiabatic_control(double Tf, double alpha, int n_steps) {
  if (!(Tf > 0)) throw std::invalid_argument("adiabatic control: Tf must be > 0");
  if (alpha == 0) throw std::invalid_argument("adiabatic control: alpha must be nonzero");
  RealVector level(1);
  level(0) = std::numbers::pi / (4.0 * Tf * alpha);
  return ControlSignal::constant(TimeGrid(0.0, Tf, n_steps), level);
}

}  // namespace lyapgate
