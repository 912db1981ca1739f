#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "lyapgate/operators.hpp"
#include "lyapgate/superop.hpp"

using namespace lyapgate;

namespace {

std::mt19937_64 rng(7);

Matrix random_hermitian(int n) {
  std::normal_distribution<double> d;
  Matrix m(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) m(r, c) = Complex(d(rng), d(rng));
  return 0.5 * (m + m.adjoint()).eval();
}

Matrix random_matrix(int n) {
  std::normal_distribution<double> d;
  Matrix m(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) m(r, c) = Complex(d(rng), d(rng));
  return m;
}

Matrix random_density(int n) {
  Matrix a = random_matrix(n);
  Matrix rho = a * a.adjoint();
  rho /= rho.trace();
  return rho;
}

LindbladModel random_model(int n, int m, int p) {
  std::vector<Matrix> controls, jumps;
  for (int k = 0; k < m; ++k) controls.push_back(random_hermitian(n));
  for (int q = 0; q < p; ++q) jumps.push_back(random_matrix(n));
  return LindbladModel(random_hermitian(n), controls, jumps);
}

RealVector random_control(int m) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  RealVector v(m);
  for (int k = 0; k < m; ++k) v(k) = u(rng);
  return v;
}

Complex hs_inner(const Matrix& a, const Matrix& b) {
  return (a.adjoint() * b).trace();
}

}  // namespace

TEST_CASE("model validates Hermiticity and dimensions") {
  Matrix h = random_hermitian(3);
  Matrix nh = random_matrix(3);
  CHECK_THROWS_AS(LindbladModel(nh, {}, {}), std::invalid_argument);
  CHECK_THROWS_AS(LindbladModel(h, {nh}, {}), std::invalid_argument);
  CHECK_THROWS_AS(LindbladModel(h, {}, {random_matrix(4)}),
                  std::invalid_argument);
  const LindbladModel ok(h, {random_hermitian(3)}, {nh});
  CHECK(ok.dim() == 3);
  CHECK(ok.num_controls() == 1);
  CHECK(ok.num_jumps() == 1);
  // S = 1/2 sum L^dag L precomputed
  CHECK((ok.half_sum_LdagL() - 0.5 * (nh.adjoint() * nh).eval())
            .cwiseAbs()
            .maxCoeff() <= 1e-14);
}

TEST_CASE("single decay channel acts as the textbook amplitude damping") {
  // L = sqrt(kappa) a on a 2-level space; rho = |1><1| decays to |0><0|
  const double kappa = 0.3;
  const Matrix a = std::sqrt(kappa) * annihilation(2);
  const LindbladModel model(Matrix::Zero(2, 2), {}, {a});
  Matrix rho = Matrix::Zero(2, 2);
  rho(1, 1) = 1.0;
  const Matrix drho = apply_drift(model, rho);
  // d rho/dt = kappa (|0><0| - |1><1|)
  CHECK(std::abs(drho(0, 0) - Complex(kappa, 0)) <= 1e-14);
  CHECK(std::abs(drho(1, 1) - Complex(-kappa, 0)) <= 1e-14);
  CHECK(std::abs(drho(0, 1)) <= 1e-15);

  // Heisenberg picture: L*(n) = -kappa n
  const Matrix n = number_operator(2);
  const Matrix dn = apply_adjoint(model, RealVector(0), n);
  CHECK((dn + kappa * n).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("superoperator properties hold on random models") {
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 2 + int(rng() % 5);  // dim 2..6
    const int m = 1 + int(rng() % 2);
    const int p = int(rng() % 3);
    const LindbladModel model = random_model(n, m, p);
    const RealVector u = random_control(m);
    const Matrix rho = random_density(n);
    const Matrix J = random_hermitian(n);

    // trace preservation of the forward generator
    CHECK(std::abs(apply_lindblad(model, u, rho).trace()) <= 1e-12);
    // adjoint unitality
    CHECK(apply_adjoint(model, u, Matrix::Identity(n, n))
              .cwiseAbs()
              .maxCoeff() <= 1e-12);
    // Hilbert-Schmidt adjointness <L* J, rho> = <J, L rho>
    const Complex lhs = hs_inner(apply_adjoint(model, u, J), rho);
    const Complex rhs = hs_inner(J, apply_lindblad(model, u, rho));
    CHECK(std::abs(lhs - rhs) <= 1e-12);
    // Hermiticity preservation both ways
    CHECK(is_hermitian(apply_lindblad(model, u, rho), 1e-13));
    CHECK(is_hermitian(apply_adjoint(model, u, J), 1e-13));
  }
}

TEST_CASE("lindblad splits into drift plus control commutators") {
  const LindbladModel model = random_model(4, 2, 2);
  const RealVector u = random_control(2);
  const Matrix rho = random_density(4);
  Matrix expected = apply_drift(model, rho);
  for (int k = 1; k <= 2; ++k)
    expected += u(k - 1) * apply_control_superop(model, k, rho);
  CHECK((apply_lindblad(model, u, rho) - expected).cwiseAbs().maxCoeff() <=
        1e-13);
  // control channel is the bare commutator
  CHECK((apply_control_superop(model, 1, rho) +
         Complex(0, 1) * commutator(model.control(0), rho))
            .cwiseAbs()
            .maxCoeff() <= 1e-14);
}

TEST_CASE("workspace applier matches the reference superoperators") {
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 2 + int(rng() % 5);
    const int m = 2;
    const LindbladModel model = random_model(n, m, 2);
    const RealVector v = random_control(m);
    const Matrix rho = random_density(n);
    const Matrix J = random_hermitian(n);

    GeneratorApplier gen(model);
    ApplyWorkspace ws;
    Matrix out;

    SUBCASE("alpha = 1 forward and adjoint") {
      gen.set_control(v);
      gen.apply_forward(rho, out, ws);
      CHECK((out - apply_lindblad(model, v, rho)).cwiseAbs().maxCoeff() <=
            1e-12);
      gen.apply_adjoint(J, out, ws);
      CHECK((out - apply_adjoint(model, v, J)).cwiseAbs().maxCoeff() <= 1e-12);
      // sign = -1 negates the adjoint direction
      gen.apply_adjoint(J, out, ws, -1.0);
      CHECK((out + apply_adjoint(model, v, J)).cwiseAbs().maxCoeff() <= 1e-12);
    }

    SUBCASE("dilated generator: alpha*L0 + sum v_k L_k") {
      const double alpha = 1.7;
      gen.set_control(v, alpha);
      gen.apply_forward(rho, out, ws);
      Matrix expected = alpha * apply_drift(model, rho);
      for (int k = 1; k <= m; ++k)
        expected += v(k - 1) * apply_control_superop(model, k, rho);
      CHECK((out - expected).cwiseAbs().maxCoeff() <= 1e-12);
    }

    SUBCASE("drift and control pieces compose") {
      gen.set_control(v);
      gen.apply_drift(rho, out, ws, 2.5);
      CHECK((out - 2.5 * apply_drift(model, rho)).cwiseAbs().maxCoeff() <=
            1e-12);
      Matrix acc = out;
      gen.add_control_comm(0, 0.75, rho, acc, ws);
      CHECK((acc - out - 0.75 * apply_control_superop(model, 1, rho))
                .cwiseAbs()
                .maxCoeff() <= 1e-12);
    }
  }
}

TEST_CASE("density and observable diagnostics report deviations") {
  const Matrix rho = random_density(4);
  auto d = diagnose_density(rho);
  CHECK(d.hermiticity_dev <= 1e-13);
  CHECK(d.trace_dev <= 1e-13);
  CHECK(d.min_eigenvalue >= -1e-12);

  Matrix j = Matrix::Identity(3, 3);
  j(0, 0) = 0.5;
  auto o = diagnose_observable(j);
  CHECK(o.min_eigenvalue == doctest::Approx(0.5));
  CHECK(o.max_eigenvalue == doctest::Approx(1.0));
}
