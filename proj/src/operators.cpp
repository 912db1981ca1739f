#include "lyapgate/operators.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <string>

namespace lyapgate {

namespace {

void require_levels(int n_levels) {
  if (n_levels < 1) throw std::invalid_argument("n_levels must be >= 1");
}

// Raw truncated coherent amplitudes, no renormalization.
Vector coherent_raw(double alpha, int n_levels) {
  Vector c(n_levels);
  double ck = std::exp(-alpha * alpha / 2.0);
  for (int k = 0; k < n_levels; ++k) {
    c(k) = ck;
    ck *= alpha / std::sqrt(double(k + 1));
  }
  return c;
}

void require_mass(double alpha, int n_levels, double min_mass) {
  const double mass = coherent_mass(alpha, n_levels);
  if (mass < min_mass) {
    throw std::invalid_argument(
        "truncation too severe: captured mass " + std::to_string(mass) +
        " < " + std::to_string(min_mass) + " at n_levels=" +
        std::to_string(n_levels) + ", alpha=" + std::to_string(alpha));
  }
}

}  // namespace

Matrix annihilation(int n_levels) {
  require_levels(n_levels);
  Matrix a = Matrix::Zero(n_levels, n_levels);
  for (int k = 1; k < n_levels; ++k) a(k - 1, k) = std::sqrt(double(k));
  return a;
}

Matrix number_operator(int n_levels) {
  require_levels(n_levels);
  Matrix n = Matrix::Zero(n_levels, n_levels);
  for (int k = 0; k < n_levels; ++k) n(k, k) = double(k);
  return n;
}

Matrix identity(int n_levels) {
  require_levels(n_levels);
  return Matrix::Identity(n_levels, n_levels);
}

Matrix kron(const Matrix& a, const Matrix& b) {
  return Eigen::kroneckerProduct(a, b);
}

double coherent_mass(double alpha, int n_levels) {
  require_levels(n_levels);
  return coherent_raw(alpha, n_levels).squaredNorm();
}

Vector coherent_state(double alpha, int n_levels, double min_mass) {
  require_mass(alpha, n_levels, min_mass);
  Vector c = coherent_raw(alpha, n_levels);
  return c / c.norm();
}

Vector cat_state(double alpha, Parity parity, int n_levels, double min_mass) {
  require_mass(alpha, n_levels, min_mass);
  const Vector plus = coherent_raw(alpha, n_levels);
  const Vector minus = coherent_raw(-alpha, n_levels);
  Vector c = (parity == Parity::Even) ? Vector(plus + minus) : Vector(plus - minus);
  const double nrm = c.norm();
  if (nrm < 1e-12) throw std::invalid_argument("degenerate cat state (alpha too small)");
  return c / nrm;
}

Matrix projector(const Vector& psi) {
  if (std::abs(psi.norm() - 1.0) > 1e-9)
    throw std::invalid_argument("projector requires a normalized vector");
  return psi * psi.adjoint();
}

Matrix commutator(const Matrix& a, const Matrix& b) {
  if (a.rows() != a.cols() || a.rows() != b.rows() || b.rows() != b.cols())
    throw std::invalid_argument("commutator requires square matrices of equal dims");
  return a * b - b * a;
}

Matrix anticommutator(const Matrix& a, const Matrix& b) {
  if (a.rows() != a.cols() || a.rows() != b.rows() || b.rows() != b.cols())
    throw std::invalid_argument("anticommutator requires square matrices of equal dims");
  return a * b + b * a;
}

}  // namespace lyapgate
