#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>

// Dense complex matrices throughout, Eigen's default column-major layout
// fixed repo-wide.

namespace lyapgate {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

// Non-finite value detected inside an integration loop. The message carries
// the step index and control values of the offending step.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline Matrix dagger(const Matrix& m) { return m.adjoint(); }

inline bool is_hermitian(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  if (m.rows() == 0) return true;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

// X <- (X + X^dag)/2, used once per integrator step to bound roundoff drift.
inline void hermitize(Matrix& x) { x = (0.5 * (x + x.adjoint())).eval(); }

// trace(A*B) in O(n^2), no product formed.
inline Complex trace_prod(const Matrix& a, const Matrix& b) {
  return a.cwiseProduct(b.transpose()).sum();
}

}  // namespace lyapgate
