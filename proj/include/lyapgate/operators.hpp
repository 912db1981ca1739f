#pragma once

#include "lyapgate/types.hpp"

namespace lyapgate {

enum class Parity { Even, Odd };

// a|k> = sqrt(k)|k-1>, truncated to n_levels Fock states.
Matrix annihilation(int n_levels);
Matrix number_operator(int n_levels);
Matrix identity(int n_levels);

Matrix kron(const Matrix& a, const Matrix& b);

// Probability mass sum_{k < n_levels} |c_k|^2 captured by the truncated
// coherent series, c_k = exp(-alpha^2/2) alpha^k / sqrt(k!).
double coherent_mass(double alpha, int n_levels);

// Truncated coherent / cat states, renormalized to unit norm. Throws a
// "truncation" error when the captured mass falls below min_mass.
Vector coherent_state(double alpha, int n_levels, double min_mass = 0.99);
Vector cat_state(double alpha, Parity parity, int n_levels, double min_mass = 0.99);

// |psi><psi|; psi must be normalized within 1e-9.
Matrix projector(const Vector& psi);

Matrix commutator(const Matrix& a, const Matrix& b);
Matrix anticommutator(const Matrix& a, const Matrix& b);

}  // namespace lyapgate
