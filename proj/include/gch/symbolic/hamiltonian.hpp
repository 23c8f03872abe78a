#pragma once

#include "gch/symbolic/jet_poly.hpp"

namespace gch::sym {

/// m_t of the generalized family written in u-jets (family V):
/// -(u + Gamma) m_x - 2 u_x m + d_x h(u), h = (alpha + Gamma) u + beta u^3/3 + gamma u^4/4.
JetPoly momentum_time_derivative();

/// 3u^2/2 - u u_xx - u_x^2/2 - alpha u - beta u^3/3 - gamma u^4/4 - Gamma u_xx.
JetPoly second_hamiltonian_gradient();

/// Density whose variational derivative is second_hamiltonian_gradient().
JetPoly second_hamiltonian_density();

struct HamiltonianPairResiduals {
  JetPoly gradient_check;      // euler_op(density) - gradient
  JetPoly first;               // m_t + d_x (delta H2 / delta u)
  JetPoly second_integer;      // m_t + B2 u for gamma = 0
  JetPoly second_gamma;        // gamma part of m_t + B2 u with u = w^2
  JetPoly second_full;         // whole m_t + B2 u on the w algebra
  JetPoly beta_closure;        // d_x(u^2/2) - u u_x
  JetPoly gamma_closure;       // d_x(2 w^5/5) - w^3 d_x(w^2)
  /// Diagnostic: m_t + d_x euler_op(gradient), i.e. reading the displayed
  /// gradient as a density. Nonzero.
  JetPoly gradient_as_density;
};

HamiltonianPairResiduals hamiltonian_pair_residual();

/// Constants of the rotation model at a rational wave speed c, with
/// Omega = (1 - c^2) / (2c) and the induced family coefficients.
struct RotationExact {
  Rational omega, c, alpha_f, beta0, beta_f, omega1, omega2;
  Rational alpha, beta, gamma, big_gamma;
};

RotationExact rotation_exact(const Rational& c);

/// (rotation model momentum equation) - (generalized family momentum
/// equation) with alpha = -c, beta = -omega1/alpha_f^2,
/// gamma = -omega2/alpha_f^3, Gamma = beta0/beta_f; uses the symbols
/// "rot_c", "rot_b0f" (beta0/beta_f), "rot_w1" (omega1/alpha_f^2),
/// "rot_w2" (omega2/alpha_f^3). Zero iff the mapping is right.
JetPoly rotation_mapping_residual();

}  // namespace gch::sym
