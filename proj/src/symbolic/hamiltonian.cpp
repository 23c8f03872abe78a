#include "gch/symbolic/hamiltonian.hpp"

namespace gch::sym {

namespace {

JetPoly P(SymbolId id) { return JetPoly::var(id); }
JetPoly V(int k) { return JetPoly::v(k); }
JetPoly W(int k) { return JetPoly::jet(Family::W, k); }
JetPoly R(long num, long den = 1) { return JetPoly(Rational(num, den)); }

JetPoly m_of_u() { return V(0) - V(2); }

// Momentum equation left side m_t + (u + G) m_x + 2 u_x m - d_x h with m_t
// left out, for the given coefficients of u_x, u^2 u_x, u^3 u_x, u_xxx.
JetPoly momentum_operator(const JetPoly& a, const JetPoly& b, const JetPoly& g, const JetPoly& G) {
  const JetPoly u = V(0), u1 = V(1), m = m_of_u();
  return u * total_x(m) + 2 * u1 * m - a * u1 - b * u * u * u1 - g * u.pow(3) * u1 - G * V(3);
}

}  // namespace

JetPoly momentum_time_derivative() {
  const JetPoly u = V(0), m = m_of_u(), G = P(param::big_gamma);
  JetPoly h = (P(param::alpha) + G) * u + R(1, 3) * P(param::beta) * u.pow(3) + R(1, 4) * P(param::gamma) * u.pow(4);
  return -(u + G) * total_x(m) - 2 * V(1) * m + total_x(h);
}

JetPoly second_hamiltonian_gradient() {
  const JetPoly u = V(0), u1 = V(1), u2 = V(2);
  return R(3, 2) * u * u - u * u2 - R(1, 2) * u1 * u1 - P(param::alpha) * u - R(1, 3) * P(param::beta) * u.pow(3) -
         R(1, 4) * P(param::gamma) * u.pow(4) - P(param::big_gamma) * u2;
}

JetPoly second_hamiltonian_density() {
  const JetPoly u = V(0), u1 = V(1);
  return R(1, 2) * u.pow(3) + R(1, 2) * u * u1 * u1 - R(1, 2) * P(param::alpha) * u * u -
         R(1, 12) * P(param::beta) * u.pow(4) - R(1, 20) * P(param::gamma) * u.pow(5) +
         R(1, 2) * P(param::big_gamma) * u1 * u1;
}

HamiltonianPairResiduals hamiltonian_pair_residual() {
  HamiltonianPairResiduals out;
  const JetPoly mt = momentum_time_derivative();
  const JetPoly u = V(0), u1 = V(1), m = m_of_u();
  const JetPoly alpha = P(param::alpha), beta = P(param::beta), gamma = P(param::gamma), G = P(param::big_gamma);

  out.gradient_check = euler_op(second_hamiltonian_density()) - second_hamiltonian_gradient();
  out.first = mt + total_x(euler_op(second_hamiltonian_density()));
  out.gradient_as_density = mt + total_x(euler_op(second_hamiltonian_gradient()));

  // B2 applied to delta H1 / delta m = u, local part and beta part.
  const JetPoly beta_inner = antiderivative_first_order(u * u1);  // d_x^{-1}(u u_x)
  out.beta_closure = total_x(beta_inner) - u * u1;
  JetPoly b2_int = total_x(m * u) + m * u1 - alpha * u1 - G * V(3) - R(2, 3) * beta * total_x(u * beta_inner);
  const JetPoly mt_gamma = mt.coeff(param::gamma, 1);
  const JetPoly mt_rest = mt - gamma * mt_gamma;
  out.second_integer = mt_rest + b2_int;

  // gamma part with u = w^2, so u^{3/2} = w^3.
  const JetPoly w = W(0), w3 = w.pow(3), u_w = w * w;
  const JetPoly gamma_integrand = w3 * total_x(u_w);
  const JetPoly gamma_inner = antiderivative_first_order(gamma_integrand, Family::W);
  out.gamma_closure = total_x(gamma_inner) - gamma_integrand;
  JetPoly b2_gamma = -R(5, 8) * gamma * total_x(w3 * gamma_inner);
  out.second_gamma = gamma * compose(mt_gamma, Family::V, u_w) + b2_gamma;
  out.second_full = compose(mt_rest + b2_int, Family::V, u_w) + out.second_gamma;
  return out;
}

RotationExact rotation_exact(const Rational& c) {
  if (c <= 0) throw std::invalid_argument("rotation_exact: c must be positive");
  RotationExact r;
  r.c = c;
  r.omega = (1 - c * c) / (2 * c);
  const Rational c2 = c * c, one = 1 + c2;
  r.alpha_f = c2 / one;
  r.beta0 = c * (c2 * c2 + 6 * c2 - 1) / (6 * one * one);
  r.beta_f = (3 * c2 * c2 + 8 * c2 - 1) / (6 * one * one);
  r.omega1 = -3 * c * (c2 - 1) * (c2 - 2) / (2 * one * one * one);
  r.omega2 = (c2 - 1) * (c2 - 1) * (c2 - 2) * (8 * c2 - 1) / (2 * one * one * one * one * one);
  if (r.beta_f == 0) throw std::domain_error("rotation_exact: beta_f vanishes");
  r.alpha = -c;
  r.beta = -r.omega1 / (r.alpha_f * r.alpha_f);
  r.gamma = -r.omega2 / (r.alpha_f * r.alpha_f * r.alpha_f);
  r.big_gamma = r.beta0 / r.beta_f;
  return r;
}

JetPoly rotation_mapping_residual() {
  const JetPoly c = JetPoly::var("rot_c"), b0f = JetPoly::var("rot_b0f");
  const JetPoly w1 = JetPoly::var("rot_w1"), w2 = JetPoly::var("rot_w2");
  const JetPoly u = V(0), u1 = V(1), m = m_of_u();
  // m_t + u m_x + 2 u_x m + c u_x - (beta0/beta_f) u_xxx + (omega1/alpha_f^2) u^2 u_x + (omega2/alpha_f^3) u^3 u_x
  JetPoly rotation = u * total_x(m) + 2 * u1 * m + c * u1 - b0f * V(3) + w1 * u * u * u1 + w2 * u.pow(3) * u1;
  JetPoly family = momentum_operator(-c, -w1, -w2, b0f);
  return rotation - family;
}

}  // namespace gch::sym
