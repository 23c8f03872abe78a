#include "gch/symbolic/pss.hpp"

namespace gch::sym {

namespace {

JetPoly P(SymbolId id) { return JetPoly::var(id); }
JetPoly V(int k) { return JetPoly::v(k); }
JetPoly T(int k) { return JetPoly::jet(Family::T, k); }

}  // namespace

JetPoly total_tau(const JetPoly& p) {
  if (p.max_order(Family::T) >= 0) throw std::invalid_argument("total_tau: time jets already present");
  JetPoly r;
  for (int k = 0; k <= p.max_order(Family::V); ++k) r += p.partial(jet_id(Family::V, k)) * T(k);
  return r;
}

JetPoly momentum_n() { return V(0) - V(2); }
JetPoly momentum_n_tau() { return T(0) - T(2); }

JetPoly PdeRule::apply(const JetPoly& p) const {
  return p.subs({{jet_id(Family::T, 0), T(2) + n_tau}, {jet_id(Family::T, 1), T(3) + total_x(n_tau)}});
}

PdeRule dgh_rule() {
  JetPoly n = momentum_n();
  return {-V(0) * total_x(n) - 2 * V(1) * n + P(param::alpha) * V(1) + P(param::big_gamma) * V(3)};
}

JetPoly dgh_pde_polynomial() {
  JetPoly n = momentum_n();
  return momentum_n_tau() + V(0) * total_x(n) + 2 * V(1) * n - P(param::alpha) * V(1) - P(param::big_gamma) * V(3);
}

JetPoly eta_relation() { return 2 + 2 * P(param::b) + P(param::alpha) + P(param::big_gamma); }

JetPoly normalize_eta(const JetPoly& p) { return p.rewrite_power(param::eta, 2, eta_relation()); }

std::array<OneForm, 3> pss_triplet(SignChoice sign) {
  const JetPoly n = momentum_n(), v = V(0), v1 = V(1);
  const JetPoly b = P(param::b), eta = P(param::eta), G = P(param::big_gamma);
  const int s = sign == SignChoice::Upper ? 1 : -1;

  OneForm th1{n + b, -((v + G) * n + (b + 1) * v + b * (G + 1) - s * eta * v1)};
  OneForm th2{eta, -(eta * (1 + v + G) - s * v1)};
  OneForm th3{s * (n + b + 1), eta * v1 - s * ((v + G) * (n + 1) + (v + 1) * (b + 1) + G * b)};
  return {th1, th2, th3};
}

std::array<OneForm, 3> static_frame_triplet(SignChoice sign) {
  const JetPoly n = momentum_n(), v = V(0), v1 = V(1);
  const JetPoly b = P(param::b), eta = P(param::eta);
  const int s = sign == SignChoice::Upper ? 1 : -1;

  OneForm w1{n + b, -(v * n + (b + 1) * v + b - s * eta * v1)};
  OneForm w2{eta, -(eta * (1 + v) - s * v1)};
  OneForm w3{s * (n + b + 1), eta * v1 - s * (v * (n + 1) + (v + 1) * (b + 1))};
  return {w1, w2, w3};
}

OneForm pullback_moving_frame(const OneForm& w) {
  // dt -> dtau, dx -> dchi - Gamma dtau
  return {w.A, w.B - P(param::big_gamma) * w.A};
}

PssResiduals pss_residuals(SignChoice sign) {
  auto th = pss_triplet(sign);
  const Derivation dt = [](const JetPoly& p) { return total_tau(p); };
  const std::array<TwoForm, 3> lhs = {exterior_d(th[0], dt), exterior_d(th[1], dt), exterior_d(th[2], dt)};
  const std::array<TwoForm, 3> rhs = {wedge(th[2], th[1]), wedge(th[0], th[2]), wedge(th[0], th[1])};

  PssResiduals out;
  const PdeRule rule = dgh_rule();
  for (int i = 0; i < 3; ++i) {
    out.raw[i] = {normalize_eta((lhs[i] - rhs[i]).C)};
    out.reduced[i] = {normalize_eta(rule.apply(out.raw[i].C))};
  }
  return out;
}

}  // namespace gch::sym
