#include "gch/symbolic/dubrovin.hpp"

#include <algorithm>

#include "gch/symbolic/solve.hpp"

namespace gch::sym {

namespace {

JetPoly P(SymbolId id) { return JetPoly::var(id); }
JetPoly V(int k) { return JetPoly::v(k); }

JetPoly dv(const JetPoly& p, int times = 1) {
  JetPoly r = p;
  for (int i = 0; i < times; ++i) r = r.partial(jet_id(Family::V, 0));
  return r;
}

JetPoly R(long num, long den = 1) { return JetPoly(Rational(num, den)); }

void check_order(int order) {
  if (order > JetPoly::kDefaultEpsOrder || order < 0)
    throw TruncationOverflow("eps order " + std::to_string(order) + " exceeds the supported truncation");
}

std::vector<SymbolId> unknowns_from(const std::vector<SymbolId>& a, const std::vector<SymbolId>& b = {}) {
  std::vector<SymbolId> out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

std::vector<JetPoly> split_by(const std::vector<JetPoly>& polys, const std::vector<SymbolId>& keys) {
  std::vector<JetPoly> out;
  for (const auto& p : polys)
    for (auto& [m, cof] : p.collect(keys))
      if (!cof.is_zero()) out.push_back(cof);
  return out;
}

}  // namespace

const char* to_string(HfReading r) { return r == HfReading::CSquared ? "c^2/480" : "c/480"; }

JetPoly eps() { return P(param::eps); }

JetPoly eps_coefficient(const JetPoly& p, int k) { return p.coeff(param::eps, static_cast<std::uint32_t>(k)); }

Rational inverse_sqrt_coefficient(int k) {
  // binom(-1/2, k) (-1)^k = prod_{j<k} (j + 1/2) / (j + 1)
  Rational a = 1;
  for (int j = 0; j < k; ++j) a *= Rational(2 * j + 1, 2 * (j + 1));
  return a;
}

JetPoly apply_inverse_sqrt(const JetPoly& p, int order) {
  check_order(order);
  JetPoly out;
  for (int k = 0; 2 * k <= order; ++k) {
    JetPoly part = p.truncate_eps(order - 2 * k);
    out += JetPoly(inverse_sqrt_coefficient(k)) * eps().pow(2 * k) * total_x(part, 2 * k);
  }
  return out.truncate_eps(order);
}

JetPoly u_in_v(int order) { return apply_inverse_sqrt(V(0), order); }

JetPoly rescaled_flux_in_u() {
  const JetPoly u = V(0), u1 = V(1), u2 = V(2);
  JetPoly phi0 = R(3, 4) * u * u + P(param::alpha) * u + R(1, 3) * P(param::beta) * u.pow(3) +
                 R(1, 4) * P(param::gamma) * u.pow(4);
  JetPoly phi2 = R(1, 2) * u * u2 + R(1, 4) * u1 * u1 - P(param::big_gamma) * u2;
  return phi0 - eps().pow(2) * phi2;
}

JetPoly expand_flux_to_v(int order) {
  check_order(order);
  JetPoly phi_v = compose(rescaled_flux_in_u(), Family::V, u_in_v(order)).truncate_eps(order);
  return apply_inverse_sqrt(phi_v, order);
}

JetPoly expand_to_v(int order) { return -total_x(expand_flux_to_v(order)); }

JetPoly hamiltonian_density(const DubrovinAnsatz& a, HfReading reading) {
  const JetPoly& f = a.f;
  const JetPoly& c = a.c;
  const JetPoly f3 = dv(f, 3), f4 = dv(f, 4), f5 = dv(f, 5), f6 = dv(f, 6);
  const JetPoly c1 = dv(c), c2 = dv(c, 2), p1 = dv(a.p);
  const JetPoly v1 = V(1), v2 = V(2);

  JetPoly h1 = -R(1, 24) * c * f3 * v1 * v1;
  JetPoly kappa = reading == HfReading::CSquared ? R(1, 480) * c * c : R(1, 480) * c;
  JetPoly quartic = -(R(1, 1152) * c * c2 * f4 + R(1, 1152) * c * c1 * f5 + R(1, 3456) * c * c * f6) +
                    R(1, 6) * p1 * f4 + R(1, 6) * a.p * f5 - a.s * f3;
  JetPoly h2 = (a.p * f3 + kappa * f4) * v2 * v2 + quartic * v1.pow(4);
  return f + eps().pow(2) * h1 + eps().pow(4) * h2;
}

std::array<JetPoly, 3> dubrovin_flux_residuals(const DubrovinAnsatz& a, HfReading reading, const ParamValues& params) {
  JetPoly rho = (euler_op(hamiltonian_density(a, reading)) - expand_flux_to_v(4)).subs(params);
  return {eps_coefficient(rho, 0), eps_coefficient(rho, 2), eps_coefficient(rho, 4)};
}

std::array<JetPoly, 3> dubrovin_residuals(const DubrovinAnsatz& a, HfReading reading, const ParamValues& params) {
  auto flux = dubrovin_flux_residuals(a, reading, params);
  return {total_x(flux[0]), total_x(flux[1]), total_x(flux[2])};
}

JetPoly dgh_f() {
  const JetPoly v = V(0);
  return R(1, 4) * v.pow(3) + R(1, 2) * P(param::alpha) * v.pow(2) + R(1, 12) * P(param::beta) * v.pow(4) +
         R(1, 20) * P(param::gamma) * v.pow(5);
}

JetPoly dgh_c() { return 8 * (V(0) + P(param::alpha) + P(param::big_gamma)); }
JetPoly dgh_p() { return R(1, 3) * (V(0) + P(param::alpha) + P(param::big_gamma)); }

std::vector<JetPoly> coefficient_equations(const JetPoly& residual) {
  std::vector<JetPoly> out;
  for (auto& [m, cof] : residual.collect_jets())
    if (!cof.is_zero()) out.push_back(cof);
  return out;
}

DubrovinAnalysis analyze_dubrovin(HfReading reading) {
  DubrovinAnalysis out;
  out.reading = reading;
  const JetPoly zero;
  const ParamValues bg_zero{{param::beta, zero}, {param::gamma, zero}};

  // Order eps^0: f from a quintic ansatz.
  auto [f_ans, f_ids] = ansatz("f", 5);
  {
    auto res = dubrovin_residuals({f_ans, zero, zero, zero}, reading);
    auto sol = solve_linear(coefficient_equations(res[0]), f_ids);
    std::map<SymbolId, JetPoly> vals = sol.values;
    for (SymbolId id : sol.free) vals.emplace(id, zero);
    out.f = f_ans.subs(vals);
    out.f_free = sol.free;
    out.f_matches = sol.consistent() && out.f == dgh_f();
  }

  // Order eps^2 with symbolic parameters and a cubic c.
  auto [c_ans, c_ids] = ansatz("c", 3);
  {
    auto flux = dubrovin_flux_residuals({out.f, c_ans, zero, zero}, reading);
    const SymbolId v1 = jet_id(Family::V, 1), v2 = jet_id(Family::V, 2);
    out.flux_v2 = flux[1].coeff(v2, 1).coeff(v1, 0);
    out.flux_v1sq = flux[1].coeff(v1, 2).coeff(v2, 0);
    out.v1sq_is_half_derivative = out.flux_v1sq == R(1, 2) * dv(out.flux_v2);

    auto res = dubrovin_residuals({out.f, c_ans, zero, zero}, reading);
    auto sol = solve_linear(coefficient_equations(res[1]), c_ids);
    out.generic_obstructions = sol.obstructions;
    out.beta_gamma_system = split_by(sol.obstructions, {param::alpha, param::big_gamma});
    auto bg = solve_polynomial_system(out.beta_gamma_system, {param::beta, param::gamma});
    out.beta_gamma_solutions = bg.solutions;
    out.beta_gamma_complete = bg.complete() && sol.unresolved.empty();
    out.forced_beta_gamma_zero =
        out.beta_gamma_complete && bg.solutions.size() == 1 && bg.solutions[0].at(param::beta) == 0 &&
        bg.solutions[0].at(param::gamma) == 0;

    // beta = gamma = 0: c must be unique.
    auto res0 = dubrovin_residuals({out.f.subs(bg_zero), c_ans, zero, zero}, reading, bg_zero);
    auto sol0 = solve_linear(coefficient_equations(res0[1]), c_ids);
    out.c = sol0.consistent() && sol0.free.empty() ? c_ans.subs(sol0.values) : JetPoly();
    out.c_matches = sol0.consistent() && sol0.free.empty() && out.c == dgh_c();
  }

  // Order eps^4 at beta = gamma = 0.
  auto [p_ans, p_ids] = ansatz("p", 2);
  auto [s_ans, s_ids] = ansatz("s", 2);
  const JetPoly f0 = dgh_f().subs(bg_zero);
  {
    auto res = dubrovin_residuals({f0, dgh_c(), p_ans, s_ans}, reading, bg_zero);
    auto sol = solve_linear(coefficient_equations(res[2]), unknowns_from(p_ids, s_ids));
    out.ps_unique = sol.consistent() && sol.free.empty();
    if (out.ps_unique) {
      out.p = p_ans.subs(sol.values);
      out.s = s_ans.subs(sol.values);
    }
    out.ps_match = out.ps_unique && out.p == dgh_p() && out.s.is_zero();
    out.residuals = dubrovin_residuals({f0, dgh_c(), dgh_p(), zero}, reading, bg_zero);
    out.residuals_vanish = std::all_of(out.residuals.begin(), out.residuals.end(), [](const JetPoly& r) { return r.is_zero(); });
  }

  // Rational parameter samples: solve order eps^2 for (beta, gamma, c), then
  // test every family at order eps^4.
  const Rational gamma_big(1, 3);
  out.samples_confirm = true;
  for (const Rational& A : {Rational(1), Rational(2), Rational(-1, 2)}) {
    const Rational alpha = A - gamma_big;
    const ParamValues pv{{param::alpha, JetPoly(alpha)}, {param::big_gamma, JetPoly(gamma_big)}};
    const JetPoly f_s = dgh_f().subs(pv);
    auto res = dubrovin_residuals({f_s, c_ans, zero, zero}, reading, pv);
    auto sol = solve_linear(coefficient_equations(res[1]), c_ids);
    auto bg = solve_polynomial_system(sol.obstructions, {param::beta, param::gamma});
    if (!bg.complete() || !sol.unresolved.empty()) out.samples_confirm = false;
    for (const auto& pt : bg.solutions) {
      SampleFamily fam;
      fam.alpha = alpha;
      fam.big_gamma = gamma_big;
      fam.beta = pt.at(param::beta);
      fam.gamma = pt.at(param::gamma);
      ParamValues all = pv;
      all.emplace(param::beta, JetPoly(fam.beta));
      all.emplace(param::gamma, JetPoly(fam.gamma));
      fam.c = c_ans.subs(sol.values).subs(all);
      auto res4 = dubrovin_residuals({f_s.subs(all), fam.c, p_ans, s_ans}, reading, all);
      auto sol4 = solve_linear(coefficient_equations(res4[2]), unknowns_from(p_ids, s_ids));
      fam.eps4_obstructions = sol4.obstructions;
      fam.eps4_obstructed = !sol4.consistent();
      const bool trivial = fam.beta == 0 && fam.gamma == 0;
      if (trivial == fam.eps4_obstructed) out.samples_confirm = false;
      out.samples.push_back(std::move(fam));
    }
  }
  return out;
}

}  // namespace gch::sym
