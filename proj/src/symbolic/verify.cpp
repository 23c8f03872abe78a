#include "gch/symbolic/verify.hpp"

#include <algorithm>
#include <future>
#include <stdexcept>

#include "gch/symbolic/dubrovin.hpp"
#include "gch/symbolic/hamiltonian.hpp"
#include "gch/symbolic/pss.hpp"

namespace gch::sym {

namespace {

IdentityVerdict zero_check(std::string name, const JetPoly& residual, std::string detail = {}) {
  return {std::move(name), residual.size(), residual.is_zero(), std::move(detail)};
}

IdentityVerdict flag(std::string name, bool ok, std::string detail = {}) { return {std::move(name), 0, ok, std::move(detail)}; }

std::vector<IdentityVerdict> verify_pss() {
  std::vector<IdentityVerdict> out;
  const JetPoly pde = dgh_pde_polynomial();
  for (SignChoice sign : {SignChoice::Upper, SignChoice::Lower}) {
    const std::string tag = sign == SignChoice::Upper ? "pss.upper." : "pss.lower.";
    auto r = pss_residuals(sign);
    for (int i = 0; i < 3; ++i) out.push_back(zero_check(tag + "structure" + std::to_string(i + 1), r.reduced[i].C));
    // raw d th3 - th1^th3 is -(PDE) for the upper sign and +(PDE) for the lower one
    const JetPoly expected = sign == SignChoice::Upper ? -pde : pde;
    out.push_back(zero_check(tag + "raw_structure3_is_pde", r.raw[2].C - expected));

    auto th = pss_triplet(sign);
    auto om = static_frame_triplet(sign);
    JetPoly diff, diff0;
    const std::map<SymbolId, JetPoly> gamma0{{param::big_gamma, JetPoly()}};
    for (int i = 0; i < 3; ++i) {
      auto pb = pullback_moving_frame(om[i]);
      diff += (th[i].A - pb.A) * (th[i].A - pb.A) + (th[i].B - pb.B) * (th[i].B - pb.B);
      diff0 += (th[i].A.subs(gamma0) - om[i].A).pow(2) + (th[i].B.subs(gamma0) - om[i].B).pow(2);
    }
    out.push_back(zero_check(tag + "pullback", diff, "triplet equals the pulled-back static triplet"));
    out.push_back(zero_check(tag + "gamma0", diff0, "Gamma = 0 recovers the static triplet"));
  }
  return out;
}

std::string solutions_str(const std::vector<std::map<SymbolId, Rational>>& sols) {
  std::string s = "{";
  for (std::size_t i = 0; i < sols.size(); ++i) {
    s += i ? ", (" : "(";
    bool first = true;
    for (const auto& [k, v] : sols[i]) {
      s += (first ? "" : ", ") + symbol_name(k) + "=" + v.get_str();
      first = false;
    }
    s += ")";
  }
  return s + "}";
}

std::vector<IdentityVerdict> verify_dubrovin() {
  std::vector<IdentityVerdict> out;
  const auto a = analyze_dubrovin(HfReading::CSquared);
  out.push_back(flag("dubrovin.f", a.f_matches, "f = " + a.f.to_string()));
  out.push_back(flag("dubrovin.eps2_v1sq_redundant", a.v1sq_is_half_derivative,
                     "v_x^2 coefficient equals half the v-derivative of the v_xx coefficient"));
  out.push_back(flag("dubrovin.beta_gamma_forced", a.forced_beta_gamma_zero,
                     "solutions " + solutions_str(a.beta_gamma_solutions)));
  out.push_back(flag("dubrovin.c", a.c_matches, "c = " + a.c.to_string()));
  out.push_back(flag("dubrovin.p_s", a.ps_match, "p = " + a.p.to_string() + ", s = " + a.s.to_string()));
  for (int k = 0; k < 3; ++k) out.push_back(zero_check("dubrovin.residual_eps" + std::to_string(2 * k), a.residuals[k]));
  std::size_t nontrivial = 0;
  for (const auto& s : a.samples) nontrivial += (s.beta != 0 || s.gamma != 0);
  out.push_back(flag("dubrovin.samples_eps4", a.samples_confirm,
                     std::to_string(nontrivial) + " nontrivial order-eps^2 families, all obstructed at eps^4"));

  const auto b = analyze_dubrovin(HfReading::CLinear);
  bool same = b.f_matches == a.f_matches && b.forced_beta_gamma_zero == a.forced_beta_gamma_zero &&
              b.c_matches == a.c_matches && b.ps_match == a.ps_match && b.residuals_vanish == a.residuals_vanish &&
              b.samples_confirm == a.samples_confirm;
  out.push_back(flag("dubrovin.reading_independent", same, std::string("verdicts agree for ") + to_string(HfReading::CLinear)));
  return out;
}

std::vector<IdentityVerdict> verify_hamiltonian_pair() {
  const auto h = hamiltonian_pair_residual();
  return {
      zero_check("hamiltonian.gradient", h.gradient_check),
      zero_check("hamiltonian.first", h.first),
      zero_check("hamiltonian.second_integer", h.second_integer),
      zero_check("hamiltonian.second_gamma", h.second_gamma),
      zero_check("hamiltonian.second_full", h.second_full),
      zero_check("hamiltonian.closure_beta", h.beta_closure),
      zero_check("hamiltonian.closure_gamma", h.gamma_closure),
  };
}

std::vector<IdentityVerdict> verify_rotation() {
  const auto r = rotation_exact(Rational(1));
  return {
      zero_check("rotation.mapping", rotation_mapping_residual()),
      flag("rotation.omega0", r.omega == 0 && r.beta == 0 && r.gamma == 0,
           "alpha = " + r.alpha.get_str() + ", Gamma = " + r.big_gamma.get_str()),
  };
}

}  // namespace

const std::vector<std::string>& identity_groups() {
  static const std::vector<std::string> g{"pss", "dubrovin", "hamiltonian-pair", "rotation"};
  return g;
}

bool is_identity_group(const std::string& name) {
  const auto& g = identity_groups();
  return name == "all" || std::find(g.begin(), g.end(), name) != g.end();
}

std::vector<IdentityVerdict> run_verification(const std::vector<std::string>& groups) {
  std::vector<std::string> names;
  for (const auto& g : groups) {
    if (!is_identity_group(g)) throw std::invalid_argument("unknown identity: " + g);
    if (g == "all") {
      names = identity_groups();
      break;
    }
    if (std::find(names.begin(), names.end(), g) == names.end()) names.push_back(g);
  }
  std::vector<std::future<std::vector<IdentityVerdict>>> jobs;
  for (const auto& n : names) {
    jobs.push_back(std::async(std::launch::async, [n] {
      if (n == "pss") return verify_pss();
      if (n == "dubrovin") return verify_dubrovin();
      if (n == "hamiltonian-pair") return verify_hamiltonian_pair();
      return verify_rotation();
    }));
  }
  std::vector<IdentityVerdict> out;
  for (auto& j : jobs) {
    auto part = j.get();
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

bool all_pass(const std::vector<IdentityVerdict>& verdicts) {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const IdentityVerdict& v) { return v.pass; });
}

}  // namespace gch::sym
