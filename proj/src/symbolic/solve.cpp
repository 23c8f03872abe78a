#include "gch/symbolic/solve.hpp"

#include <algorithm>
#include <set>

namespace gch::sym {

namespace {

bool linear_in(const JetPoly& eq, const std::set<SymbolId>& unknowns) {
  for (const auto& [m, c] : eq.terms()) {
    std::uint32_t d = 0;
    for (const auto& [s, e] : m.factors())
      if (unknowns.count(s)) d += e;
    if (d > 1) return false;
  }
  return true;
}

bool mentions_any(const JetPoly& eq, const std::set<SymbolId>& syms) {
  for (const auto& [m, c] : eq.terms())
    for (const auto& [s, e] : m.factors())
      if (syms.count(s)) return true;
  return false;
}

std::set<SymbolId> symbols_of(const JetPoly& p) {
  std::set<SymbolId> out;
  for (const auto& [m, c] : p.terms())
    for (const auto& [s, e] : m.factors()) out.insert(s);
  return out;
}

// Dense coefficients c[i] of x^i for a univariate polynomial.
std::vector<Rational> dense(const JetPoly& p, SymbolId x) {
  std::vector<Rational> c(p.degree(x) + 1, Rational(0));
  for (const auto& [m, coef] : p.terms()) {
    for (const auto& [s, e] : m.factors())
      if (s != x) throw std::invalid_argument("rational_roots: polynomial is not univariate");
    c[m.degree(x)] += coef;
  }
  return c;
}

JetPoly from_dense(const std::vector<Rational>& c, SymbolId x) {
  JetPoly p;
  for (std::size_t i = 0; i < c.size(); ++i) p += JetPoly::monomial(Monomial::of(x, static_cast<std::uint32_t>(i)), c[i]);
  return p;
}

Rational horner(const std::vector<Rational>& c, const Rational& r) {
  Rational acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * r + *it;
  return acc;
}

// Divides by (x - r), assuming r is a root.
std::vector<Rational> deflate(const std::vector<Rational>& c, const Rational& r) {
  std::vector<Rational> q(c.size() - 1, Rational(0));
  Rational carry = 0;
  for (std::size_t i = c.size() - 1; i >= 1; --i) {
    carry = c[i] + carry * r;
    q[i - 1] = carry;
  }
  return q;
}

void trim(std::vector<Rational>& c) {
  while (c.size() > 1 && c.back() == 0) c.pop_back();
}

std::optional<std::vector<mpz_class>> divisors(mpz_class n) {
  n = abs(n);
  static const mpz_class kLimit("1000000000000");
  if (n == 0 || n > kLimit) return std::nullopt;
  std::vector<mpz_class> small, large;
  for (mpz_class d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      small.push_back(d);
      if (d * d != n) large.push_back(n / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

JetPoly strip_content(const JetPoly& eq, SymbolId x) {
  std::uint32_t k = UINT32_MAX;
  for (const auto& [m, c] : eq.terms()) k = std::min(k, m.degree(x));
  if (k == 0 || k == UINT32_MAX) return eq;
  JetPoly r;
  for (const auto& [m, c] : eq.terms()) r += JetPoly::monomial(m.without(x) * Monomial::of(x, m.degree(x) - k), c);
  return r;
}

struct Pending {
  SymbolId x;
  JetPoly num;
  JetPoly den;
};

class CaseSplitter {
 public:
  CaseSplitter(std::vector<SymbolId> vars) : vars_(std::move(vars)) {}

  void run(std::vector<JetPoly> eqs, std::map<SymbolId, Rational> fixed, std::vector<Pending> pending, int depth) {
    if (++branches_ > 20000 || depth > 64) {
      unresolved.push_back("case split limit reached");
      return;
    }
    std::vector<JetPoly> live;
    for (auto& e : eqs) {
      if (e.is_zero()) continue;
      if (e.is_constant()) return;  // inconsistent branch
      if (std::find(live.begin(), live.end(), e) == live.end()) live.push_back(std::move(e));
    }
    if (live.empty()) {
      finish(fixed, pending);
      return;
    }

    // Univariate member: branch over its rational roots.
    for (const auto& e : live) {
      auto syms = symbols_of(e);
      if (syms.size() != 1) continue;
      SymbolId x = *syms.begin();
      JetPoly rest;
      auto roots = rational_roots(e, x, &rest);
      if (!roots) {
        unresolved.push_back("coefficients too large in " + e.to_string());
        return;
      }
      if (!rest.is_constant()) unresolved.push_back("non-rational roots of " + rest.to_string() + " ignored");
      for (const auto& r : *roots) {
        auto f2 = fixed;
        f2[x] = r;
        run(subs_all(live, x, JetPoly(r)), f2, pending, depth + 1);
      }
      return;
    }

    // Monomial content: x * g = 0 splits into x = 0 or g = 0.
    for (std::size_t i = 0; i < live.size(); ++i) {
      for (SymbolId x : symbols_of(live[i])) {
        JetPoly g = strip_content(live[i], x);
        if (g == live[i]) continue;
        auto f2 = fixed;
        f2[x] = 0;
        run(subs_all(live, x, JetPoly(0)), f2, pending, depth + 1);
        auto eqs2 = live;
        eqs2[i] = g;
        run(eqs2, fixed, pending, depth + 1);
        return;
      }
    }

    // Linear occurrence: x = -r / c, with a separate branch for c = 0.
    for (std::size_t i = 0; i < live.size(); ++i) {
      for (SymbolId x : symbols_of(live[i])) {
        if (live[i].degree(x) != 1) continue;
        JetPoly c = live[i].coeff(x, 1), r = live[i].coeff(x, 0);
        if (c.is_constant()) {
          JetPoly val = r * JetPoly(Rational(-1) / c.constant_term());
          auto p2 = pending;
          p2.push_back({x, val, JetPoly(1)});
          std::vector<JetPoly> eqs2;
          for (std::size_t j = 0; j < live.size(); ++j)
            if (j != i) eqs2.push_back(live[j].subs(x, val));
          run(eqs2, fixed, p2, depth + 1);
          return;
        }
        auto eqs_c = live;
        eqs_c.push_back(c);
        run(eqs_c, fixed, pending, depth + 1);

        std::vector<JetPoly> eqs2;
        for (std::size_t j = 0; j < live.size(); ++j) {
          if (j == i) continue;
          const auto d = live[j].degree(x);
          JetPoly cleared;
          for (std::uint32_t k = 0; k <= d; ++k)
            cleared += live[j].coeff(x, k) * (-r).pow(k) * c.pow(d - k);
          eqs2.push_back(cleared);
        }
        auto p2 = pending;
        p2.push_back({x, -r, c});
        run(eqs2, fixed, p2, depth + 1);
        return;
      }
    }

    std::string msg = "no split found for {";
    for (std::size_t i = 0; i < live.size(); ++i) msg += (i ? ", " : "") + live[i].to_string();
    unresolved.push_back(msg + "}");
  }

  std::vector<std::map<SymbolId, Rational>> solutions;
  std::vector<std::string> unresolved;

 private:
  static std::vector<JetPoly> subs_all(const std::vector<JetPoly>& eqs, SymbolId x, const JetPoly& v) {
    std::vector<JetPoly> out;
    out.reserve(eqs.size());
    for (const auto& e : eqs) out.push_back(e.subs(x, v));
    return out;
  }

  void finish(std::map<SymbolId, Rational> fixed, const std::vector<Pending>& pending) {
    for (auto it = pending.rbegin(); it != pending.rend(); ++it) {
      std::map<SymbolId, JetPoly> vals;
      for (const auto& [s, r] : fixed) vals.emplace(s, JetPoly(r));
      JetPoly num = it->num.subs(vals), den = it->den.subs(vals);
      if (!num.is_constant() || !den.is_constant()) {
        unresolved.push_back("free parameter remains in " + it->num.to_string());
        return;
      }
      if (den.constant_term() == 0) return;  // covered by the c = 0 branch
      fixed[it->x] = num.constant_term() / den.constant_term();
    }
    for (SymbolId v : vars_) {
      if (!fixed.count(v)) {
        unresolved.push_back("free variable " + symbol_name(v));
        return;
      }
    }
    solutions.push_back(std::move(fixed));
  }

  std::vector<SymbolId> vars_;
  int branches_ = 0;
};

}  // namespace

LinearSolution solve_linear(const std::vector<JetPoly>& equations, const std::vector<SymbolId>& unknowns) {
  const std::set<SymbolId> unk(unknowns.begin(), unknowns.end());
  LinearSolution out;
  std::vector<JetPoly> pending;
  for (const auto& e : equations)
    if (!e.is_zero()) pending.push_back(e);

  bool progress = true;
  while (progress) {
    progress = false;
    for (std::size_t i = 0; i < pending.size() && !progress; ++i) {
      const JetPoly& eq = pending[i];
      if (!linear_in(eq, unk)) continue;
      for (SymbolId u : unknowns) {
        if (out.values.count(u) || eq.degree(u) != 1) continue;
        JetPoly k = eq.coeff(u, 1);
        if (!k.is_constant() || k.is_zero()) continue;
        JetPoly expr = (eq - k * JetPoly::var(u)) * JetPoly(Rational(-1) / k.constant_term());
        for (auto& [s, val] : out.values) val = val.subs(u, expr);
        out.values.emplace(u, expr);
        std::vector<JetPoly> next;
        for (std::size_t j = 0; j < pending.size(); ++j) {
          if (j == i) continue;
          JetPoly e = pending[j].subs(u, expr);
          if (!e.is_zero()) next.push_back(std::move(e));
        }
        pending = std::move(next);
        progress = true;
        break;
      }
    }
  }
  for (auto& e : pending) (mentions_any(e, unk) ? out.unresolved : out.obstructions).push_back(std::move(e));
  for (SymbolId u : unknowns)
    if (!out.values.count(u)) out.free.push_back(u);
  return out;
}

std::optional<std::vector<Rational>> rational_roots(const JetPoly& p, SymbolId x, JetPoly* irreducible_rest) {
  std::vector<Rational> c = dense(p, x);
  trim(c);
  std::vector<Rational> roots;
  if (c.size() == 1) {
    if (irreducible_rest) *irreducible_rest = p;
    return roots;
  }
  if (c[0] == 0) {
    roots.emplace_back(0);
    while (c.size() > 1 && c[0] == 0) c.erase(c.begin());
  }
  if (c.size() > 1) {
    mpz_class lcm = 1;
    for (const auto& a : c) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), a.get_den_mpz_t());
    auto a0 = divisors(mpz_class(c.front() * lcm));
    auto ad = divisors(mpz_class(c.back() * lcm));
    if (!a0 || !ad) return std::nullopt;
    for (const auto& num : *a0) {
      for (const auto& den : *ad) {
        for (int sgn : {1, -1}) {
          if (c.size() <= 1) break;
          Rational r(sgn * num, den);
          r.canonicalize();
          if (horner(c, r) != 0) continue;
          roots.push_back(r);
          while (c.size() > 1 && horner(c, r) == 0) c = deflate(c, r);
        }
      }
    }
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  if (irreducible_rest) *irreducible_rest = from_dense(c, x);
  return roots;
}

PolynomialSystemSolution solve_polynomial_system(const std::vector<JetPoly>& equations,
                                                 const std::vector<SymbolId>& vars) {
  const std::set<SymbolId> allowed(vars.begin(), vars.end());
  for (const auto& e : equations)
    for (SymbolId s : symbols_of(e))
      if (!allowed.count(s)) throw std::invalid_argument("solve_polynomial_system: unexpected symbol " + symbol_name(s));

  CaseSplitter splitter(vars);
  splitter.run(equations, {}, {}, 0);

  PolynomialSystemSolution out;
  for (auto& sol : splitter.solutions) {
    std::map<SymbolId, JetPoly> vals;
    for (const auto& [s, r] : sol) vals.emplace(s, JetPoly(r));
    bool ok = std::all_of(equations.begin(), equations.end(), [&](const JetPoly& e) { return e.subs(vals).is_zero(); });
    if (ok) out.solutions.push_back(std::move(sol));
  }
  std::sort(out.solutions.begin(), out.solutions.end());
  out.solutions.erase(std::unique(out.solutions.begin(), out.solutions.end()), out.solutions.end());
  out.unresolved = std::move(splitter.unresolved);
  return out;
}

}  // namespace gch::sym
