#include "gch/symbolic/jet_poly.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <sstream>
#include <unordered_map>

namespace gch::sym {

namespace {

constexpr const char* kFamilyPrefix[] = {"v", "vt", "w"};
constexpr const char* kParamNames[] = {"alpha", "beta", "gamma", "Gamma", "eta", "b", "eps"};

struct Registry {
  std::mutex mu;
  std::deque<std::string> names;  // stable references
  std::unordered_map<std::string, SymbolId> ids;

  Registry() {
    for (std::uint32_t f = 0; f < 3; ++f) {
      for (int k = 0; k <= kMaxJetOrder; ++k) {
        std::string n = kFamilyPrefix[f];
        if (k > 0) n += std::to_string(k);
        ids.emplace(n, static_cast<SymbolId>(names.size()));
        names.push_back(n);
      }
    }
    for (const char* p : kParamNames) {
      ids.emplace(p, static_cast<SymbolId>(names.size()));
      names.emplace_back(p);
    }
  }
};

Registry& registry() {
  static Registry r;
  return r;
}

}  // namespace

SymbolId jet_id(Family f, int order) {
  if (order < 0 || order > kMaxJetOrder) throw JetOrderOverflow("jet order out of range");
  return static_cast<SymbolId>(f) * kJetsPerFamily + static_cast<SymbolId>(order);
}

bool is_jet(SymbolId id) { return id < 3 * kJetsPerFamily; }
Family jet_family(SymbolId id) { return static_cast<Family>(id / kJetsPerFamily); }
int jet_order(SymbolId id) { return static_cast<int>(id % kJetsPerFamily); }

SymbolId symbol(const std::string& name) {
  auto& r = registry();
  std::lock_guard lock(r.mu);
  if (auto it = r.ids.find(name); it != r.ids.end()) return it->second;
  auto id = static_cast<SymbolId>(r.names.size());
  r.ids.emplace(name, id);
  r.names.push_back(name);
  return id;
}

const std::string& symbol_name(SymbolId id) {
  auto& r = registry();
  std::lock_guard lock(r.mu);
  if (id >= r.names.size()) throw std::out_of_range("unknown symbol id");
  return r.names[id];
}

// ---------------------------------------------------------------- Monomial

Monomial Monomial::of(SymbolId id, std::uint32_t exp) {
  Monomial m;
  if (exp > 0) m.f_.emplace_back(id, exp);
  return m;
}

std::uint32_t Monomial::degree(SymbolId id) const {
  for (const auto& [s, e] : f_)
    if (s == id) return e;
  return 0;
}

std::uint32_t Monomial::total_degree() const {
  std::uint32_t d = 0;
  for (const auto& [s, e] : f_) d += e;
  return d;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r;
  r.f_.reserve(f_.size() + o.f_.size());
  auto a = f_.begin(), b = o.f_.begin();
  while (a != f_.end() && b != o.f_.end()) {
    if (a->first < b->first) {
      r.f_.push_back(*a++);
    } else if (b->first < a->first) {
      r.f_.push_back(*b++);
    } else {
      r.f_.emplace_back(a->first, a->second + b->second);
      ++a;
      ++b;
    }
  }
  r.f_.insert(r.f_.end(), a, f_.end());
  r.f_.insert(r.f_.end(), b, o.f_.end());
  return r;
}

Monomial Monomial::without(SymbolId id) const {
  Monomial r;
  for (const auto& p : f_)
    if (p.first != id) r.f_.push_back(p);
  return r;
}

Monomial Monomial::lowered(SymbolId id) const {
  Monomial r = *this;
  for (auto it = r.f_.begin(); it != r.f_.end(); ++it) {
    if (it->first == id) {
      if (--it->second == 0) r.f_.erase(it);
      return r;
    }
  }
  throw std::logic_error("Monomial::lowered: symbol absent");
}

// ---------------------------------------------------------------- JetPoly

JetPoly::JetPoly(const Rational& c) {
  if (c != 0) terms_.emplace(Monomial{}, c);
}

JetPoly::JetPoly(int c) : JetPoly(Rational(c)) {}

JetPoly JetPoly::var(SymbolId id, std::uint32_t exp) { return monomial(Monomial::of(id, exp), 1); }

JetPoly JetPoly::monomial(const Monomial& m, const Rational& c) {
  JetPoly p;
  p.add_term(m, c);
  return p;
}

void JetPoly::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  if (static_cast<int>(m.degree(param::eps)) > eps_order_) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

bool JetPoly::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one()); }

Rational JetPoly::constant_term() const {
  auto it = terms_.find(Monomial{});
  return it == terms_.end() ? Rational(0) : it->second;
}

JetPoly JetPoly::with_eps_order(int order) const {
  JetPoly r;
  r.eps_order_ = order;
  for (const auto& [m, c] : terms_) r.add_term(m, c);
  return r;
}

JetPoly& JetPoly::operator+=(const JetPoly& o) {
  eps_order_ = std::min(eps_order_, o.eps_order_);
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  if (eps_order_ < kDefaultEpsOrder) *this = with_eps_order(eps_order_);
  return *this;
}

JetPoly& JetPoly::operator-=(const JetPoly& o) {
  eps_order_ = std::min(eps_order_, o.eps_order_);
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  if (eps_order_ < kDefaultEpsOrder) *this = with_eps_order(eps_order_);
  return *this;
}

JetPoly operator*(const JetPoly& a, const JetPoly& b) {
  JetPoly r;
  r.eps_order_ = std::min(a.eps_order_, b.eps_order_);
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
  return r;
}

JetPoly& JetPoly::operator*=(const JetPoly& o) { return *this = *this * o; }

JetPoly JetPoly::operator-() const {
  JetPoly r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

JetPoly JetPoly::pow(unsigned k) const {
  JetPoly result(1);
  result.eps_order_ = eps_order_;
  JetPoly base = *this;
  while (k > 0) {
    if (k & 1u) result *= base;
    k >>= 1u;
    if (k > 0) base *= base;
  }
  return result;
}

std::uint32_t JetPoly::degree(SymbolId id) const {
  std::uint32_t d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree(id));
  return d;
}

int JetPoly::max_order(Family f) const {
  int best = -1;
  for (const auto& [m, c] : terms_)
    for (const auto& [s, e] : m.factors())
      if (is_jet(s) && jet_family(s) == f) best = std::max(best, jet_order(s));
  return best;
}

JetPoly JetPoly::partial(SymbolId id) const {
  JetPoly r;
  r.eps_order_ = eps_order_;
  for (const auto& [m, c] : terms_) {
    auto d = m.degree(id);
    if (d > 0) r.add_term(m.lowered(id), c * d);
  }
  return r;
}

JetPoly JetPoly::coeff(SymbolId id, std::uint32_t exp) const {
  JetPoly r;
  r.eps_order_ = eps_order_;
  for (const auto& [m, c] : terms_)
    if (m.degree(id) == exp) r.add_term(m.without(id), c);
  return r;
}

std::map<Monomial, JetPoly> JetPoly::collect(const std::vector<SymbolId>& keys) const {
  std::map<Monomial, JetPoly> out;
  for (const auto& [m, c] : terms_) {
    Monomial key, rest;
    for (const auto& [s, e] : m.factors()) {
      if (std::find(keys.begin(), keys.end(), s) != keys.end())
        key = key * Monomial::of(s, e);
      else
        rest = rest * Monomial::of(s, e);
    }
    out[key].add_term(rest, c);
  }
  return out;
}

std::map<Monomial, JetPoly> JetPoly::collect_jets() const {
  std::map<Monomial, JetPoly> out;
  for (const auto& [m, c] : terms_) {
    Monomial key, rest;
    for (const auto& [s, e] : m.factors()) {
      if (is_jet(s))
        key = key * Monomial::of(s, e);
      else
        rest = rest * Monomial::of(s, e);
    }
    out[key].add_term(rest, c);
  }
  return out;
}

JetPoly JetPoly::subs(SymbolId id, const JetPoly& value) const { return subs(std::map<SymbolId, JetPoly>{{id, value}}); }

JetPoly JetPoly::subs(const std::map<SymbolId, JetPoly>& values) const {
  JetPoly r;
  r.eps_order_ = eps_order_;
  std::map<std::pair<SymbolId, std::uint32_t>, JetPoly> powers;
  for (const auto& [m, c] : terms_) {
    Monomial kept;
    JetPoly factor(c);
    factor.eps_order_ = eps_order_;
    for (const auto& [s, e] : m.factors()) {
      auto it = values.find(s);
      if (it == values.end()) {
        kept = kept * Monomial::of(s, e);
        continue;
      }
      auto key = std::make_pair(s, e);
      auto pit = powers.find(key);
      if (pit == powers.end()) pit = powers.emplace(key, it->second.with_eps_order(eps_order_).pow(e)).first;
      factor *= pit->second;
    }
    r += factor * monomial(kept, 1);
  }
  return r;
}

JetPoly JetPoly::rewrite_power(SymbolId id, std::uint32_t power, const JetPoly& replacement) const {
  if (power == 0) throw std::invalid_argument("rewrite_power: power must be positive");
  JetPoly cur = *this;
  while (cur.degree(id) >= power) {
    JetPoly next;
    next.eps_order_ = eps_order_;
    for (const auto& [m, c] : cur.terms_) {
      auto d = m.degree(id);
      if (d < power) {
        next.add_term(m, c);
        continue;
      }
      Monomial rest = m.without(id) * Monomial::of(id, d - power);
      next += replacement * monomial(rest, c);
    }
    cur = std::move(next);
  }
  return cur;
}

JetPoly JetPoly::truncate_eps(int order) const { return with_eps_order(std::min(order, eps_order_)).with_eps_order(eps_order_); }

std::string JetPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rational a = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool unit = a == 1 && !m.is_one();
    if (!unit) os << a.get_str();
    bool lead = unit;
    for (const auto& [s, e] : m.factors()) {
      if (!lead) os << "*";
      lead = false;
      os << symbol_name(s);
      if (e > 1) os << "^" << e;
    }
  }
  return os.str();
}

// ---------------------------------------------------------------- calculus

JetPoly total_x(const JetPoly& p) {
  JetPoly r = JetPoly(0).with_eps_order(p.eps_order());
  std::vector<SymbolId> jets;
  for (const auto& [m, c] : p.terms())
    for (const auto& [s, e] : m.factors())
      if (is_jet(s)) jets.push_back(s);
  std::sort(jets.begin(), jets.end());
  jets.erase(std::unique(jets.begin(), jets.end()), jets.end());
  for (SymbolId s : jets) {
    int k = jet_order(s);
    if (k >= kMaxJetOrder) throw JetOrderOverflow("total_x: jet order " + std::to_string(k + 1) + " exceeds the supported range");
    r += p.partial(s) * JetPoly::var(s + 1);
  }
  return r;
}

JetPoly total_x(const JetPoly& p, int times) {
  JetPoly r = p;
  for (int i = 0; i < times; ++i) r = total_x(r);
  return r;
}

JetPoly euler_op(const JetPoly& density, Family f) {
  JetPoly r = JetPoly(0).with_eps_order(density.eps_order());
  int top = density.max_order(f);
  for (int k = 0; k <= top; ++k) {
    JetPoly term = total_x(density.partial(jet_id(f, k)), k);
    if (k % 2 == 0)
      r += term;
    else
      r -= term;
  }
  return r;
}

JetPoly compose(const JetPoly& p, Family from, const JetPoly& q) {
  int top = p.max_order(from);
  std::map<SymbolId, JetPoly> values;
  JetPoly d = q.with_eps_order(p.eps_order());
  for (int k = 0; k <= top; ++k) {
    values.emplace(jet_id(from, k), d);
    if (k < top) d = total_x(d);
  }
  return p.subs(values);
}

JetPoly antiderivative_first_order(const JetPoly& p, Family f) {
  const SymbolId f0 = jet_id(f, 0), f1 = jet_id(f, 1);
  JetPoly r = JetPoly(0).with_eps_order(p.eps_order());
  for (const auto& [m, c] : p.terms()) {
    if (m.degree(f1) != 1) throw std::invalid_argument("antiderivative_first_order: term not linear in the first jet");
    for (const auto& [s, e] : m.factors())
      if (is_jet(s) && s != f0 && s != f1)
        throw std::invalid_argument("antiderivative_first_order: higher jets present");
    auto d = m.degree(f0);
    Monomial rest = m.without(f1).without(f0) * Monomial::of(f0, d + 1);
    r += JetPoly::monomial(rest, c / Rational(d + 1));
  }
  return r;
}

std::pair<JetPoly, std::vector<SymbolId>> ansatz(const std::string& prefix, int degree) {
  JetPoly p;
  std::vector<SymbolId> ids;
  for (int i = 0; i <= degree; ++i) {
    SymbolId id = symbol(prefix + std::to_string(i));
    ids.push_back(id);
    p += JetPoly::var(id) * JetPoly::v(0).pow(static_cast<unsigned>(i));
  }
  return {p, ids};
}

}  // namespace gch::sym
