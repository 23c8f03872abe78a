#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gch::sym {

using Rational = mpq_class;
using SymbolId = std::uint32_t;

/// Jet families. V_k stands for d^k v / dx^k, T_k for d^k v_t / dx^k, and W_k
/// is an auxiliary jet family (used for the square-root algebra u = w^2).
enum class Family : std::uint32_t { V = 0, T = 1, W = 2 };

inline constexpr int kMaxJetOrder = 8;
inline constexpr std::uint32_t kJetsPerFamily = kMaxJetOrder + 1;

SymbolId jet_id(Family f, int order);
bool is_jet(SymbolId id);
Family jet_family(SymbolId id);
int jet_order(SymbolId id);

/// Fixed parameter symbols.
namespace param {
inline constexpr SymbolId alpha = 3 * kJetsPerFamily;
inline constexpr SymbolId beta = alpha + 1;
inline constexpr SymbolId gamma = alpha + 2;
inline constexpr SymbolId big_gamma = alpha + 3;
inline constexpr SymbolId eta = alpha + 4;
inline constexpr SymbolId b = alpha + 5;
inline constexpr SymbolId eps = alpha + 6;
}  // namespace param

/// Returns the id of a named symbol, registering it on first use. Jet and
/// parameter names ("v", "v3", "vt2", "w1", "alpha", "Gamma", "eps", ...)
/// resolve to the fixed ids. Thread safe.
SymbolId symbol(const std::string& name);
const std::string& symbol_name(SymbolId id);

struct JetOrderOverflow : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TruncationOverflow : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Product of symbol powers, kept sorted by id with positive exponents.
class Monomial {
 public:
  Monomial() = default;
  static Monomial of(SymbolId id, std::uint32_t exp = 1);

  const std::vector<std::pair<SymbolId, std::uint32_t>>& factors() const { return f_; }
  bool is_one() const { return f_.empty(); }
  std::uint32_t degree(SymbolId id) const;
  std::uint32_t total_degree() const;

  Monomial operator*(const Monomial& o) const;
  /// Removes `id` entirely.
  Monomial without(SymbolId id) const;
  /// Lowers the exponent of id by one; the exponent must be positive.
  Monomial lowered(SymbolId id) const;

  auto operator<=>(const Monomial&) const = default;
  bool operator==(const Monomial&) const = default;

 private:
  std::vector<std::pair<SymbolId, std::uint32_t>> f_;
};

/// Differential polynomial with exact rational coefficients. Terms whose
/// eps-degree exceeds eps_order() are discarded on every operation.
class JetPoly {
 public:
  using Terms = std::map<Monomial, Rational>;

  static constexpr int kDefaultEpsOrder = 4;

  JetPoly() = default;
  JetPoly(const Rational& c);  // NOLINT(google-explicit-constructor)
  JetPoly(int c);              // NOLINT(google-explicit-constructor)

  static JetPoly var(SymbolId id, std::uint32_t exp = 1);
  static JetPoly var(const std::string& name) { return var(symbol(name)); }
  static JetPoly jet(Family f, int order) { return var(jet_id(f, order)); }
  static JetPoly v(int order) { return jet(Family::V, order); }
  static JetPoly monomial(const Monomial& m, const Rational& c);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  bool is_constant() const;
  Rational constant_term() const;

  int eps_order() const { return eps_order_; }
  JetPoly with_eps_order(int order) const;

  JetPoly& operator+=(const JetPoly& o);
  JetPoly& operator-=(const JetPoly& o);
  JetPoly& operator*=(const JetPoly& o);
  friend JetPoly operator+(JetPoly a, const JetPoly& b) { return a += b; }
  friend JetPoly operator-(JetPoly a, const JetPoly& b) { return a -= b; }
  friend JetPoly operator*(const JetPoly& a, const JetPoly& b);
  JetPoly operator-() const;
  JetPoly pow(unsigned k) const;

  bool operator==(const JetPoly& o) const { return terms_ == o.terms_; }

  std::uint32_t degree(SymbolId id) const;
  bool contains(SymbolId id) const { return degree(id) > 0; }
  /// Highest order of the family present, or -1.
  int max_order(Family f) const;

  JetPoly partial(SymbolId id) const;
  /// Coefficient of id^exp (terms with exactly that exponent, id removed).
  JetPoly coeff(SymbolId id, std::uint32_t exp) const;
  /// Groups terms by their monomial restricted to `keys`; the map values are
  /// the cofactors. A key absent from a term contributes exponent 0.
  std::map<Monomial, JetPoly> collect(const std::vector<SymbolId>& keys) const;
  /// Groups terms by the part of each monomial made of jet symbols.
  std::map<Monomial, JetPoly> collect_jets() const;

  JetPoly subs(SymbolId id, const JetPoly& value) const;
  JetPoly subs(const std::map<SymbolId, JetPoly>& values) const;
  /// Replaces every occurrence of id^power by `replacement`, repeatedly.
  JetPoly rewrite_power(SymbolId id, std::uint32_t power, const JetPoly& replacement) const;
  JetPoly truncate_eps(int order) const;

  std::string to_string() const;

 private:
  void add_term(const Monomial& m, const Rational& c);

  Terms terms_;
  int eps_order_ = kDefaultEpsOrder;
};

/// Total x-derivative: every jet F_k contributes dP/dF_k * F_{k+1}.
/// Throws JetOrderOverflow if a jet of order kMaxJetOrder would be differentiated.
JetPoly total_x(const JetPoly& p);
JetPoly total_x(const JetPoly& p, int times);

/// Variational derivative sum_k (-1)^k D^k dP/dF_k over one jet family.
JetPoly euler_op(const JetPoly& density, Family f = Family::V);

/// Substitutes F_k -> D^k q for every jet of family `from` (a change of
/// dependent variable, e.g. u = v + eps^2 v_2 / 2 + ...).
JetPoly compose(const JetPoly& p, Family from, const JetPoly& q);

/// Antiderivative of g(F_0) F_1 for a polynomial g, returning G(F_0) with
/// G' = g. Throws std::invalid_argument for any other shape.
JetPoly antiderivative_first_order(const JetPoly& p, Family f = Family::V);

/// Polynomial sum_{i<=degree} coef_i v^i with fresh coefficient symbols
/// named prefix0, prefix1, ...; the symbol ids are returned alongside.
std::pair<JetPoly, std::vector<SymbolId>> ansatz(const std::string& prefix, int degree);

}  // namespace gch::sym
