#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gch/symbolic/jet_poly.hpp"

namespace gch::sym {

struct LinearSolution {
  /// Unknown -> expression in the remaining symbols (free unknowns may appear).
  std::map<SymbolId, JetPoly> values;
  std::vector<SymbolId> free;
  /// Nonzero unknown-free remainders: conditions on the other symbols.
  std::vector<JetPoly> obstructions;
  /// Equations left with unknowns and no rational pivot.
  std::vector<JetPoly> unresolved;

  bool consistent() const { return obstructions.empty() && unresolved.empty(); }
};

/// Gaussian elimination over the rationals for equations linear in
/// `unknowns` whose coefficients may involve other symbols. Only rational
/// pivots are used, so the result never divides by a symbolic expression.
LinearSolution solve_linear(const std::vector<JetPoly>& equations, const std::vector<SymbolId>& unknowns);

/// Rational roots of a univariate polynomial, without multiplicity, ascending.
/// `irreducible_rest` receives the cofactor left after dividing out all
/// rational roots (a constant when every root is rational). Returns nullopt
/// when the coefficients are too large to enumerate divisors.
std::optional<std::vector<Rational>> rational_roots(const JetPoly& p, SymbolId x, JetPoly* irreducible_rest = nullptr);

struct PolynomialSystemSolution {
  std::vector<std::map<SymbolId, Rational>> solutions;  // rational points, sorted
  std::vector<std::string> unresolved;                  // branches the case split could not finish

  bool complete() const { return unresolved.empty(); }
};

/// Case-splitting solver for small polynomial systems in `vars` with rational
/// coefficients. Splits on monomial content, rational roots of univariate
/// members and linear occurrences; every reported point is checked exactly.
PolynomialSystemSolution solve_polynomial_system(const std::vector<JetPoly>& equations,
                                                 const std::vector<SymbolId>& vars);

}  // namespace gch::sym
