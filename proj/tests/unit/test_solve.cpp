#include <gtest/gtest.h>

#include "gch/symbolic/solve.hpp"
#include "gch/symbolic/verify.hpp"

using namespace gch::sym;

TEST(Solve, LinearWithSymbolicCoefficients) {
  const SymbolId x = symbol("sx"), y = symbol("sy");
  const JetPoly X = JetPoly::var(x), Y = JetPoly::var(y), a = JetPoly::var(param::alpha);
  const LinearSolution s = solve_linear({X + Y - a, X - Y - 1}, {x, y});
  ASSERT_TRUE(s.consistent());
  EXPECT_EQ(s.values.at(x), Rational(1, 2) * a + Rational(1, 2));
  EXPECT_EQ(s.values.at(y), Rational(1, 2) * a - Rational(1, 2));

  const LinearSolution o = solve_linear({X - a, 2 * X - 1}, {x});
  EXPECT_FALSE(o.consistent());
  ASSERT_EQ(o.obstructions.size(), 1u);

  const LinearSolution f = solve_linear({X + Y}, {x, y});
  EXPECT_EQ(f.free.size(), 1u);
}

TEST(Solve, RationalRoots) {
  const SymbolId x = symbol("sx");
  const JetPoly X = JetPoly::var(x);
  JetPoly rest;
  const auto r = rational_roots((2 * X - 1) * (X + 3) * (X * X + 1) * (X + 3), x, &rest);
  ASSERT_TRUE(r.has_value());
  ASSERT_EQ(r->size(), 2u);
  EXPECT_EQ((*r)[0], -3);
  EXPECT_EQ((*r)[1], Rational(1, 2));
  EXPECT_EQ(rest.degree(x), 2u);
}

TEST(Solve, PolynomialSystemCaseSplit) {
  const SymbolId x = symbol("sx"), y = symbol("sy");
  const JetPoly X = JetPoly::var(x), Y = JetPoly::var(y);
  const auto s = solve_polynomial_system({X * Y, X + Y - 1}, {x, y});
  ASSERT_TRUE(s.complete());
  ASSERT_EQ(s.solutions.size(), 2u);
  for (const auto& pt : s.solutions) {
    EXPECT_EQ(pt.at(x) * pt.at(y), 0);
    EXPECT_EQ(pt.at(x) + pt.at(y), 1);
  }
  EXPECT_TRUE(solve_polynomial_system({X * X + 1}, {x}).solutions.empty());
}

TEST(Verify, AllGroupsPass) {
  const auto v = run_verification({"all"});
  EXPECT_GE(v.size(), 20u);
  for (const auto& r : v) EXPECT_TRUE(r.pass) << r.name << " " << r.detail;
  EXPECT_TRUE(all_pass(v));
  EXPECT_EQ(run_verification({"rotation"}).size(), 2u);
  EXPECT_THROW(run_verification({"nope"}), std::invalid_argument);
  EXPECT_TRUE(is_identity_group("pss"));
  EXPECT_FALSE(is_identity_group("nope"));
}
