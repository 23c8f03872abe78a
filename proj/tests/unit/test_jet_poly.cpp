#include <gtest/gtest.h>

#include <random>

#include "gch/symbolic/jet_poly.hpp"

using namespace gch::sym;

namespace {

JetPoly V(int k) { return JetPoly::v(k); }

// Pulls P back along v = q(x) for a polynomial q in the symbol "xx".
JetPoly along(const JetPoly& p, const JetPoly& q) {
  const SymbolId x = symbol("xx");
  std::map<SymbolId, JetPoly> s;
  JetPoly d = q;
  for (int k = 0; k <= kMaxJetOrder; ++k) {
    s[jet_id(Family::V, k)] = d;
    d = d.partial(x);
  }
  return p.subs(s);
}

JetPoly random_poly(std::mt19937& rng, int terms, int max_order) {
  std::uniform_int_distribution<int> coef(-5, 5), ord(0, max_order), deg(1, 3);
  JetPoly p;
  for (int i = 0; i < terms; ++i) {
    JetPoly t = Rational(coef(rng), 1 + std::abs(coef(rng)));
    const int factors = deg(rng);
    for (int f = 0; f < factors; ++f) t *= V(ord(rng));
    p += t;
  }
  return p;
}

}  // namespace

TEST(JetPoly, ArithmeticAndNames) {
  const JetPoly a = V(0) + 2 * V(1);
  const JetPoly sq = a * a;
  EXPECT_EQ(sq, V(0).pow(2) + 4 * V(0) * V(1) + 4 * V(1).pow(2));
  EXPECT_TRUE((a - a).is_zero());
  EXPECT_EQ(symbol("v3"), jet_id(Family::V, 3));
  EXPECT_EQ(symbol("alpha"), param::alpha);
  EXPECT_EQ(symbol_name(jet_id(Family::T, 2)), "vt2");
  EXPECT_EQ(JetPoly::var("Gamma").degree(param::big_gamma), 1u);
  EXPECT_EQ(sq.max_order(Family::V), 1);
  EXPECT_EQ(sq.max_order(Family::W), -1);
}

TEST(JetPoly, EpsTruncation) {
  const JetPoly e = JetPoly::var(param::eps);
  JetPoly p = 1 + e;
  p = p.pow(6);
  EXPECT_EQ(p.degree(param::eps), 4u);
  EXPECT_EQ(p.coeff(param::eps, 4), JetPoly(15));
  EXPECT_EQ(p.truncate_eps(2), 1 + 6 * e + 15 * e * e);
}

// Oracle: along a polynomial curve, D P must equal d/dx of P(q(x)).
TEST(JetPoly, TotalDerivativeAgreesWithCurveDerivative) {
  std::mt19937 rng(11);
  const SymbolId x = symbol("xx");
  const JetPoly X = JetPoly::var(x);
  const JetPoly q = Rational(1, 3) - 2 * X + Rational(5, 7) * X.pow(3) + X.pow(6);
  for (int rep = 0; rep < 20; ++rep) {
    const JetPoly p = random_poly(rng, 5, 4);
    EXPECT_EQ(along(total_x(p), q), along(p, q).partial(x)) << p.to_string();
  }
  EXPECT_EQ(total_x(V(0).pow(2), 2), 2 * V(1).pow(2) + 2 * V(0) * V(2));
  EXPECT_THROW(total_x(V(kMaxJetOrder)), JetOrderOverflow);
}

TEST(JetPoly, EulerOperator) {
  EXPECT_EQ(euler_op(Rational(1, 2) * V(1).pow(2)), -V(2));
  EXPECT_EQ(euler_op(V(0).pow(3)), 3 * V(0).pow(2));
  EXPECT_EQ(euler_op(V(0) * V(2)), 2 * V(2));
  std::mt19937 rng(5);
  for (int rep = 0; rep < 20; ++rep) {
    const JetPoly q = random_poly(rng, 4, 3);
    EXPECT_TRUE(euler_op(total_x(q)).is_zero()) << q.to_string();
  }
}

TEST(JetPoly, ComposeAndAntiderivative) {
  const JetPoly e = JetPoly::var(param::eps);
  const JetPoly q = V(0) + e * e * V(2);
  EXPECT_EQ(compose(V(0) * V(1), Family::V, q), q * total_x(q));
  const JetPoly g = 3 * V(0).pow(2) + Rational(1, 2);
  EXPECT_EQ(antiderivative_first_order(g * V(1)), V(0).pow(3) + Rational(1, 2) * V(0));
  EXPECT_THROW(antiderivative_first_order(V(2)), std::invalid_argument);
}

TEST(JetPoly, RewritePowerAndCollect) {
  const JetPoly eta = JetPoly::var(param::eta);
  const JetPoly r = (eta.pow(5) + eta).rewrite_power(param::eta, 2, JetPoly(3));
  EXPECT_EQ(r, 10 * eta);
  const JetPoly p = JetPoly::var(param::alpha) * V(1) + 2 * V(1) + V(0) * V(1);
  const auto c = p.collect_jets();
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c.at(Monomial::of(jet_id(Family::V, 1))), JetPoly::var(param::alpha) + 2);
  auto [a, ids] = ansatz("k", 2);
  EXPECT_EQ(ids.size(), 3u);
  EXPECT_EQ(a.coeff(jet_id(Family::V, 0), 2), JetPoly::var(ids[2]));
}
