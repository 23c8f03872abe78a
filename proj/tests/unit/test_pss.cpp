#include <gtest/gtest.h>

#include "gch/symbolic/pss.hpp"

using namespace gch::sym;

namespace {

JetPoly V(int k) { return JetPoly::v(k); }
JetPoly P(SymbolId id) { return JetPoly::var(id); }

// Triplet at Gamma = 0 transcribed independently (n = v - v_2, b and eta free).
std::array<OneForm, 3> static_oracle(int s) {
  const JetPoly v = V(0), v1 = V(1), n = V(0) - V(2);
  const JetPoly b = P(param::b), eta = P(param::eta);
  return {OneForm{n + b, s * eta * v1 - v * n - b * v - v - b},
          OneForm{eta, s * v1 - eta - eta * v},
          OneForm{s * n + s * b + s, eta * v1 - s * (v * n + v + v * b + v + b + 1)}};
}

}  // namespace

TEST(Pss, ReducedResidualsVanish) {
  for (SignChoice s : {SignChoice::Upper, SignChoice::Lower}) {
    const PssResiduals r = pss_residuals(s);
    for (const TwoForm& f : r.reduced) EXPECT_TRUE(f.is_zero()) << f.C.to_string();
  }
}

// Before the PDE is used, d theta3 - theta1 ^ theta2 is -PDE (upper) or +PDE (lower).
TEST(Pss, RawResidualIsThePde) {
  const JetPoly pde = dgh_pde_polynomial();
  EXPECT_EQ(pss_residuals(SignChoice::Upper).raw[2].C, -pde);
  EXPECT_EQ(pss_residuals(SignChoice::Lower).raw[2].C, pde);
  EXPECT_TRUE(dgh_rule().apply(pde).is_zero());
}

TEST(Pss, EtaRelationIsNeeded) {
  auto th = pss_triplet(SignChoice::Upper);
  const Derivation dt = [](const JetPoly& p) { return total_tau(p); };
  const JetPoly raw = (exterior_d(th[0], dt) - wedge(th[2], th[1])).C;
  EXPECT_FALSE(dgh_rule().apply(raw).is_zero());
}

TEST(Pss, TripletAtGammaZeroMatchesStaticOracle) {
  for (auto [sign, s] : {std::pair{SignChoice::Upper, 1}, std::pair{SignChoice::Lower, -1}}) {
    const auto th = pss_triplet(sign);
    const auto st = static_frame_triplet(sign);
    const auto orc = static_oracle(s);
    for (int i = 0; i < 3; ++i) {
      EXPECT_EQ(th[i].A.subs(param::big_gamma, 0), orc[i].A) << i;
      EXPECT_EQ(th[i].B.subs(param::big_gamma, 0), orc[i].B) << i;
      EXPECT_EQ(st[i], orc[i]) << i;
      EXPECT_EQ(pullback_moving_frame(st[i]), th[i]) << i;
    }
  }
}

TEST(Pss, TotalTauRejectsTimeJets) {
  EXPECT_EQ(total_tau(V(0) * V(1)), JetPoly::jet(Family::T, 0) * V(1) + V(0) * JetPoly::jet(Family::T, 1));
  EXPECT_THROW(total_tau(JetPoly::jet(Family::T, 0)), std::invalid_argument);
}
