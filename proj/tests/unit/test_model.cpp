#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "gch/model.hpp"
#include "gch/symbolic/hamiltonian.hpp"

using namespace gch;

TEST(Model, ValidateRejectsNonFinite) {
  EXPECT_NO_THROW((ModelParams{1, 2, 3, 4}.validate()));
  EXPECT_THROW((ModelParams{std::numeric_limits<double>::quiet_NaN(), 0, 0, 0}.validate()), std::invalid_argument);
  EXPECT_THROW((ModelParams{0, 0, 0, std::numeric_limits<double>::infinity()}.validate()), std::invalid_argument);
}

TEST(Model, HAndDerivative) {
  const ModelParams p{0.5, -0.3, 0.8, 0.25};
  for (double u : {-1.2, 0.0, 0.4, 2.0}) {
    const double ref = 0.75 * u - 0.1 * u * u * u + 0.2 * u * u * u * u;
    EXPECT_NEAR(eval_h(p, u), ref, 1e-15);
    const double d = 1e-6;
    EXPECT_NEAR(eval_h_prime(p, u), (eval_h(p, u + d) - eval_h(p, u - d)) / (2 * d), 1e-8);
  }
}

namespace {

struct RotationOracle {
  double c, alpha_f, beta0, beta_f, omega1, omega2;
};

// Independent transcription: c from the reciprocal root, powers expanded by hand.
RotationOracle rotation_oracle(double omega) {
  RotationOracle r;
  r.c = 1.0 / (omega + std::hypot(1.0, omega));
  const double c = r.c, c2 = c * c, c4 = c2 * c2, d = 1.0 + c2;
  r.alpha_f = c2 / d;
  r.beta0 = (c * c4 + 6.0 * c * c2 - c) / (6.0 * d * d);
  r.beta_f = (3.0 * c4 + 8.0 * c2 - 1.0) / (6.0 * d * d);
  r.omega1 = -1.5 * (c * c4 - 3.0 * c * c2 + 2.0 * c) / (d * d * d);
  r.omega2 = 0.5 * (c2 - 1.0) * (c2 - 1.0) * (8.0 * c4 - 17.0 * c2 + 2.0) / (d * d * d * d * d);
  return r;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace

TEST(Rotation, OmegaZeroGivesVanishingBetaGamma) {
  const RotationPreset r = rotation_preset(0.0);
  EXPECT_EQ(r.c, 1.0);
  EXPECT_EQ(r.params.beta, 0.0);
  EXPECT_EQ(r.params.gamma, 0.0);
  EXPECT_EQ(r.params.alpha, -1.0);
  EXPECT_NEAR(r.params.big_gamma, 0.6, 1e-15);
}

TEST(Rotation, ConstantsMatchIndependentOracle) {
  for (double omega : {0.0, 0.05, 0.25, 0.5, 1.0, 2.0, -0.3}) {
    const RotationPreset r = rotation_preset(omega);
    const RotationOracle o = rotation_oracle(omega);
    EXPECT_LT(rel(r.c, o.c), 1e-14) << omega;
    EXPECT_LT(rel(r.alpha_f, o.alpha_f), 1e-14) << omega;
    EXPECT_LT(rel(r.beta0, o.beta0), 1e-14) << omega;
    EXPECT_LT(rel(r.beta_f, o.beta_f), 1e-14) << omega;
    EXPECT_LT(rel(r.omega1, o.omega1), 1e-14) << omega;
    EXPECT_LT(rel(r.omega2, o.omega2), 1e-14) << omega;
  }
}

TEST(Rotation, FloatAgreesWithExactRationals) {
  using gch::sym::Rational;
  for (const Rational& c : {Rational(1), Rational(1, 2), Rational(3, 4), Rational(5, 4), Rational(2, 3)}) {
    const auto e = gch::sym::rotation_exact(c);
    const RotationPreset r = rotation_preset(e.omega.get_d());
    EXPECT_LT(rel(r.c, e.c.get_d()), 1e-14);
    EXPECT_LT(rel(r.alpha_f, e.alpha_f.get_d()), 1e-14);
    EXPECT_LT(rel(r.beta0, e.beta0.get_d()), 1e-14);
    EXPECT_LT(rel(r.beta_f, e.beta_f.get_d()), 1e-14);
    EXPECT_LT(rel(r.omega1, e.omega1.get_d()), 1e-14);
    EXPECT_LT(rel(r.omega2, e.omega2.get_d()), 1e-14);
    EXPECT_LT(rel(r.params.beta, e.beta.get_d()), 1e-13);
    EXPECT_LT(rel(r.params.gamma, e.gamma.get_d()), 1e-13);
    EXPECT_LT(rel(r.params.big_gamma, e.big_gamma.get_d()), 1e-14);
  }
}

TEST(Rotation, RejectsNonFinite) {
  EXPECT_THROW(rotation_preset(std::numeric_limits<double>::infinity()), std::invalid_argument);
}
