#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "gch/certificates.hpp"
#include "gch/monitors.hpp"

using namespace gch;

namespace {

const ModelParams kSteep{0.001, 0.003, 0.004, 0.001};

Field gaussian(const GridSpec& g, double a, double w) {
  Field u(static_cast<std::size_t>(g.n()));
  for (int j = 0; j < g.n(); ++j) u[static_cast<std::size_t>(j)] = a * std::exp(-std::pow(g.x(j) / w, 2));
  return u;
}

// Closed forms for u0 = a exp(-(x/w)^2) on the line.
double gaussian_y0(double a, double w) { return -std::sqrt(2.0) * a / w * std::exp(-0.5); }
double gaussian_h1(double a, double w) {
  return a * std::sqrt(std::sqrt(std::numbers::pi / 2.0) * (w + 1.0 / w));
}

}  // namespace

TEST(Certificates, KSigmaAndExponent) {
  EXPECT_DOUBLE_EQ(k_of({0.1, -0.9, 0.2, -0.05}), 4 * 0.3);
  EXPECT_DOUBLE_EQ(k_of({0, 0, 0, 0}), 0.0);
  EXPECT_DOUBLE_EQ(sigma_default(0.5), 1.0 / 19.0);
  EXPECT_DOUBLE_EQ(validate_sigma(0.01, 0.5), 0.01);
  EXPECT_THROW(validate_sigma(0.1, 0.5), std::invalid_argument);
  EXPECT_THROW(validate_sigma(0.0, 0.5), std::invalid_argument);
  EXPECT_EQ(p_exponent(0.5), 1);
  EXPECT_EQ(p_exponent(1.0), 4);
  EXPECT_EQ(p_exponent(2.0), 4);
  EXPECT_THROW(p_exponent(0.0), std::domain_error);
}

TEST(Certificates, BreakingOnSteepGaussianMatchesClosedForm) {
  const GridSpec g = make_grid(8.0, 4096);
  SpectralWorkspace ws(g);
  const double a = 0.5, w = 0.5;
  const auto c = breaking_certificate(gaussian(g, a, w), kSteep, ws);
  const double y0 = gaussian_y0(a, w), h1 = gaussian_h1(a, w);
  const double sigma = 1.0 / (1.0 + 36.0 * 0.004);
  // y0 is a refined grid minimum, so it carries O(dx^3) sampling error.
  EXPECT_NEAR(c.y0, y0, 1e-6);
  EXPECT_NEAR(c.h1, h1, 1e-12);
  EXPECT_NEAR(c.sigma, sigma, 1e-15);
  EXPECT_EQ(c.p, 1);
  EXPECT_TRUE(c.holds);
  const double eps = 1.0 - h1 / (2.0 * sigma * y0 * y0);
  EXPECT_NEAR(c.eps, eps, 1e-6);
  EXPECT_NEAR(c.t_bound / (4.0 / (eps * std::abs(y0))), 1.0, 1e-5);
  EXPECT_NEAR(std::abs(c.x_star), w / std::sqrt(2.0), 1e-4);
}

// For p = 1 the certificate flips where sqrt(2 sigma) |y0| = sqrt(h1); both sides are explicit in a.
TEST(Certificates, ThresholdAmplitudeByBisection) {
  const GridSpec g = make_grid(8.0, 4096);
  SpectralWorkspace ws(g);
  const double w = 0.5;
  const double sigma = 1.0 / (1.0 + 36.0 * 0.004);
  const double H = gaussian_h1(1.0, w);
  const double a_star = H * w * w * std::exp(1.0) / (4.0 * sigma);
  EXPECT_NEAR(a_star, 0.344033312710470907, 1e-15);  // frozen

  double lo = 0.1, hi = 0.6;
  ASSERT_FALSE(breaking_certificate(gaussian(g, lo, w), kSteep, ws).holds);
  ASSERT_TRUE(breaking_certificate(gaussian(g, hi, w), kSteep, ws).holds);
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    (breaking_certificate(gaussian(g, mid, w), kSteep, ws).holds ? hi : lo) = mid;
  }
  EXPECT_NEAR(hi, a_star, 1e-6);
}

TEST(Certificates, H1GoldenAtFineGrid) {
  const GridSpec g = make_grid(8.0, 1 << 16);
  SpectralWorkspace ws(g);
  const auto c = breaking_certificate(gaussian(g, 0.5, 0.5), kSteep, ws);
  EXPECT_NEAR(c.h1, 0.885054425344672042, 1e-13);
  EXPECT_NEAR(c.y0, -0.857763884960706796, 1e-10);
}

TEST(Certificates, SigmaOverride) {
  const GridSpec g = make_grid(8.0, 1024);
  SpectralWorkspace ws(g);
  const Field u = gaussian(g, 0.5, 0.5);
  EXPECT_THROW(breaking_certificate(u, kSteep, ws, 0.95), std::invalid_argument);
  const auto c = breaking_certificate(u, kSteep, ws, 0.1);
  EXPECT_DOUBLE_EQ(c.sigma, 0.1);
  EXPECT_FALSE(c.holds);
}

TEST(Certificates, ZeroDataIsDegenerate) {
  SpectralWorkspace ws(make_grid(8.0, 64));
  const auto c = breaking_certificate(Field(64, 0.0), kSteep, ws);
  EXPECT_TRUE(c.degenerate);
  EXPECT_FALSE(c.holds);
}

TEST(Certificates, GlobalSignPatterns) {
  const GridSpec g = make_grid(20.0, 1024);
  SpectralWorkspace ws(g);
  Field bump(1024), odd(1024), wrong(1024);
  for (int j = 0; j < 1024; ++j) {
    const double x = g.x(j), b = std::exp(-x * x);
    bump[j] = b;
    odd[j] = std::tanh(x) * b;
    wrong[j] = -std::tanh(x) * b;
  }
  auto cert = [&](const Field& m, PatternKind k) { return global_certificate(ws.helmholtz_invert(m), m, ws, k); };

  const auto s = cert(bump, PatternKind::SingleSign);
  EXPECT_TRUE(s.holds);
  EXPECT_NEAR(s.l1_m0, std::sqrt(std::numbers::pi), 1e-12);
  EXPECT_DOUBLE_EQ(s.slope_floor, -s.l1_m0);
  EXPECT_FALSE(cert(odd, PatternKind::SingleSign).holds);

  const auto n = cert(odd, PatternKind::NegThenPos);
  EXPECT_TRUE(n.holds);
  ASSERT_TRUE(n.x0.has_value());
  EXPECT_NEAR(*n.x0, 0.0, g.dx());
  EXPECT_DOUBLE_EQ(n.slope_floor, -n.h1_u0);
  EXPECT_FALSE(cert(wrong, PatternKind::NegThenPos).holds);
  EXPECT_TRUE(cert(Field(1024, 0.0), PatternKind::SingleSign).degenerate);
}

TEST(Certificates, PatternKindNames) {
  EXPECT_EQ(pattern_kind_from_string(to_string(PatternKind::SingleSign)), PatternKind::SingleSign);
  EXPECT_EQ(pattern_kind_from_string(to_string(PatternKind::NegThenPos)), PatternKind::NegThenPos);
  EXPECT_FALSE(pattern_kind_from_string("x"));
}
