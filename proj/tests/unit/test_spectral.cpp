#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "gch/spectral.hpp"

using namespace gch;

namespace {

Field gaussian(const GridSpec& g, double a, double w, double xc = 0.0) {
  Field u(static_cast<std::size_t>(g.n()));
  for (int j = 0; j < g.n(); ++j) {
    const double s = (g.x(j) - xc) / w;
    u[static_cast<std::size_t>(j)] = a * std::exp(-s * s);
  }
  return u;
}

double max_abs_diff(const Field& a, const Field& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double max_abs(const Field& a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

TEST(Grid, NodesAndWrap) {
  const GridSpec g = make_grid(2.0, 16);
  EXPECT_DOUBLE_EQ(g.dx(), 0.25);
  EXPECT_DOUBLE_EQ(g.x(0), -2.0);
  EXPECT_DOUBLE_EQ(g.x(15), 1.75);
  EXPECT_NEAR(g.wrap(2.5), -1.5, 1e-15);
  EXPECT_NEAR(g.wrap(-6.25), 1.75, 1e-15);
  EXPECT_THROW(make_grid(1.0, 24), std::invalid_argument);
  EXPECT_THROW(make_grid(1.0, 8), std::invalid_argument);
  EXPECT_THROW(make_grid(-1.0, 64), std::invalid_argument);
}

TEST(Spectral, DerivativeOfTrigPolynomialIsExact) {
  const GridSpec g = make_grid(std::numbers::pi, 64);
  SpectralWorkspace ws(g);
  Field u(64), du(64), d2u(64);
  for (int j = 0; j < 64; ++j) {
    const double x = g.x(j);
    u[j] = std::sin(3 * x) + 0.5 * std::cos(7 * x);
    du[j] = 3 * std::cos(3 * x) - 3.5 * std::sin(7 * x);
    d2u[j] = -9 * std::sin(3 * x) - 24.5 * std::cos(7 * x);
  }
  EXPECT_LT(max_abs_diff(ws.dx(u), du), 1e-12);
  EXPECT_LT(max_abs_diff(ws.dxx(u), d2u), 1e-11);
}

TEST(Spectral, HelmholtzRoundTripOnRandomFields) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> nd;
  for (int n : {256, 512, 1024, 2048}) {
    SpectralWorkspace ws(make_grid(20.0, n));
    for (int rep = 0; rep < 5; ++rep) {
      Field u(static_cast<std::size_t>(n));
      for (auto& v : u) v = nd(rng);
      const Field back = ws.helmholtz_invert(ws.helmholtz_apply(u));
      const Field back2 = ws.helmholtz_apply(ws.helmholtz_invert(u));
      EXPECT_LT(max_abs_diff(back, u), 1e-12 * max_abs(u)) << n;
      EXPECT_LT(max_abs_diff(back2, u), 1e-12 * max_abs(u)) << n;
    }
  }
}

// Lambda^{-2} of a Gaussian in closed form (convolution with e^{-|x|}/2 on the line).
TEST(Spectral, InverseHelmholtzMatchesClosedForm) {
  const GridSpec g = make_grid(20.0, 1024);
  SpectralWorkspace ws(g);
  const double w = 1.0;
  const Field m = gaussian(g, 1.0, w);
  Field ref(m.size());
  for (int j = 0; j < g.n(); ++j) {
    const double x = g.x(j);
    const double c = std::sqrt(std::numbers::pi) * w / 4.0 * std::exp(w * w / 4.0);
    ref[static_cast<std::size_t>(j)] = c * (std::exp(-x) * std::erfc(w / 2.0 - x / w) + std::exp(x) * std::erfc(w / 2.0 + x / w));
  }
  // Periodic images contribute O(e^{-L}) near the box ends only.
  const Field spec = ws.helmholtz_invert(m), green = ws.green_convolve(m);
  for (int j = 0; j < g.n(); ++j) {
    const auto i = static_cast<std::size_t>(j);
    const double tol = std::abs(g.x(j)) <= 10.0 ? 1e-12 : 1e-8;
    EXPECT_NEAR(spec[i], ref[i], tol) << g.x(j);
    EXPECT_NEAR(green[i], ref[i], 1e-8) << g.x(j);
  }
}

TEST(Spectral, GreenConvolutionAgreesWithSpectral) {
  const GridSpec g = make_grid(20.0, 1024);
  SpectralWorkspace ws(g);
  Field m = gaussian(g, 0.7, 1.3, 2.0);
  const Field b = gaussian(g, -0.4, 0.8, -3.0);
  for (std::size_t i = 0; i < m.size(); ++i) m[i] += b[i];
  EXPECT_LT(max_abs_diff(ws.helmholtz_invert(m), ws.green_convolve(m)), 1e-8);
}

TEST(Spectral, SobolevNormOfGaussian) {
  const GridSpec g = make_grid(20.0, 1024);
  SpectralWorkspace ws(g);
  const double a = 0.3, w = 1.5;
  const Field u = gaussian(g, a, w);
  // ||u||_L2^2 = a^2 w sqrt(pi/2), ||u_x||_L2^2 = a^2 sqrt(pi/2) / w
  const double l2sq = a * a * w * std::sqrt(std::numbers::pi / 2.0);
  const double h1sq = l2sq + a * a * std::sqrt(std::numbers::pi / 2.0) / w;
  EXPECT_NEAR(ws.sobolev_norm(u, 0.0), std::sqrt(l2sq), 1e-13);
  EXPECT_NEAR(ws.sobolev_norm(u, 1.0), std::sqrt(h1sq), 1e-13);
}

TEST(Spectral, AntiderivativeOfGaussian) {
  const GridSpec g = make_grid(20.0, 1024);
  SpectralWorkspace ws(g);
  const Field f = gaussian(g, 1.0, 1.0);
  const Field F = ws.antiderivative(f);
  for (int j = 0; j < g.n(); j += 37) {
    const double ref = 0.5 * std::sqrt(std::numbers::pi) * (1.0 + std::erf(g.x(j)));
    EXPECT_NEAR(F[static_cast<std::size_t>(j)], ref, 1e-12) << g.x(j);
  }
}

TEST(Spectral, InterpolationOffGrid) {
  const GridSpec g = make_grid(20.0, 512);
  SpectralWorkspace ws(g);
  const Field u = gaussian(g, 1.0, 2.0, 0.3);
  const auto hat = ws.forward(u);
  for (double x : {-3.14159, 0.0001, 1.2345, 7.777, 19.99}) {
    const auto pv = ws.interpolate(hat, x);
    const double s = (x - 0.3) / 2.0;
    EXPECT_NEAR(pv.value, std::exp(-s * s), 1e-12);
    EXPECT_NEAR(pv.slope, -s * std::exp(-s * s), 1e-12);
  }
}

TEST(Spectral, DealiasKeepsLowBand) {
  const GridSpec g = make_grid(std::numbers::pi, 64);
  SpectralWorkspace ws(g);
  Field lo(64), hi(64);
  for (int j = 0; j < 64; ++j) {
    lo[j] = std::cos(5 * g.x(j));
    hi[j] = std::cos(30 * g.x(j));
  }
  EXPECT_LT(max_abs_diff(ws.dealias(lo), lo), 1e-14);
  EXPECT_LT(max_abs(ws.dealias(hi)), 1e-13);
}

TEST(Spectral, NormsBundle) {
  const GridSpec g = make_grid(20.0, 1024);
  SpectralWorkspace ws(g);
  const FieldState s = make_state(gaussian(g, 0.5, 1.0), ws);
  const NormBundle nb = norms(s, ws);
  EXPECT_NEAR(nb.mass_u, 0.5 * std::sqrt(std::numbers::pi), 1e-13);
  EXPECT_NEAR(nb.mass_m, nb.mass_u, 1e-13);  // the integral of u_xx vanishes
  EXPECT_NEAR(nb.linf_u, 0.5, 1e-15);
  // m = e^{-x^2}(3 - 4x^2)/2; its L1 norm in closed form
  const double r = std::sqrt(3.0) / 2.0;
  const double l1 = 0.5 * (std::sqrt(std::numbers::pi) * (2.0 * std::erf(r) - 1.0) + 8.0 * r * std::exp(-r * r));
  EXPECT_NEAR(nb.l1_m, l1, 5e-4);  // rectangle rule across the sign changes
}
