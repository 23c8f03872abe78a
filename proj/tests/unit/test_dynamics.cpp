#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "gch/dynamics.hpp"

using namespace gch;

namespace {

Field gaussian(const GridSpec& g, double a, double w) {
  Field u(static_cast<std::size_t>(g.n()));
  for (int j = 0; j < g.n(); ++j) u[static_cast<std::size_t>(j)] = a * std::exp(-std::pow(g.x(j) / w, 2));
  return u;
}

}  // namespace

// Small-amplitude limit: e^{ikx} evolves with u_t = i k (-Gamma + (alpha + Gamma)/(1 + k^2)) u.
TEST(Dynamics, LinearDispersionRelation) {
  const GridSpec g = make_grid(std::numbers::pi, 64);
  SpectralWorkspace ws(g);
  const ModelParams p{0.7, 0.4, -0.2, 0.3};
  const double eps = 1e-7;
  for (int k : {1, 3, 8}) {
    Field u(64);
    for (int j = 0; j < 64; ++j) u[j] = eps * std::sin(k * g.x(j));
    const Field ut = rhs(u, p, ws);
    const double speed = -p.big_gamma + (p.alpha + p.big_gamma) / (1.0 + k * k);
    for (int j = 0; j < 64; ++j) {
      const double ref = eps * k * speed * std::cos(k * g.x(j));
      EXPECT_NEAR(ut[j], ref, 1e-6 * eps * k) << k;
    }
  }
}

// u = c sin(x) with u^2 terms: Lambda^{-2} d_x(u^2 + u_x^2/2) has a closed form.
TEST(Dynamics, NonlinearRhsClosedForm) {
  const GridSpec g = make_grid(std::numbers::pi, 64);
  SpectralWorkspace ws(g);
  const ModelParams p{0.0, 0.0, 0.0, 0.0};
  const double c = 0.3;
  Field u(64);
  for (int j = 0; j < 64; ++j) u[j] = c * std::sin(g.x(j));
  const Field ut = rhs(u, p, ws);
  for (int j = 0; j < 64; ++j) {
    const double x = g.x(j);
    // u^2 + u_x^2/2 = c^2 (3/4 - cos(2x)/4); d_x -> c^2 sin(2x)/2; Lambda^{-2} -> /5
    const double ref = -c * std::sin(x) * c * std::cos(x) - c * c * std::sin(2 * x) / 10.0;
    EXPECT_NEAR(ut[j], ref, 1e-14);
  }
}

TEST(Dynamics, ZeroDataStaysZero) {
  SpectralWorkspace ws(make_grid(10.0, 64));
  IntegrationControls ctl;
  ctl.t_end = 0.35;
  ctl.output_interval = 0.1;
  auto res = integrate(Field(64, 0.0), {1.0, 2.0, 3.0, 0.5}, ws, ctl);
  EXPECT_EQ(res.status.stop, StopReason::ReachedEnd);
  EXPECT_DOUBLE_EQ(res.status.t_stop, 0.35);
  ASSERT_EQ(res.trajectory.times.size(), 5u);
  EXPECT_DOUBLE_EQ(res.trajectory.times[3], 0.3);
  for (double v : res.final_state.u) EXPECT_EQ(v, 0.0);
}

// One RK4 step on a single linear mode reproduces the degree-4 Taylor polynomial of exp(i w dt).
TEST(Dynamics, Rk4StepOnLinearMode) {
  const GridSpec g = make_grid(std::numbers::pi, 32);
  SpectralWorkspace ws(g);
  const ModelParams p{0.5, 0.0, 0.0, 0.2};
  const int k = 2;
  const double eps = 1e-9, dt = 0.3;
  const double w = k * (-p.big_gamma + (p.alpha + p.big_gamma) / (1.0 + k * k));
  Field u(32);
  for (int j = 0; j < 32; ++j) u[j] = eps * std::sin(k * g.x(j));
  const FieldState next = step_rk4(make_state(u, ws), dt, p, ws);
  // sin(kx) -> Re(R) sin(kx) + Im(R) cos(kx) with R = sum_{n<=4} (i w dt)^n / n!
  const double z = w * dt;
  const double re = 1 - z * z / 2 + z * z * z * z / 24, im = z - z * z * z / 6;
  for (int j = 0; j < 32; ++j) {
    const double ref = eps * (re * std::sin(k * g.x(j)) + im * std::cos(k * g.x(j)));
    EXPECT_NEAR(next.u[j], ref, 1e-6 * eps);
  }
}

TEST(Dynamics, CharacteristicsOfConstantField) {
  const GridSpec g = make_grid(5.0, 64);
  SpectralWorkspace ws(g);
  const ModelParams p{0.3, 0.1, 0.2, 0.4};
  const double c = 0.25;
  IntegrationControls ctl;
  ctl.t_end = 2.0;
  ctl.output_interval = 0.5;
  ctl.markers = {-1.0, 0.0, 4.9};
  auto res = integrate(Field(64, c), p, ws, ctl);
  ASSERT_FALSE(res.trajectory.characteristics.empty());
  const auto& ch = res.trajectory.characteristics.back();
  for (std::size_t i = 0; i < ch.size(); ++i) {
    EXPECT_NEAR(ch.position(i, 5.0), ch.x0[i] + (c + p.big_gamma) * 2.0, 1e-12);
    EXPECT_NEAR(ch.qx[i], 1.0, 1e-14);
    EXPECT_NEAR(ch.log_qx[i], 0.0, 1e-14);
    EXPECT_NEAR(ch.source[i], 0.0, 1e-14);
  }
  EXPECT_EQ(ch.winding[2], 1);
  EXPECT_GE(ch.wrap_events, 1u);
}

TEST(Dynamics, StopConditions) {
  const GridSpec g = make_grid(8.0, 256);
  SpectralWorkspace ws(g);
  const Field u0 = gaussian(g, 0.5, 0.5);
  IntegrationControls ctl;
  ctl.t_end = 1.0;
  ctl.max_steps = 3;
  EXPECT_EQ(integrate(u0, {}, ws, ctl).status.stop, StopReason::StepLimit);
  ctl.max_steps = 1000000;
  ctl.slope_stop = 0.5;  // |min u0'| is about 0.86
  auto r = integrate(u0, {}, ws, ctl);
  EXPECT_EQ(r.status.stop, StopReason::BlowupTrigger);
  EXPECT_EQ(r.status.steps, 0u);
  ctl.slope_stop = std::numeric_limits<double>::infinity();
  ctl.dt_min = 1.0;
  EXPECT_EQ(integrate(u0, {}, ws, ctl).status.stop, StopReason::DtUnderflow);
}

TEST(Dynamics, ChooseDtHonoursLimits) {
  const GridSpec g = make_grid(8.0, 256);
  SpectralWorkspace ws(g);
  const Field u0 = gaussian(g, 0.5, 0.5);
  const FieldState s = make_state(u0, ws);
  const Field ux = ws.dx(u0);
  double slope = 0.0;
  for (double v : ux) slope = std::max(slope, std::abs(v));
  IntegrationControls ctl;
  ctl.dt_max = 1.0;
  ctl.slope_dt = 0.0;
  const double cfl = ctl.cfl * g.dx() / (0.5 + 0.2 + ctl.cfl_floor);
  EXPECT_NEAR(choose_dt(s, ws, {0, 0, 0, 0.2}, ctl, ux), cfl, 1e-15);
  ctl.slope_dt = 0.001;
  EXPECT_NEAR(choose_dt(s, ws, {0, 0, 0, 0.2}, ctl, ux), 0.001 / slope, 1e-15);
}

TEST(Dynamics, RejectsBadInput) {
  SpectralWorkspace ws(make_grid(8.0, 64));
  IntegrationControls ctl;
  EXPECT_THROW(integrate(Field(32, 0.0), {}, ws, ctl), std::invalid_argument);
  Field bad(64, 0.0);
  bad[3] = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(integrate(bad, {}, ws, ctl), std::invalid_argument);
  ctl.output_interval = 0.0;
  EXPECT_THROW(integrate(Field(64, 0.0), {}, ws, ctl), std::invalid_argument);
}

TEST(Dynamics, StopReasonNames) {
  for (StopReason r : {StopReason::ReachedEnd, StopReason::BlowupTrigger, StopReason::DtUnderflow,
                       StopReason::NonFinite, StopReason::StepLimit})
    EXPECT_EQ(stop_reason_from_string(to_string(r)), r);
  EXPECT_FALSE(stop_reason_from_string("Bogus"));
}
