#include "gch/dynamics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>

namespace gch {

namespace {

const std::complex<double> kI(0.0, 1.0);

struct MarkerRates {
  std::vector<double> q, qx, log_qx, source;
};

struct MarkerStage {
  std::vector<double> q, qx;
};

MarkerRates marker_rates(const Spectrum& u_hat, const MarkerStage& s, const ModelParams& params,
                         const SpectralWorkspace& ws) {
  const std::size_t n = s.q.size();
  MarkerRates r;
  r.q.resize(n);
  r.qx.resize(n);
  r.log_qx.resize(n);
  r.source.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto pv = ws.interpolate(u_hat, s.q[i]);
    r.q[i] = pv.value + params.big_gamma;
    r.qx[i] = pv.slope * s.qx[i];
    r.log_qx[i] = pv.slope;
    r.source[i] = s.qx[i] * s.qx[i] * eval_h_prime(params, pv.value) * pv.slope;
  }
  return r;
}

bool all_finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace

Field rhs(std::span<const double> u, const ModelParams& params, const SpectralWorkspace& ws, bool dealias) {
  const std::size_t n = ws.size();
  if (u.size() != n) throw std::invalid_argument("field length does not match grid");
  const auto k = ws.wavenumbers();
  const auto symbol = ws.helmholtz_symbol();

  Spectrum u_hat = ws.forward(u);
  if (dealias) ws.dealias_in_place(u_hat);
  Spectrum ux_hat(u_hat.size());
  for (std::size_t j = 0; j < u_hat.size(); ++j) ux_hat[j] = kI * k[j] * u_hat[j];
  ux_hat.back() = 0.0;
  const Field uf = dealias ? ws.inverse(u_hat) : Field(u.begin(), u.end());
  const Field ux = ws.inverse(ux_hat);

  Field adv(n), flux(n);
  for (std::size_t j = 0; j < n; ++j) {
    adv[j] = (uf[j] + params.big_gamma) * ux[j];
    flux[j] = uf[j] * uf[j] + 0.5 * ux[j] * ux[j] - eval_h(params, uf[j]);
  }
  Spectrum out = ws.forward(adv);
  const std::complex<double> adv_nyquist = out.back();
  const Spectrum flux_hat = ws.forward(flux);
  for (std::size_t j = 0; j < out.size(); ++j) {
    out[j] = -out[j] - kI * k[j] * flux_hat[j] / symbol[j];
  }
  if (dealias) {
    ws.dealias_in_place(out);
  } else {
    // odd-derivative Nyquist convention for the nonlocal term
    out.back() = -adv_nyquist;
  }
  return ws.inverse(out);
}

Field rhs(const FieldState& state, const ModelParams& params, const SpectralWorkspace& ws, bool dealias) {
  return rhs(state.u, params, ws, dealias);
}

CharacteristicsState seed_characteristics(const FieldState& state, const SpectralWorkspace& ws,
                                          std::span<const double> markers) {
  CharacteristicsState c;
  const std::size_t n = markers.size();
  c.x0.assign(markers.begin(), markers.end());
  c.q.resize(n);
  c.winding.assign(n, 0);
  c.qx.assign(n, 1.0);
  c.log_qx.assign(n, 0.0);
  c.source.assign(n, 0.0);
  c.m0.resize(n);
  const Spectrum m_hat = ws.forward(state.m);
  for (std::size_t i = 0; i < n; ++i) {
    c.q[i] = ws.grid().wrap(markers[i]);
    c.m0[i] = ws.interpolate(m_hat, c.q[i]).value;
  }
  return c;
}

FieldState step_rk4(const FieldState& state, double dt, const ModelParams& params, const SpectralWorkspace& ws,
                    bool dealias, CharacteristicsState* chars) {
  if (!(dt > 0.0)) throw std::invalid_argument("step_rk4 needs dt > 0");
  const std::size_t n = ws.size();
  const Field& u0 = state.u;

  const std::size_t nm = chars != nullptr ? chars->size() : 0;
  MarkerStage base;
  if (chars != nullptr) {
    base.q = chars->q;
    base.qx = chars->qx;
  }

  auto field_at = [&](const Field& k, double a) {
    Field v(n);
    for (std::size_t j = 0; j < n; ++j) v[j] = u0[j] + a * k[j];
    return v;
  };
  auto markers_at = [&](const MarkerRates& r, double a) {
    MarkerStage s;
    s.q.resize(nm);
    s.qx.resize(nm);
    for (std::size_t i = 0; i < nm; ++i) {
      s.q[i] = base.q[i] + a * r.q[i];
      s.qx[i] = base.qx[i] + a * r.qx[i];
    }
    return s;
  };

  std::array<Field, 4> k;
  std::array<MarkerRates, 4> r;
  const std::array<double, 4> offsets = {0.0, 0.5 * dt, 0.5 * dt, dt};
  Field stage_u = u0;
  MarkerStage stage_m = base;
  for (int s = 0; s < 4; ++s) {
    if (s > 0) {
      stage_u = field_at(k[s - 1], offsets[s]);
      if (nm > 0) stage_m = markers_at(r[s - 1], offsets[s]);
    }
    k[s] = rhs(stage_u, params, ws, dealias);
    if (nm > 0) r[s] = marker_rates(ws.forward(stage_u), stage_m, params, ws);
  }

  Field u1(n);
  for (std::size_t j = 0; j < n; ++j) {
    u1[j] = u0[j] + dt / 6.0 * (k[0][j] + 2.0 * k[1][j] + 2.0 * k[2][j] + k[3][j]);
  }
  if (!all_finite(u1)) throw NonFiniteError("non-finite value in RK4 step at t = " + std::to_string(state.t));

  if (chars != nullptr) {
    auto combine = [&](std::vector<double>& y, auto member) {
      for (std::size_t i = 0; i < nm; ++i) {
        y[i] += dt / 6.0 *
                ((r[0].*member)[i] + 2.0 * (r[1].*member)[i] + 2.0 * (r[2].*member)[i] + (r[3].*member)[i]);
      }
    };
    std::vector<double> q = base.q;
    combine(q, &MarkerRates::q);
    combine(chars->qx, &MarkerRates::qx);
    combine(chars->log_qx, &MarkerRates::log_qx);
    combine(chars->source, &MarkerRates::source);
    const double L = ws.grid().half_length();
    for (std::size_t i = 0; i < nm; ++i) {
      const double w = ws.grid().wrap(q[i]);
      const long shift = std::lround((q[i] - w) / (2.0 * L));
      if (shift != 0) {
        chars->winding[i] += shift;
        ++chars->wrap_events;
      }
      chars->q[i] = w;
    }
  }

  FieldState next;
  next.t = state.t + dt;
  next.m = ws.helmholtz_apply(u1);
  next.u = std::move(u1);
  return next;
}

CharacteristicsState advance_characteristics(const CharacteristicsState& chars, const FieldState& state, double dt,
                                             const ModelParams& params, const SpectralWorkspace& ws, bool dealias) {
  CharacteristicsState out = chars;
  step_rk4(state, dt, params, ws, dealias, &out);
  return out;
}

std::string to_string(StopReason r) {
  switch (r) {
    case StopReason::ReachedEnd: return "ReachedEnd";
    case StopReason::BlowupTrigger: return "BlowupTrigger";
    case StopReason::DtUnderflow: return "DtUnderflow";
    case StopReason::NonFinite: return "NonFinite";
    case StopReason::StepLimit: return "StepLimit";
  }
  return "Unknown";
}

std::optional<StopReason> stop_reason_from_string(const std::string& s) {
  for (StopReason r : {StopReason::ReachedEnd, StopReason::BlowupTrigger, StopReason::DtUnderflow,
                       StopReason::NonFinite, StopReason::StepLimit}) {
    if (to_string(r) == s) return r;
  }
  return std::nullopt;
}

double choose_dt(const FieldState& state, const SpectralWorkspace& ws, const ModelParams& params,
                 const IntegrationControls& controls, std::span<const double> ux) {
  double linf = 0.0;
  for (double v : state.u) linf = std::max(linf, std::abs(v));
  double dt = std::min(controls.dt_max,
                       controls.cfl * ws.grid().dx() / (linf + std::abs(params.big_gamma) + controls.cfl_floor));
  if (controls.slope_dt > 0.0) {
    double slope = 0.0;
    for (double v : ux) slope = std::max(slope, std::abs(v));
    if (slope > 0.0) dt = std::min(dt, controls.slope_dt / slope);
  }
  return dt;
}

IntegrationResult integrate(Field u0, const ModelParams& params, const SpectralWorkspace& ws,
                            const IntegrationControls& controls, const OutputObserver& observer) {
  params.validate();
  if (u0.size() != ws.size()) throw std::invalid_argument("initial field length does not match grid");
  if (!(controls.t_end >= 0.0) || !(controls.output_interval > 0.0) || !(controls.dt_max > 0.0) ||
      !(controls.cfl > 0.0)) {
    throw std::invalid_argument("invalid integration controls");
  }
  if (!all_finite(u0)) throw std::invalid_argument("initial field is not finite");

  IntegrationResult res;
  FieldState state = make_state(std::move(u0), ws, 0.0);

  double u0_max = 0.0;
  for (double v : state.u) u0_max = std::max(u0_max, std::abs(v));
  const double boundary_threshold = controls.boundary_tol * u0_max;
  const GridSpec& grid = ws.grid();
  std::vector<std::size_t> outer;
  for (int j = 0; j < grid.n(); ++j) {
    if (std::abs(grid.x(j)) >= 0.99 * grid.half_length()) outer.push_back(static_cast<std::size_t>(j));
  }

  std::optional<CharacteristicsState> chars;
  if (!controls.markers.empty()) chars = seed_characteristics(state, ws, controls.markers);

  double last_dt = 0.0;
  double last_output_t = -1.0;
  auto emit = [&](const FieldState& s) {
    if (s.t == last_output_t) return;
    last_output_t = s.t;
    res.trajectory.times.push_back(s.t);
    if (controls.keep_states) res.trajectory.states.push_back(s);
    if (chars) res.trajectory.characteristics.push_back(*chars);
    if (observer) observer(s, chars ? &*chars : nullptr, last_dt);
  };
  emit(state);

  std::size_t out_index = 1;
  IntegrationStatus& st = res.status;
  st.stop = StopReason::ReachedEnd;
  for (;;) {
    if (state.t >= controls.t_end) {
      st.stop = StopReason::ReachedEnd;
      break;
    }
    if (st.steps >= controls.max_steps) {
      st.stop = StopReason::StepLimit;
      break;
    }
    const Field ux = ws.dx(state.u);
    const double min_ux = *std::min_element(ux.begin(), ux.end());
    if (min_ux < -controls.slope_stop) {
      st.stop = StopReason::BlowupTrigger;
      break;
    }
    double dt = choose_dt(state, ws, params, controls, ux);
    if (dt < controls.dt_min) {
      st.stop = StopReason::DtUnderflow;
      break;
    }
    const double next_out = std::min(controls.t_end, static_cast<double>(out_index) * controls.output_interval);
    bool hit = false;
    if (state.t + dt >= next_out - 1e-9 * dt) {
      dt = next_out - state.t;
      hit = true;
    }
    FieldState next;
    try {
      next = step_rk4(state, dt, params, ws, controls.dealias, chars ? &*chars : nullptr);
    } catch (const NonFiniteError&) {
      st.stop = StopReason::NonFinite;
      break;
    }
    if (hit) next.t = next_out;
    state = std::move(next);
    last_dt = dt;
    ++st.steps;
    res.trajectory.dt_history.push_back(dt);

    double edge = 0.0;
    for (std::size_t j : outer) edge = std::max(edge, std::abs(state.u[j]));
    st.max_boundary = std::max(st.max_boundary, edge);
    if (boundary_threshold > 0.0 && edge > boundary_threshold && !st.boundary_contaminated) {
      st.boundary_contaminated = true;
      st.boundary_time = state.t;
    }
    if (hit) {
      emit(state);
      if (next_out < controls.t_end) {
        while (static_cast<double>(out_index) * controls.output_interval <= state.t) ++out_index;
      }
    }
  }
  emit(state);
  st.t_stop = state.t;
  res.final_state = std::move(state);
  return res;
}

}  // namespace gch
