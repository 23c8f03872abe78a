#include "gch/monitors.hpp"

#include <algorithm>
#include <cmath>

namespace gch {

SlopeSample min_slope(std::span<const double> ux, const GridSpec& grid, double t) {
  const std::size_t n = ux.size();
  SlopeSample s;
  s.t = t;
  if (n == 0) return s;
  const std::size_t i = static_cast<std::size_t>(std::min_element(ux.begin(), ux.end()) - ux.begin());
  const double fm = ux[(i + n - 1) % n];
  const double f0 = ux[i];
  const double fp = ux[(i + 1) % n];
  const double curv = fm - 2.0 * f0 + fp;
  s.y = f0;
  s.xi = grid.x(static_cast<int>(i));
  if (curv > 0.0) {
    const double d = fm - fp;
    s.y = f0 - d * d / (8.0 * curv);
    s.xi = grid.wrap(s.xi + 0.5 * d / curv * grid.dx());
  }
  return s;
}

SlopeSample min_slope(const FieldState& state, const SpectralWorkspace& ws) {
  return min_slope(ws.dx(state.u), ws.grid(), state.t);
}

std::vector<BoundViolation> check_lower_bounds(std::span<const SlopeSample> slopes, const NormBundle& init,
                                               PatternKind kind, double slack) {
  const double floor = kind == PatternKind::SingleSign ? -init.l1_m : -init.h1;
  std::vector<BoundViolation> out;
  for (const SlopeSample& s : slopes) {
    if (s.y < floor - slack) out.push_back({"lower_bound", s.t, s.y, floor});
  }
  return out;
}

GBound g_bound_check(const FieldState& state, const ModelParams& params, const SpectralWorkspace& ws,
                     const NormBundle& init, double slack) {
  const Field h = eval_h(params, state.u);
  const Field smooth = ws.helmholtz_invert(h);
  GBound g;
  for (std::size_t j = 0; j < h.size(); ++j) g.lhs = std::max(g.lhs, std::abs(smooth[j] - h[j]));
  const double K = k_of(params);
  g.rhs = init.h1 > 0.0 ? 9.0 * K * std::pow(init.h1, p_exponent(init.h1)) : 0.0;
  g.ok = K == 0.0 ? g.lhs == 0.0 : g.lhs <= g.rhs + slack;
  return g;
}

SignPatternResult sign_pattern(std::span<const double> m, const GridSpec& grid, PatternKind kind,
                               double tol_sign) {
  SignPatternResult r;
  double peak = 0.0;
  for (double v : m) peak = std::max(peak, std::abs(v));
  const double thr = tol_sign * peak;
  std::optional<std::size_t> last_neg, first_pos;
  for (std::size_t j = 0; j < m.size(); ++j) {
    if (m[j] < -thr) {
      ++r.negative;
      last_neg = j;
    } else if (m[j] > thr) {
      ++r.positive;
      if (!first_pos) first_pos = j;
    }
  }
  r.degenerate = r.negative == 0 && r.positive == 0;
  if (kind == PatternKind::SingleSign) {
    r.ok = r.negative == 0 || r.positive == 0;
    return r;
  }
  // Every strictly negative node must precede every strictly positive one.
  bool neg_after_pos = false;
  if (first_pos) {
    for (std::size_t j = *first_pos; j < m.size() && !neg_after_pos; ++j) neg_after_pos = m[j] < -thr;
  }
  r.ok = !neg_after_pos;
  if (r.ok && last_neg && first_pos) {
    r.split = 0.5 * (grid.x(static_cast<int>(*last_neg)) + grid.x(static_cast<int>(*first_pos)));
  }
  return r;
}

double slope_ode_bound(double h1, double K, int p) {
  if (!(h1 > 0.0)) return 0.0;
  return 0.25 * h1 * h1 + 9.0 * K * std::pow(h1, p);
}

SlopeOdeResult slope_ode_check(std::span<const SlopeSample> s, const NormBundle& init, double K, int p,
                               double slack_floor, double slack_rel) {
  SlopeOdeResult r;
  const double bound = slope_ode_bound(init.h1, K, p);
  for (std::size_t i = 1; i + 1 < s.size(); ++i) {
    const double h1 = s[i].t - s[i - 1].t;
    const double h2 = s[i + 1].t - s[i].t;
    if (!(h1 > 0.0) || !(h2 > 0.0)) continue;
    const double back = (s[i].y - s[i - 1].y) / h1;
    const double fwd = (s[i + 1].y - s[i].y) / h2;
    const double deriv = (h2 * back + h1 * fwd) / (h1 + h2);
    const double trunc = 0.5 * std::abs(fwd - back);
    const double lhs = deriv + 0.5 * s[i].y * s[i].y;
    const double scale = std::max({std::abs(deriv), 0.5 * s[i].y * s[i].y, bound});
    const double slack = std::max(slack_floor, slack_rel * scale) + trunc;
    ++r.checked;
    const double excess = lhs - bound - slack;
    r.worst_excess = std::max(r.worst_excess, excess);
    if (excess > 0.0) r.violations.push_back({"slope_ode", s[i].t, lhs, bound});
  }
  r.ok = r.violations.empty();
  return r;
}

std::vector<BoundViolation> gronwall_check(std::span<const SlopeSample> slopes, double eps, double slack) {
  std::vector<BoundViolation> out;
  if (slopes.empty() || !(slopes.front().y < 0.0)) return out;
  const double inv0 = 1.0 / slopes.front().y;
  for (const SlopeSample& s : slopes) {
    if (!(s.y < 0.0)) continue;
    const double lhs = 1.0 / s.y;
    const double rhs = inv0 + 0.25 * eps * s.t;
    if (lhs < rhs - slack) out.push_back({"gronwall", s.t, lhs, rhs});
  }
  return out;
}

std::string to_string(Classification c) {
  switch (c) {
    case Classification::RanToHorizon: return "RanToHorizon";
    case Classification::WaveBreaking: return "WaveBreaking";
    case Classification::NumericalFailure: return "NumericalFailure";
  }
  return "Unknown";
}

std::optional<Classification> classification_from_string(const std::string& s) {
  for (Classification c :
       {Classification::RanToHorizon, Classification::WaveBreaking, Classification::NumericalFailure}) {
    if (to_string(c) == s) return c;
  }
  return std::nullopt;
}

double BreakingPolicy::y_max(double y0) const { return std::max(y_factor * std::abs(y0), y_abs); }

ClassificationDetail classify(const ClassificationInput& in, const BreakingPolicy& policy) {
  ClassificationDetail d;
  const auto& s = in.slopes;
  d.y_max = s.empty() ? policy.y_abs : policy.y_max(s.front().y);
  d.early_stop = in.stop == StopReason::BlowupTrigger || in.stop == StopReason::DtUnderflow ||
                 in.stop == StopReason::NonFinite;
  d.bounded = in.max_linf_u <= policy.c_u * in.linf_u0 + policy.c_abs;
  double y_min = 0.0;
  for (const SlopeSample& x : s) y_min = std::min(y_min, x.y);
  d.threshold_crossed = d.y_max > 0.0 && y_min < -d.y_max;

  if (d.threshold_crossed) {
    const double t_last = s.back().t;
    const double t_from = t_last * (1.0 - policy.window_fraction);
    std::size_t start = 0;
    while (start + 1 < s.size() && s[start + 1].t <= t_from) ++start;
    bool ok = s.size() - start >= 3;
    double first_rate = 0.0, last_rate = 0.0;
    for (std::size_t i = start; ok && i + 1 < s.size(); ++i) {
      const double dt = s[i + 1].t - s[i].t;
      const double rate = dt > 0.0 ? -(s[i + 1].y - s[i].y) / dt : 0.0;
      if (!(rate > 0.0)) ok = false;
      if (i == start) first_rate = rate;
      last_rate = rate;
    }
    d.accelerating = ok && last_rate >= first_rate;
  }

  if (in.boundary_contaminated) {
    d.classification = Classification::NumericalFailure;
  } else if (d.early_stop && d.bounded && d.threshold_crossed && d.accelerating) {
    d.classification = Classification::WaveBreaking;
  } else if (in.stop == StopReason::ReachedEnd && in.monitors_green) {
    d.classification = Classification::RanToHorizon;
  } else {
    d.classification = Classification::NumericalFailure;
  }
  return d;
}

RunMonitor::RunMonitor(const SpectralWorkspace& ws, const ModelParams& params, const FieldState& initial,
                       const MonitorOptions& options, std::optional<PatternKind> lower_bound_kind,
                       std::optional<BreakingCertificate> breaking)
    : ws_(ws),
      params_(params),
      opt_(options),
      lower_kind_(lower_bound_kind),
      breaking_(std::move(breaking)),
      init_(norms(initial, ws)) {
  for (double v : initial.u) l1_u0_ += std::abs(v);
  l1_u0_ *= ws.grid().dx();
  K_ = k_of(params);
  p_ = init_.h1 > 0.0 ? p_exponent(init_.h1) : 1;
}

void RunMonitor::observe(const FieldState& state, const CharacteristicsState* chars, double dt) {
  const NormBundle nb = norms(state, ws_);
  const Field ux = ws_.dx(state.u);
  const SlopeSample slope = min_slope(ux, ws_.grid(), state.t);
  const GBound g = g_bound_check(state, params_, ws_, init_, opt_.slack);
  const double t = state.t;
  auto& v = acc_.bound_violations;

  const double drift = init_.h1 > 0.0 ? std::abs(nb.h1 - init_.h1) / init_.h1 : nb.h1;
  acc_.cons_drift = std::max(acc_.cons_drift, drift);
  if (drift > opt_.tol_cons) v.push_back({"conservation", t, drift, opt_.tol_cons});

  const double mu_scale = std::max(std::abs(init_.mass_u), l1_u0_);
  const double mm_scale = std::max(std::abs(init_.mass_m), init_.l1_m);
  const double du = mu_scale > 0.0 ? std::abs(nb.mass_u - init_.mass_u) / mu_scale : std::abs(nb.mass_u);
  const double dm = mm_scale > 0.0 ? std::abs(nb.mass_m - init_.mass_m) / mm_scale : std::abs(nb.mass_m);
  acc_.mass_drift = std::max({acc_.mass_drift, du, dm});
  if (std::max(du, dm) > opt_.tol_mass) v.push_back({"mass", t, std::max(du, dm), opt_.tol_mass});

  acc_.max_linf_u = std::max(acc_.max_linf_u, nb.linf_u);
  if (nb.linf_u > init_.h1 + opt_.linf_tol) v.push_back({"linf_bound", t, nb.linf_u, init_.h1 + opt_.linf_tol});

  if (g.rhs > 0.0) acc_.max_g_ratio = std::max(acc_.max_g_ratio, g.lhs / g.rhs);
  if (!g.ok) v.push_back({"g_bound", t, g.lhs, g.rhs});

  if (lower_kind_) {
    const double floor = *lower_kind_ == PatternKind::SingleSign ? -init_.l1_m : -init_.h1;
    if (slope.y < floor - opt_.slack) v.push_back({"lower_bound", t, slope.y, floor});
    if (!acc_.sign_lapse_time && !sign_pattern(state.m, ws_.grid(), *lower_kind_, opt_.tol_sign).ok) {
      acc_.sign_lapse_time = t;
    }
  }

  // Pointwise slope inequality with the exact time derivative u_tx at xi.
  {
    const Spectrum ut_hat = ws_.forward(rhs(state.u, params_, ws_, false));
    const double utx = ws_.interpolate(ut_hat, slope.xi).slope;
    const double bound = slope_ode_bound(init_.h1, K_, p_);
    const double lhs = utx + 0.5 * slope.y * slope.y;
    const double scale = std::max({std::abs(utx), 0.5 * slope.y * slope.y, bound});
    const double excess = lhs - bound - std::max(opt_.slack, opt_.slack_rel * scale);
    acc_.slope_ode_worst = std::max(acc_.slope_ode_worst, excess);
    if (excess > 0.0) v.push_back({"slope_ode_pointwise", t, lhs, bound});
  }

  if (breaking_ && breaking_->holds && slope.y < 0.0 && !acc_.slope_series.empty()) {
    const double y0 = acc_.slope_series.front().y;
    if (y0 < 0.0) {
      const double rhs_g = 1.0 / y0 + 0.25 * breaking_->eps * t;
      if (1.0 / slope.y < rhs_g - opt_.gronwall_slack) v.push_back({"gronwall", t, 1.0 / slope.y, rhs_g});
    }
  }

  if (chars != nullptr && chars->size() > 0) {
    const Spectrum m_hat = ws_.forward(state.m);
    double scale = 0.0;
    std::vector<double> lhs(chars->size());
    for (std::size_t i = 0; i < chars->size(); ++i) {
      const double qx = chars->qx[i];
      acc_.min_qx = std::min(acc_.min_qx, qx);
      if (!(qx > 0.0)) v.push_back({"qx_positive", t, qx, 0.0});
      const double mismatch = std::abs(qx - std::exp(chars->log_qx[i])) / std::max(qx, 1e-300);
      acc_.qx_route_mismatch = std::max(acc_.qx_route_mismatch, mismatch);
      lhs[i] = ws_.interpolate(m_hat, chars->q[i]).value * qx * qx;
      scale = std::max({scale, std::abs(chars->m0[i]), std::abs(lhs[i])});
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < chars->size(); ++i) {
      worst = std::max(worst, std::abs(lhs[i] - chars->m0[i] - chars->source[i]));
    }
    const double rel = scale > 0.0 ? worst / scale : worst;
    acc_.identity_residual = std::max(acc_.identity_residual, rel);
    if (rel > opt_.identity_tol) v.push_back({"characteristics_identity", t, rel, opt_.identity_tol});
  }

  acc_.slope_series.push_back(slope);
  rows_.push_back({t, nb.h1, nb.linf_u, nb.mass_u, nb.mass_m, slope.y, slope.xi, g.lhs, g.rhs, dt});
}

MonitorReport RunMonitor::finish(const IntegrationStatus& status) const {
  MonitorReport r = acc_;
  const SlopeOdeResult ode = slope_ode_check(r.slope_series, init_, K_, p_, opt_.slack, opt_.slack_rel);
  r.bound_violations.insert(r.bound_violations.end(), ode.violations.begin(), ode.violations.end());
  std::stable_sort(r.bound_violations.begin(), r.bound_violations.end(),
                   [](const BoundViolation& a, const BoundViolation& b) { return a.t < b.t; });
  ClassificationInput in;
  in.stop = status.stop;
  in.boundary_contaminated = status.boundary_contaminated;
  in.monitors_green = r.bound_violations.empty();
  in.linf_u0 = init_.linf_u;
  in.max_linf_u = r.max_linf_u;
  in.slopes = r.slope_series;
  r.classification = classify(in, opt_.policy);
  return r;
}

}  // namespace gch
