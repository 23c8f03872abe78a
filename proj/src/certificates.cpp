#include "gch/certificates.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gch/monitors.hpp"

namespace gch {

double k_of(const ModelParams& p) {
  return 4.0 * std::max({std::abs(p.alpha), std::abs(p.beta) / 3.0, std::abs(p.gamma) / 4.0,
                         std::abs(p.big_gamma)});
}

double sigma_default(double K) {
  if (!(K >= 0.0) || !std::isfinite(K)) throw std::invalid_argument("K must be finite and non-negative");
  return 1.0 / (1.0 + 36.0 * K);
}

double validate_sigma(double sigma, double K) {
  const double cap = sigma_default(K);
  if (!(sigma > 0.0) || !(sigma <= cap)) {
    throw std::invalid_argument("sigma must lie in (0, " + std::to_string(cap) + "], got " +
                                std::to_string(sigma));
  }
  return sigma;
}

int p_exponent(double h1) {
  if (!(h1 > 0.0) || !std::isfinite(h1)) throw std::domain_error("p exponent needs h1 > 0");
  return h1 >= 1.0 ? 4 : 1;
}

std::string to_string(PatternKind k) {
  return k == PatternKind::SingleSign ? "SingleSign" : "NegThenPos";
}

std::optional<PatternKind> pattern_kind_from_string(const std::string& s) {
  if (s == "SingleSign") return PatternKind::SingleSign;
  if (s == "NegThenPos") return PatternKind::NegThenPos;
  return std::nullopt;
}

namespace {

double h1_of(std::span<const double> u, std::span<const double> ux, double dx) {
  double acc = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) acc += u[j] * u[j] + ux[j] * ux[j];
  return std::sqrt(acc * dx);
}

}  // namespace

BreakingCertificate breaking_certificate(std::span<const double> u0, const ModelParams& params,
                                         const SpectralWorkspace& ws, std::optional<double> sigma_override) {
  params.validate();
  BreakingCertificate c;
  c.K = k_of(params);
  c.sigma = sigma_override ? validate_sigma(*sigma_override, c.K) : sigma_default(c.K);
  const Field ux = ws.dx(u0);
  const SlopeSample s = min_slope(ux, ws.grid());
  c.y0 = s.y;
  c.x_star = s.xi;
  c.h1 = h1_of(u0, ux, ws.grid().dx());
  c.lhs = std::sqrt(2.0 * c.sigma) * c.y0;
  if (!(c.h1 > 0.0)) {
    c.degenerate = true;
    return c;
  }
  c.p = p_exponent(c.h1);
  c.rhs = std::min(-c.h1, -std::pow(c.h1, 0.5 * c.p));
  c.holds = c.lhs < c.rhs;
  if (c.holds) {
    c.eps = 1.0 - c.rhs * c.rhs / (2.0 * c.sigma * c.y0 * c.y0);
    c.t_bound = 4.0 / (c.eps * std::abs(c.y0));
  }
  return c;
}

GlobalCertificate global_certificate(std::span<const double> u0, std::span<const double> m0,
                                     const SpectralWorkspace& ws, PatternKind kind, double tol_sign) {
  GlobalCertificate g;
  g.kind = kind;
  const double dx = ws.grid().dx();
  for (double m : m0) g.l1_m0 += std::abs(m);
  g.l1_m0 *= dx;
  g.h1_u0 = h1_of(u0, ws.dx(u0), dx);
  const SignPatternResult pat = sign_pattern(m0, ws.grid(), kind, tol_sign);
  g.degenerate = pat.degenerate;
  if (kind == PatternKind::NegThenPos) g.x0 = pat.split;
  g.holds = pat.ok && std::isfinite(g.l1_m0) && std::isfinite(g.h1_u0);
  g.slope_floor = kind == PatternKind::SingleSign ? -g.l1_m0 : -g.h1_u0;
  return g;
}

}  // namespace gch
