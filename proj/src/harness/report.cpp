#include "gch/harness/report.hpp"

#include <fftw3.h>
#include <gmp.h>

#include <algorithm>
#include <cmath>

namespace gch::harness {

namespace {

Json num(double x) { return number_to_json(x); }
double num(const Json& j, const char* key) { return number_from_json(j.at(key)); }

Json opt_num(const std::optional<double>& x) { return x ? num(*x) : Json(nullptr); }
std::optional<double> opt_num(const Json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return number_from_json(j.at(key));
}

Json params_json(const ModelParams& p) {
  return {{"alpha", num(p.alpha)}, {"beta", num(p.beta)}, {"gamma", num(p.gamma)}, {"big_gamma", num(p.big_gamma)}};
}

ModelParams params_from(const Json& j) {
  return {num(j, "alpha"), num(j, "beta"), num(j, "gamma"), num(j, "big_gamma")};
}

NormBundle norms_from(const Json& j) {
  return {num(j, "h1"), num(j, "l1_m"), num(j, "linf_u"), num(j, "mass_u"), num(j, "mass_m")};
}

BreakingCertificate breaking_from(const Json& j) {
  BreakingCertificate c;
  c.K = num(j, "K");
  c.sigma = num(j, "sigma");
  c.p = j.at("p").get<int>();
  c.h1 = num(j, "h1");
  c.y0 = num(j, "y0");
  c.x_star = num(j, "x_star");
  c.lhs = num(j, "lhs");
  c.rhs = num(j, "rhs");
  c.holds = j.at("holds").get<bool>();
  c.degenerate = j.at("degenerate").get<bool>();
  c.eps = num(j, "eps");
  c.t_bound = num(j, "t_bound");
  return c;
}

GlobalCertificate global_from(const Json& j) {
  GlobalCertificate c;
  auto kind = pattern_kind_from_string(j.at("kind").get<std::string>());
  if (!kind) throw std::invalid_argument("unknown pattern kind");
  c.kind = *kind;
  c.x0 = opt_num(j, "x0");
  c.l1_m0 = num(j, "l1_m0");
  c.h1_u0 = num(j, "h1_u0");
  c.holds = j.at("holds").get<bool>();
  c.degenerate = j.at("degenerate").get<bool>();
  c.slope_floor = num(j, "slope_floor");
  return c;
}

Json violation_json(const BoundViolation& v) {
  return {{"kind", v.kind}, {"t", num(v.t)}, {"lhs", num(v.lhs)}, {"rhs", num(v.rhs)}};
}

Json status_json(const IntegrationStatus& s) {
  return {{"stop", to_string(s.stop)},
          {"t_stop", num(s.t_stop)},
          {"steps", s.steps},
          {"boundary_contaminated", s.boundary_contaminated},
          {"boundary_time", num(s.boundary_time)},
          {"max_boundary", num(s.max_boundary)}};
}

IntegrationStatus status_from(const Json& j) {
  IntegrationStatus s;
  auto stop = stop_reason_from_string(j.at("stop").get<std::string>());
  if (!stop) throw std::invalid_argument("unknown stop reason");
  s.stop = *stop;
  s.t_stop = num(j, "t_stop");
  s.steps = j.at("steps").get<std::size_t>();
  s.boundary_contaminated = j.at("boundary_contaminated").get<bool>();
  s.boundary_time = num(j, "boundary_time");
  s.max_boundary = num(j, "max_boundary");
  return s;
}

Json classification_json(const ClassificationDetail& c) {
  return {{"classification", to_string(c.classification)},
          {"y_max", num(c.y_max)},
          {"early_stop", c.early_stop},
          {"bounded", c.bounded},
          {"threshold_crossed", c.threshold_crossed},
          {"accelerating", c.accelerating}};
}

ClassificationDetail classification_from(const Json& j) {
  ClassificationDetail c;
  auto k = classification_from_string(j.at("classification").get<std::string>());
  if (!k) throw std::invalid_argument("unknown classification");
  c.classification = *k;
  c.y_max = num(j, "y_max");
  c.early_stop = j.at("early_stop").get<bool>();
  c.bounded = j.at("bounded").get<bool>();
  c.threshold_crossed = j.at("threshold_crossed").get<bool>();
  c.accelerating = j.at("accelerating").get<bool>();
  return c;
}

MonitorSummary summary_from(const Json& j) {
  MonitorSummary m;
  m.cons_drift = num(j, "cons_drift");
  m.mass_drift = num(j, "mass_drift");
  m.max_linf_u = num(j, "max_linf_u");
  m.min_qx = num(j, "min_qx");
  m.qx_route_mismatch = num(j, "qx_route_mismatch");
  m.identity_residual = num(j, "identity_residual");
  m.max_g_ratio = num(j, "max_g_ratio");
  m.slope_ode_worst = num(j, "slope_ode_worst");
  m.sign_lapse_time = opt_num(j, "sign_lapse_time");
  m.y0 = num(j, "y0");
  m.y_min = num(j, "y_min");
  m.t_y_min = num(j, "t_y_min");
  m.violation_count = j.at("violation_count").get<std::size_t>();
  m.violations_by_kind = j.at("violations_by_kind").get<std::map<std::string, std::size_t>>();
  for (const auto& v : j.at("violations"))
    m.violations.push_back({v.at("kind").get<std::string>(), num(v, "t"), num(v, "lhs"), num(v, "rhs")});
  return m;
}

}  // namespace

MonitorSummary summarize(const MonitorReport& r) {
  MonitorSummary m;
  m.cons_drift = r.cons_drift;
  m.mass_drift = r.mass_drift;
  m.max_linf_u = r.max_linf_u;
  m.min_qx = r.min_qx;
  m.qx_route_mismatch = r.qx_route_mismatch;
  m.identity_residual = r.identity_residual;
  m.max_g_ratio = r.max_g_ratio;
  m.slope_ode_worst = r.slope_ode_worst;
  m.sign_lapse_time = r.sign_lapse_time;
  if (!r.slope_series.empty()) {
    m.y0 = r.slope_series.front().y;
    auto it = std::min_element(r.slope_series.begin(), r.slope_series.end(),
                               [](const SlopeSample& a, const SlopeSample& b) { return a.y < b.y; });
    m.y_min = it->y;
    m.t_y_min = it->t;
  }
  m.violation_count = r.bound_violations.size();
  for (const auto& v : r.bound_violations) {
    ++m.violations_by_kind[v.kind];
    if (m.violations.size() < kMaxReportedViolations) m.violations.push_back(v);
  }
  return m;
}

std::map<std::string, std::string> build_versions() {
  std::map<std::string, std::string> v;
  v["gch"] = "0.1.0";
  v["fftw"] = fftw_version;
  v["gmp"] = gmp_version;
  v["nlohmann_json"] = std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." + std::to_string(NLOHMANN_JSON_VERSION_MINOR) +
                       "." + std::to_string(NLOHMANN_JSON_VERSION_PATCH);
#ifdef __VERSION__
  v["compiler"] = __VERSION__;
#endif
  return v;
}

Json to_json(const NormBundle& n) {
  return {{"h1", num(n.h1)}, {"l1_m", num(n.l1_m)}, {"linf_u", num(n.linf_u)}, {"mass_u", num(n.mass_u)},
          {"mass_m", num(n.mass_m)}};
}

Json to_json(const BreakingCertificate& c) {
  return {{"K", num(c.K)},       {"sigma", num(c.sigma)}, {"p", c.p},
          {"h1", num(c.h1)},     {"y0", num(c.y0)},       {"x_star", num(c.x_star)},
          {"lhs", num(c.lhs)},   {"rhs", num(c.rhs)},     {"holds", c.holds},
          {"degenerate", c.degenerate}, {"eps", num(c.eps)}, {"t_bound", num(c.t_bound)}};
}

Json to_json(const GlobalCertificate& c) {
  return {{"kind", to_string(c.kind)},   {"x0", opt_num(c.x0)},        {"l1_m0", num(c.l1_m0)},
          {"h1_u0", num(c.h1_u0)},      {"holds", c.holds},           {"degenerate", c.degenerate},
          {"slope_floor", num(c.slope_floor)}};
}

Json to_json(const CertificateBundle& b) {
  return {{"params", params_json(b.params)},
          {"initial", to_json(b.initial)},
          {"breaking", to_json(b.breaking)},
          {"single_sign", to_json(b.single_sign)},
          {"neg_then_pos", to_json(b.neg_then_pos)}};
}

Json to_json(const MonitorSummary& m) {
  Json v = Json::array();
  for (const auto& x : m.violations) v.push_back(violation_json(x));
  return {{"cons_drift", num(m.cons_drift)},
          {"mass_drift", num(m.mass_drift)},
          {"max_linf_u", num(m.max_linf_u)},
          {"min_qx", num(m.min_qx)},
          {"qx_route_mismatch", num(m.qx_route_mismatch)},
          {"identity_residual", num(m.identity_residual)},
          {"max_g_ratio", num(m.max_g_ratio)},
          {"slope_ode_worst", num(m.slope_ode_worst)},
          {"sign_lapse_time", opt_num(m.sign_lapse_time)},
          {"y0", num(m.y0)},
          {"y_min", num(m.y_min)},
          {"t_y_min", num(m.t_y_min)},
          {"violation_count", m.violation_count},
          {"violations_by_kind", m.violations_by_kind},
          {"violations", v}};
}

Json to_json(const sym::IdentityVerdict& v) {
  return {{"name", v.name}, {"residual_terms", v.residual_terms}, {"pass", v.pass}, {"detail", v.detail}};
}

Json to_json(const RunReport& r) {
  Json j;
  j["config"] = to_json(r.config);
  j["certificates"] = to_json(r.certificates);
  j["lower_bound"] = r.lower_bound ? Json(to_string(*r.lower_bound)) : Json(nullptr);
  j["status"] = status_json(r.status);
  j["classification"] = classification_json(r.classification);
  j["monitors"] = to_json(r.monitors);
  j["exit_code"] = r.exit_code;
  if (r.wall_time) j["wall_time"] = num(*r.wall_time);
  j["versions"] = r.versions;
  Json verdicts = Json::array();
  for (const auto& v : r.verdicts) verdicts.push_back(to_json(v));
  j["verdicts"] = verdicts;
  j["warnings"] = r.warnings;
  return j;
}

CertificateBundle certificate_bundle_from_json(const Json& j) {
  CertificateBundle b;
  b.params = params_from(j.at("params"));
  b.initial = norms_from(j.at("initial"));
  b.breaking = breaking_from(j.at("breaking"));
  b.single_sign = global_from(j.at("single_sign"));
  b.neg_then_pos = global_from(j.at("neg_then_pos"));
  return b;
}

RunReport report_from_json(const Json& j) {
  RunReport r;
  r.config = parse_config(j.at("config"));
  r.certificates = certificate_bundle_from_json(j.at("certificates"));
  if (!j.at("lower_bound").is_null()) {
    auto k = pattern_kind_from_string(j.at("lower_bound").get<std::string>());
    if (!k) throw std::invalid_argument("unknown lower bound kind");
    r.lower_bound = *k;
  }
  r.status = status_from(j.at("status"));
  r.classification = classification_from(j.at("classification"));
  r.monitors = summary_from(j.at("monitors"));
  r.exit_code = j.at("exit_code").get<int>();
  r.wall_time = opt_num(j, "wall_time");
  r.versions = j.at("versions").get<std::map<std::string, std::string>>();
  for (const auto& v : j.at("verdicts"))
    r.verdicts.push_back({v.at("name").get<std::string>(), v.at("residual_terms").get<std::size_t>(),
                          v.at("pass").get<bool>(), v.at("detail").get<std::string>()});
  r.warnings = j.at("warnings").get<std::vector<std::string>>();
  return r;
}

std::string emit(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace gch::harness
