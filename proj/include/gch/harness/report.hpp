#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gch/harness/config.hpp"
#include "gch/symbolic/verify.hpp"

namespace gch::harness {

/// At most this many bound violations are copied into a report; the total
/// and the per-kind counts are always kept.
inline constexpr std::size_t kMaxReportedViolations = 32;

struct MonitorSummary {
  double cons_drift = 0.0;
  double mass_drift = 0.0;
  double max_linf_u = 0.0;
  double min_qx = 0.0;
  double qx_route_mismatch = 0.0;
  double identity_residual = 0.0;
  double max_g_ratio = 0.0;
  double slope_ode_worst = 0.0;
  std::optional<double> sign_lapse_time;
  double y0 = 0.0;
  double y_min = 0.0;
  double t_y_min = 0.0;
  std::size_t violation_count = 0;
  std::map<std::string, std::size_t> violations_by_kind;
  std::vector<BoundViolation> violations;

  bool operator==(const MonitorSummary&) const = default;
};

MonitorSummary summarize(const MonitorReport& r);

struct CertificateBundle {
  ModelParams params;
  NormBundle initial;
  BreakingCertificate breaking;
  GlobalCertificate single_sign;
  GlobalCertificate neg_then_pos;

  bool operator==(const CertificateBundle&) const = default;
};

struct RunReport {
  RunConfig config;
  CertificateBundle certificates;
  /// Slope floor monitored during the run, if any.
  std::optional<PatternKind> lower_bound;
  IntegrationStatus status;
  ClassificationDetail classification;
  MonitorSummary monitors;
  int exit_code = 0;
  std::optional<double> wall_time;
  std::map<std::string, std::string> versions;
  std::vector<sym::IdentityVerdict> verdicts;
  std::vector<std::string> warnings;

  bool operator==(const RunReport&) const = default;
};

/// Library and compiler versions recorded in every report.
std::map<std::string, std::string> build_versions();

Json to_json(const NormBundle& n);
Json to_json(const BreakingCertificate& c);
Json to_json(const GlobalCertificate& c);
Json to_json(const CertificateBundle& b);
Json to_json(const MonitorSummary& m);
Json to_json(const sym::IdentityVerdict& v);
Json to_json(const RunReport& r);

CertificateBundle certificate_bundle_from_json(const Json& j);
RunReport report_from_json(const Json& j);

/// Stable text form: two-space indentation and a trailing newline.
std::string emit(const Json& j);

}  // namespace gch::harness
