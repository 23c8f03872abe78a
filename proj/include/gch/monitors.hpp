#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gch/certificates.hpp"
#include "gch/dynamics.hpp"
#include "gch/model.hpp"
#include "gch/spectral.hpp"

namespace gch {

struct SlopeSample {
  double t = 0.0;
  double y = 0.0;   // inf_x u_x
  double xi = 0.0;  // where it is attained

  bool operator==(const SlopeSample&) const = default;
};

/// Grid argmin of spectral u_x, refined by a parabola through the node and
/// its two neighbours. The refined value never exceeds the grid value.
SlopeSample min_slope(std::span<const double> ux, const GridSpec& grid, double t = 0.0);
SlopeSample min_slope(const FieldState& state, const SpectralWorkspace& ws);

struct BoundViolation {
  std::string kind;
  double t = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;

  bool operator==(const BoundViolation&) const = default;
};

/// Absolute slack used by every inequality check unless overridden.
inline constexpr double kMinSlack = 1e-6;

/// y(t) >= slope_floor - slack where the floor is -l1_m(0) (SingleSign) or
/// -h1(0) (NegThenPos).
std::vector<BoundViolation> check_lower_bounds(std::span<const SlopeSample> slopes, const NormBundle& init,
                                               PatternKind kind, double slack = kMinSlack);

struct GBound {
  double lhs = 0.0;  // max |Lambda^{-2} h(u) - h(u)|
  double rhs = 0.0;  // 9 K h1(0)^p
  bool ok = true;
};

/// With K = 0 the bound is 0 and lhs must vanish exactly.
GBound g_bound_check(const FieldState& state, const ModelParams& params, const SpectralWorkspace& ws,
                     const NormBundle& init, double slack = kMinSlack);

struct SignPatternResult {
  bool ok = false;
  bool degenerate = false;  // every entry within the threshold
  std::optional<double> split;
  std::size_t negative = 0;
  std::size_t positive = 0;
};

/// Threshold is tol_sign * max|m|.
SignPatternResult sign_pattern(std::span<const double> m, const GridSpec& grid, PatternKind kind,
                               double tol_sign = kDefaultSignTolerance);

/// Right-hand side of the slope inequality y' + y^2/2 <= h1^2/4 + 9 K h1^p.
double slope_ode_bound(double h1, double K, int p);

struct SlopeOdeResult {
  bool ok = true;
  std::size_t checked = 0;
  double worst_excess = -std::numeric_limits<double>::infinity();  // max of lhs - bound - slack
  std::vector<BoundViolation> violations;
};

/// Central finite differences of the sampled y(t). Slack per sample is
/// max(slack_floor, slack_rel * scale) plus an estimate of the difference
/// quotient's truncation error from neighbouring samples.
SlopeOdeResult slope_ode_check(std::span<const SlopeSample> slopes, const NormBundle& init, double K, int p,
                               double slack_floor = kMinSlack, double slack_rel = 1e-3);

/// 1/y(t) >= 1/y(0) + eps t / 4 - slack for samples with y < 0.
std::vector<BoundViolation> gronwall_check(std::span<const SlopeSample> slopes, double eps, double slack);

enum class Classification { RanToHorizon, WaveBreaking, NumericalFailure };

std::string to_string(Classification c);
std::optional<Classification> classification_from_string(const std::string& s);

struct BreakingPolicy {
  /// Breaking threshold Y_max = max(y_factor |y(0)|, y_abs). The factor is
  /// bounded by what the grid can resolve before the front collapses.
  double y_factor = 3.0;
  double y_abs = 0.0;
  /// u counts as bounded while max ||u||_inf <= c_u ||u0||_inf + c_abs.
  double c_u = 2.0;
  double c_abs = 1e-3;
  /// Over the final window_fraction of the run, y must decrease monotonically
  /// with a non-decreasing rate.
  double window_fraction = 0.1;

  double y_max(double y0) const;
  bool operator==(const BreakingPolicy&) const = default;
};

struct ClassificationInput {
  StopReason stop = StopReason::ReachedEnd;
  bool boundary_contaminated = false;
  bool monitors_green = true;
  double linf_u0 = 0.0;
  double max_linf_u = 0.0;
  std::span<const SlopeSample> slopes;
};

struct ClassificationDetail {
  Classification classification = Classification::NumericalFailure;
  double y_max = 0.0;
  bool early_stop = false;
  bool bounded = false;
  bool threshold_crossed = false;
  bool accelerating = false;

  bool operator==(const ClassificationDetail&) const = default;
};

ClassificationDetail classify(const ClassificationInput& in, const BreakingPolicy& policy);

struct MonitorOptions {
  double tol_cons = 1e-8;
  double tol_mass = 1e-8;
  double slack = kMinSlack;
  double slack_rel = 1e-3;
  double linf_tol = 1e-3;
  double gronwall_slack = 1e-2;
  double identity_tol = 1e-5;
  double tol_sign = kDefaultSignTolerance;
  BreakingPolicy policy;
};

/// One CSV row of the trajectory table.
struct TrajectoryRow {
  double t, h1, linf_u, mass_u, mass_m, min_ux, xi, g_lhs, g_rhs, dt;
};

inline constexpr const char* kTrajectoryColumns = "t,h1,linf_u,mass_u,mass_m,min_ux,xi,g_lhs,g_rhs,dt";

struct MonitorReport {
  double cons_drift = 0.0;
  double mass_drift = 0.0;
  double max_linf_u = 0.0;
  double min_qx = std::numeric_limits<double>::infinity();
  double qx_route_mismatch = 0.0;  // max |qx - exp(log_qx)| / qx
  double identity_residual = 0.0;  // max |m(t,q) qx^2 - m0 - source| / scale
  double max_g_ratio = 0.0;
  double slope_ode_worst = -std::numeric_limits<double>::infinity();
  std::optional<double> sign_lapse_time;
  std::vector<BoundViolation> bound_violations;
  ClassificationDetail classification;
  std::vector<SlopeSample> slope_series;

  Classification verdict() const { return classification.classification; }
};

/// Accumulates monitor data from integrate's observer callback.
class RunMonitor {
 public:
  RunMonitor(const SpectralWorkspace& ws, const ModelParams& params, const FieldState& initial,
             const MonitorOptions& options, std::optional<PatternKind> lower_bound_kind,
             std::optional<BreakingCertificate> breaking);

  void observe(const FieldState& state, const CharacteristicsState* chars, double dt);
  MonitorReport finish(const IntegrationStatus& status) const;

  const std::vector<TrajectoryRow>& rows() const { return rows_; }
  const NormBundle& initial_norms() const { return init_; }
  double K() const { return K_; }
  int p() const { return p_; }

 private:
  const SpectralWorkspace& ws_;
  ModelParams params_;
  MonitorOptions opt_;
  std::optional<PatternKind> lower_kind_;
  std::optional<BreakingCertificate> breaking_;
  NormBundle init_;
  double l1_u0_ = 0.0;
  double K_ = 0.0;
  int p_ = 0;
  MonitorReport acc_;
  std::vector<TrajectoryRow> rows_;
};

}  // namespace gch
