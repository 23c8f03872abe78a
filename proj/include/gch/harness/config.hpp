#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "gch/certificates.hpp"
#include "gch/dynamics.hpp"
#include "gch/model.hpp"
#include "gch/monitors.hpp"

namespace gch::harness {

using Json = nlohmann::json;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GridConfig {
  double L = 20.0;
  int n = 1024;
  bool operator==(const GridConfig&) const = default;
};

struct TimeConfig {
  double t_end = 1.0;
  double dt_max = 1e-2;
  double cfl = 0.5;
  double dt_min = 1e-10;
  double slope_dt = 0.05;
  bool dealias = true;
  std::size_t max_steps = 50'000'000;
  bool operator==(const TimeConfig&) const = default;
};

/// Initial data. gaussian: a exp(-((x - x_c)/w)^2); sech2: a sech^2((x - x_c)/w);
/// momentum_bump: m0 = a g(s) or a s g(s) with s = (x - x_c)/w, g = exp(-s^2),
/// for profile "even" / "odd", then u0 = Lambda^{-2} m0; table: two columns
/// "x u" read from file and interpolated linearly (zero outside);
/// random_bumps: `count` gaussians with amplitudes in [-a, a], widths in
/// [w/2, w] and centres in [-L/4, L/4], drawn from the run seed.
struct IcConfig {
  std::string kind = "gaussian";
  double a = 0.2;
  double w = 1.0;
  double x_c = 0.0;
  std::string profile = "even";
  std::string file;
  int count = 3;
  bool operator==(const IcConfig&) const = default;
};

struct MonitorConfig {
  double output_interval = 0.1;
  double tol_cons = 1e-8;
  double tol_mass = 1e-8;
  double slack = kMinSlack;
  double slack_rel = 1e-3;
  double linf_tol = 1e-3;
  double gronwall_slack = 1e-2;
  double identity_tol = 1e-5;
  double tol_sign = kDefaultSignTolerance;
  double boundary_tol = 1e-3;
  /// Unset: Y_max of the breaking policy when the breaking certificate holds, else never.
  std::optional<double> slope_stop;
  int markers = 0;
  /// "auto", "none", "SingleSign" or "NegThenPos".
  std::string lower_bound = "auto";
  std::optional<double> sigma;
  BreakingPolicy policy;
  bool operator==(const MonitorConfig&) const = default;
};

struct RunConfig {
  std::string name;
  GridConfig grid;
  TimeConfig time;
  std::optional<ModelParams> params;
  std::optional<double> rotation_omega;
  IcConfig ic;
  MonitorConfig monitors;
  std::uint64_t seed = 0;
  std::vector<std::string> verify;

  /// Throws ConfigError when the configuration is inconsistent.
  void validate() const;
  /// Explicit params or those induced by the rotation preset.
  ModelParams effective_params() const;

  bool operator==(const RunConfig&) const = default;
};

RunConfig parse_config(const Json& j);
RunConfig load_config(const std::string& path);
Json to_json(const RunConfig& c);

/// Markdown page listing every key with its default and meaning.
std::string config_reference();

/// Non-finite doubles are written as the strings "inf", "-inf" and "nan".
Json number_to_json(double x);
double number_from_json(const Json& j);

}  // namespace gch::harness
