#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "gch/harness/config.hpp"

namespace gch::harness {

/// One sweep axis: a dotted config path and its values. Text form is
/// "path=start:stop:count" (inclusive, evenly spaced) or "path=v1,v2,...".
struct AxisSpec {
  std::string path;
  std::vector<double> values;
};

/// Throws ConfigError on malformed input.
AxisSpec parse_axis(const std::string& spec);

struct SweepRow {
  std::size_t index = 0;
  std::vector<double> values;  // one per axis
  std::optional<std::string> classification;
  std::optional<std::string> stop;
  double t_stop = 0.0;
  bool breaking_holds = false;
  bool single_sign_holds = false;
  bool neg_then_pos_holds = false;
  double t_bound = 0.0;
  ModelParams params;
  int exit_code = 0;
  std::string error;  // empty unless the run could not be completed
};

struct SweepResult {
  std::vector<AxisSpec> axes;
  std::vector<SweepRow> rows;
};

/// Sets a dotted path in a config object. Setting a rotation.* key drops
/// "params" and the reverse, so an axis can switch the parameter source.
void set_path(Json& config, const std::string& path, double value);

/// Worker count from GCH_WORKERS, else the hardware concurrency (at least 1).
std::size_t default_workers();

/// Runs the cartesian product of the axes over the template. Each point gets
/// out_dir/run_NNNN/{config.json,report.json,trajectory.csv}; summary.csv is
/// written last. Failures are recorded per row and do not stop the sweep.
SweepResult run_sweep(const Json& config_template, const std::vector<AxisSpec>& axes,
                      const std::filesystem::path& out_dir, std::size_t workers);

std::string sweep_summary_csv(const SweepResult& r);

}  // namespace gch::harness
