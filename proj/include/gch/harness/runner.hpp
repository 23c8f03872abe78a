#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "gch/harness/config.hpp"
#include "gch/harness/report.hpp"

namespace gch::harness {

/// Exit codes of the command line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitBreaking = 10;
inline constexpr int kExitNumerical = 20;

int exit_code_for(Classification c);

/// Samples the configured initial data on the grid. Throws ConfigError when a
/// table file cannot be read.
Field build_initial_data(const RunConfig& c, const SpectralWorkspace& ws);

/// Largest |u0| over the two end nodes of the box.
double boundary_value(const Field& u0);

/// u0 counts as decayed when |u0| at the box ends is at most this.
inline constexpr double kBoundaryDecay = 1e-12;

CertificateBundle certify(const RunConfig& c);
/// Same, for data already sampled on ws.
CertificateBundle certify(const Field& u0, const ModelParams& params, const SpectralWorkspace& ws,
                          const MonitorConfig& m);

/// Marker seeds: count points spread evenly over [-L/2, L/2].
std::vector<double> marker_positions(int count, double half_length);

struct SimulationOutput {
  RunReport report;
  std::vector<TrajectoryRow> rows;
};

struct SimulateOptions {
  bool record_wall_time = false;
};

/// Certificates, time stepping and monitors for one configuration. Symbolic
/// verdicts listed in c.verify are attached to the report.
SimulationOutput simulate(const RunConfig& c, const SimulateOptions& opt = {});

/// Shortest decimal form that reads back to the same double.
std::string format_double(double x);

/// Trajectory table with a kTrajectoryColumns header.
std::string trajectory_csv(const std::vector<TrajectoryRow>& rows);

void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

}  // namespace gch::harness
