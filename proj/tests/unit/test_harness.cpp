#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>

#include "gch/harness/presets.hpp"
#include "gch/harness/report.hpp"
#include "gch/harness/runner.hpp"
#include "gch/harness/sweep.hpp"

using namespace gch;
using namespace gch::harness;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("gch_test_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

RunConfig small_gaussian() {
  RunConfig c = preset("both_fail");
  c.grid.n = 256;
  c.time.t_end = 0.5;
  return c;
}

}  // namespace

TEST(Config, PresetsRoundTrip) {
  ASSERT_GE(presets().size(), 7u);
  for (const PresetInfo& p : presets()) {
    const RunConfig c = preset(p.name);
    EXPECT_NO_THROW(c.validate()) << p.name;
    EXPECT_EQ(parse_config(to_json(c)), c) << p.name;
  }
  EXPECT_THROW(preset("nope"), ConfigError);
}

TEST(Config, StrictParsing) {
  Json j = to_json(preset("zero"));
  j["grid"]["bogus"] = 1;
  EXPECT_THROW(parse_config(j), ConfigError);

  j = to_json(preset("zero"));
  j["grid"]["n"] = "many";
  EXPECT_THROW(parse_config(j), ConfigError);

  j = to_json(preset("zero"));
  j["grid"]["n"] = 100;  // not a power of two
  EXPECT_THROW(parse_config(j), ConfigError);

  j = to_json(preset("zero"));
  j["rotation"] = {{"omega", 0.5}};  // both parameter sources
  EXPECT_THROW(parse_config(j), ConfigError);

  j = to_json(preset("zero"));
  j.erase("params");
  EXPECT_THROW(parse_config(j), ConfigError);

  j = to_json(preset("zero"));
  j["monitors"]["lower_bound"] = "sometimes";
  EXPECT_THROW(parse_config(j), ConfigError);

  // Missing sections take defaults.
  const RunConfig c = parse_config(Json{{"params", {{"alpha", 0.5}}}});
  EXPECT_EQ(c.grid, GridConfig{});
  EXPECT_EQ(c.effective_params(), (ModelParams{0.5, 0.0, 0.0, 0.0}));
}

TEST(Config, RotationSource) {
  const RunConfig c = preset("rotation");
  ASSERT_TRUE(c.rotation_omega.has_value());
  EXPECT_EQ(c.effective_params(), rotation_preset(*c.rotation_omega).params);
  EXPECT_FALSE(to_json(c).contains("params"));
}

TEST(Numbers, NonFiniteAndRoundTrip) {
  const double inf = std::numeric_limits<double>::infinity();
  EXPECT_EQ(number_to_json(inf), "inf");
  EXPECT_EQ(number_to_json(-inf), "-inf");
  EXPECT_EQ(number_to_json(std::nan("")), "nan");
  EXPECT_EQ(number_from_json(Json("-inf")), -inf);
  EXPECT_TRUE(std::isnan(number_from_json(Json("nan"))));
  for (double x : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.0}) {
    EXPECT_EQ(std::stod(format_double(x)), x);
    EXPECT_EQ(number_from_json(Json::parse(number_to_json(x).dump())), x);
  }
  EXPECT_EQ(format_double(inf), "inf");
}

TEST(Sweep, AxisParsing) {
  const AxisSpec a = parse_axis("params.alpha=0:1:5");
  EXPECT_EQ(a.path, "params.alpha");
  ASSERT_EQ(a.values.size(), 5u);
  EXPECT_DOUBLE_EQ(a.values[1], 0.25);
  EXPECT_EQ(a.values.back(), 1.0);
  EXPECT_EQ(parse_axis("ic.a=0.1,0.3").values, (std::vector<double>{0.1, 0.3}));
  EXPECT_THROW(parse_axis("ic.a"), ConfigError);
  EXPECT_THROW(parse_axis("ic.a=1:2"), ConfigError);
  EXPECT_THROW(parse_axis("ic.a=x,y"), ConfigError);
}

TEST(Sweep, SetPathSwitchesParameterSource) {
  Json j = to_json(preset("zero"));
  set_path(j, "rotation.omega", 0.25);
  EXPECT_FALSE(j.contains("params"));
  EXPECT_EQ(j["rotation"]["omega"], 0.25);
  set_path(j, "params.beta", 0.5);
  EXPECT_FALSE(j.contains("rotation"));
  EXPECT_EQ(j["params"]["beta"], 0.5);
  set_path(j, "grid.n", 512);
  EXPECT_TRUE(j["grid"]["n"].is_number_integer());
  EXPECT_EQ(parse_config(j).grid.n, 512);
}

TEST(Runner, InitialData) {
  RunConfig c = small_gaussian();
  SpectralWorkspace ws(make_grid(c.grid.L, c.grid.n));
  const Field g = build_initial_data(c, ws);
  EXPECT_NEAR(*std::max_element(g.begin(), g.end()), c.ic.a, 1e-15);

  c.ic.kind = "momentum_bump";
  c.ic.profile = "odd";
  const Field u = build_initial_data(c, ws);
  const Field m = ws.helmholtz_apply(u);
  for (int j = 0; j < c.grid.n; j += 17) {
    const double s = ws.grid().x(j) / c.ic.w;
    EXPECT_NEAR(m[j], c.ic.a * s * std::exp(-s * s), 1e-12);
  }

  c.ic.kind = "random_bumps";
  c.seed = 9;
  const Field r1 = build_initial_data(c, ws);
  EXPECT_EQ(build_initial_data(c, ws), r1);
  c.seed = 10;
  EXPECT_NE(build_initial_data(c, ws), r1);

  const fs::path dir = scratch_dir("table");
  std::ofstream(dir / "u.txt") << "# x u\n-1 0\n0 1\n1 0\n";
  c.ic.kind = "table";
  c.ic.file = (dir / "u.txt").string();
  const Field t = build_initial_data(c, ws);
  for (int j = 0; j < c.grid.n; ++j) EXPECT_NEAR(t[j], std::max(0.0, 1.0 - std::abs(ws.grid().x(j))), 1e-14);
  fs::remove_all(dir);

  c.ic.kind = "square";
  EXPECT_THROW(build_initial_data(c, ws), ConfigError);
}

TEST(Runner, ExitCodes) {
  EXPECT_EQ(exit_code_for(Classification::RanToHorizon), kExitOk);
  EXPECT_EQ(exit_code_for(Classification::WaveBreaking), kExitBreaking);
  EXPECT_EQ(exit_code_for(Classification::NumericalFailure), kExitNumerical);
}

TEST(Runner, ZeroPresetReport) {
  const SimulationOutput out = simulate(preset("zero"));
  EXPECT_EQ(out.report.classification.classification, Classification::RanToHorizon);
  EXPECT_EQ(out.report.exit_code, 0);
  EXPECT_FALSE(out.report.wall_time.has_value());
  EXPECT_EQ(out.rows.size(), 11u);
  EXPECT_EQ(trajectory_csv(out.rows).substr(0, std::string(kTrajectoryColumns).size()), kTrajectoryColumns);
}

TEST(Runner, ReportRoundTrip) {
  RunConfig c = small_gaussian();
  c.verify = {"rotation"};
  const RunReport r = simulate(c).report;
  ASSERT_EQ(r.verdicts.size(), 2u);
  const Json j = to_json(r);
  const RunReport back = report_from_json(Json::parse(emit(j)));
  EXPECT_EQ(back, r);
  EXPECT_EQ(emit(to_json(back)), emit(j));
  EXPECT_EQ(certificate_bundle_from_json(to_json(r.certificates)), r.certificates);
}

TEST(Runner, TimingIsOptIn) {
  const RunReport r = simulate(preset("zero"), {.record_wall_time = true}).report;
  ASSERT_TRUE(r.wall_time.has_value());
  EXPECT_GE(*r.wall_time, 0.0);
  EXPECT_TRUE(to_json(r).contains("wall_time"));
}

TEST(Runner, Deterministic) {
  const RunConfig c = small_gaussian();
  const SimulationOutput a = simulate(c), b = simulate(c);
  EXPECT_EQ(emit(to_json(a.report)), emit(to_json(b.report)));
  EXPECT_EQ(trajectory_csv(a.rows), trajectory_csv(b.rows));
}

TEST(Sweep, SinglePointMatchesSimulate) {
  const RunConfig c = small_gaussian();
  const fs::path dir = scratch_dir("single");
  const SweepResult r = run_sweep(to_json(c), {parse_axis("ic.a=0.2")}, dir, 1);
  ASSERT_EQ(r.rows.size(), 1u);
  EXPECT_TRUE(r.rows[0].error.empty());
  const SimulationOutput direct = simulate(c);
  EXPECT_EQ(read_text(dir / "run_0000" / "report.json"), emit(to_json(direct.report)));
  EXPECT_EQ(read_text(dir / "run_0000" / "trajectory.csv"), trajectory_csv(direct.rows));
  EXPECT_TRUE(fs::exists(dir / "summary.csv"));
  fs::remove_all(dir);
}

TEST(Sweep, OmegaAxisAndParallelAgreement) {
  RunConfig c = preset("rotation");
  c.grid.n = 256;
  c.time.t_end = 0.2;
  const fs::path d1 = scratch_dir("omega1"), d4 = scratch_dir("omega4");
  const std::vector<AxisSpec> axes{parse_axis("rotation.omega=0,0.25,0.5")};
  const SweepResult r = run_sweep(to_json(c), axes, d1, 1);
  const SweepResult p = run_sweep(to_json(c), axes, d4, 4);
  ASSERT_EQ(r.rows.size(), 3u);
  EXPECT_EQ(r.rows[0].params.beta, 0.0);
  EXPECT_EQ(r.rows[0].params.gamma, 0.0);
  EXPECT_NE(r.rows[1].params.beta, 0.0);
  EXPECT_EQ(sweep_summary_csv(r), sweep_summary_csv(p));
  EXPECT_EQ(read_text(d1 / "summary.csv"), read_text(d4 / "summary.csv"));
  fs::remove_all(d1);
  fs::remove_all(d4);
}

TEST(Sweep, FailedPointIsRecorded) {
  const fs::path dir = scratch_dir("bad");
  const SweepResult r = run_sweep(to_json(small_gaussian()), {parse_axis("grid.n=256,100")}, dir, 2);
  ASSERT_EQ(r.rows.size(), 2u);
  EXPECT_TRUE(r.rows[0].error.empty());
  EXPECT_FALSE(r.rows[1].error.empty());
  fs::remove_all(dir);
}

namespace {

int run_cli(const std::string& args) {
  const std::string cmd = std::string(GCH_CLI) + " " + args + " >/dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

}  // namespace

TEST(Cli, ExitCodes) {
  const fs::path dir = scratch_dir("cli");
  EXPECT_EQ(run_cli("simulate --preset zero -o " + (dir / "zero").string()), 0);
  EXPECT_TRUE(fs::exists(dir / "zero" / "report.json"));
  EXPECT_TRUE(fs::exists(dir / "zero" / "trajectory.csv"));
  EXPECT_EQ(run_cli("simulate --preset steep -o " + (dir / "steep").string()), 10);
  std::ofstream(dir / "bad.json") << "{\"grid\": {\"n\": }";
  EXPECT_EQ(run_cli("simulate " + (dir / "bad.json").string() + " -o " + (dir / "bad").string()), 2);
  std::ofstream(dir / "unknown.json") << "{\"params\": {\"alpha\": 1}, \"colour\": 3}";
  EXPECT_EQ(run_cli("simulate " + (dir / "unknown.json").string() + " -o " + (dir / "u").string()), 2);
  EXPECT_EQ(run_cli("verify nope"), 2);
  EXPECT_EQ(run_cli("verify rotation"), 0);
  EXPECT_EQ(run_cli("certify --preset steep"), 0);
  EXPECT_EQ(run_cli("--bogus-flag"), 2);
  fs::remove_all(dir);
}
