// Command line front end: simulate, certify, verify, sweep, preset, reference.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

#include "gch/harness/config.hpp"
#include "gch/harness/presets.hpp"
#include "gch/harness/report.hpp"
#include "gch/harness/runner.hpp"
#include "gch/harness/sweep.hpp"
#include "gch/symbolic/verify.hpp"

using namespace gch::harness;

namespace {

struct Source {
  std::string path;
  std::string preset;
};

void add_source(CLI::App* cmd, Source& s) {
  auto* file = cmd->add_option("config", s.path, "JSON configuration file");
  auto* pre = cmd->add_option("--preset", s.preset, "named preset instead of a file");
  file->excludes(pre);
}

RunConfig load(const Source& s) {
  if (!s.preset.empty()) return preset(s.preset);
  if (s.path.empty()) throw ConfigError("a config file or --preset is required");
  return load_config(s.path);
}

Json load_json(const Source& s) {
  if (!s.preset.empty()) return to_json(preset(s.preset));
  if (s.path.empty()) throw ConfigError("a config file or --preset is required");
  try {
    return Json::parse(read_text(s.path));
  } catch (const Json::parse_error& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  } catch (const std::runtime_error& e) {
    throw ConfigError(e.what());
  }
}

void print_verdicts(const std::vector<gch::sym::IdentityVerdict>& vs) {
  std::size_t width = 4;
  for (const auto& v : vs) width = std::max(width, v.name.size());
  for (const auto& v : vs) {
    std::printf("%-*s  %s  terms=%zu  %s\n", static_cast<int>(width), v.name.c_str(), v.pass ? "PASS" : "FAIL",
                v.residual_terms, v.detail.c_str());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"generalized Camassa-Holm toolkit"};
  app.require_subcommand(1);

  Source sim_src;
  std::string sim_out = "out";
  bool timing = false;
  auto* sim = app.add_subcommand("simulate", "integrate one configuration");
  add_source(sim, sim_src);
  sim->add_option("-o,--out", sim_out, "output directory for trajectory.csv and report.json");
  sim->add_flag("--timing", timing, "record wall_time in the report (breaks byte identity)");

  Source cert_src;
  std::string cert_out;
  auto* cert = app.add_subcommand("certify", "evaluate the certificates without time stepping");
  add_source(cert, cert_src);
  cert->add_option("-o,--out", cert_out, "write the bundle here instead of stdout");

  std::vector<std::string> groups;
  std::string verify_out;
  auto* ver = app.add_subcommand("verify", "exact symbolic identity checks");
  ver->add_option("groups", groups, "pss | dubrovin | hamiltonian-pair | rotation | all (default all)");
  ver->add_option("--json", verify_out, "also write the verdicts as JSON");

  Source sweep_src;
  std::vector<std::string> axes;
  std::string sweep_out = "sweep";
  std::size_t workers = 0;
  auto* sw = app.add_subcommand("sweep", "run a grid of configurations");
  add_source(sw, sweep_src);
  sw->add_option("--axis", axes, "path=start:stop:count or path=v1,v2,...")->required();
  sw->add_option("-o,--out", sweep_out, "output directory");
  sw->add_option("--workers", workers, "worker threads (default: GCH_WORKERS or all cores)");

  double omega = 0.0;
  std::string preset_name;
  bool list = false;
  auto* pre = app.add_subcommand("preset", "rotation constants, or a named scenario config");
  auto* omega_opt = pre->add_option("--omega", omega, "rotation rate");
  auto* name_opt = pre->add_option("--name", preset_name, "print this scenario's configuration");
  auto* list_flag = pre->add_flag("--list", list, "list scenario presets");
  omega_opt->excludes(name_opt)->excludes(list_flag);
  name_opt->excludes(list_flag);

  std::string ref_out;
  auto* ref = app.add_subcommand("reference", "print the configuration reference page");
  ref->add_option("-o,--out", ref_out, "write to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    if (*sim) {
      const RunConfig cfg = load(sim_src);
      const SimulationOutput out = simulate(cfg, {.record_wall_time = timing});
      const std::filesystem::path dir(sim_out);
      write_text(dir / "trajectory.csv", trajectory_csv(out.rows));
      write_text(dir / "report.json", emit(to_json(out.report)));
      for (const auto& w : out.report.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
      std::printf("%s stop=%s t=%s exit=%d\n", gch::to_string(out.report.classification.classification).c_str(),
                  gch::to_string(out.report.status.stop).c_str(), format_double(out.report.status.t_stop).c_str(),
                  out.report.exit_code);
      return out.report.exit_code;
    }
    if (*cert) {
      const std::string text = emit(to_json(certify(load(cert_src))));
      if (cert_out.empty())
        std::fputs(text.c_str(), stdout);
      else
        write_text(cert_out, text);
      return kExitOk;
    }
    if (*ver) {
      if (groups.empty()) groups = {"all"};
      for (const auto& g : groups) {
        if (!gch::sym::is_identity_group(g)) {
          std::fprintf(stderr, "error: unknown identity '%s'\n", g.c_str());
          return kExitConfig;
        }
      }
      const auto verdicts = gch::sym::run_verification(groups);
      print_verdicts(verdicts);
      if (!verify_out.empty()) {
        Json j = Json::array();
        for (const auto& v : verdicts) j.push_back(to_json(v));
        write_text(verify_out, emit(j));
      }
      return gch::sym::all_pass(verdicts) ? kExitOk : kExitFailure;
    }
    if (*sw) {
      const Json tmpl = load_json(sweep_src);
      std::vector<AxisSpec> specs;
      for (const auto& a : axes) specs.push_back(parse_axis(a));
      const SweepResult r = run_sweep(tmpl, specs, sweep_out, workers > 0 ? workers : default_workers());
      std::size_t failed = 0;
      for (const auto& row : r.rows) failed += row.error.empty() ? 0 : 1;
      std::printf("%zu runs, %zu failed; summary in %s\n", r.rows.size(), failed,
                  (std::filesystem::path(sweep_out) / "summary.csv").string().c_str());
      return failed == 0 ? kExitOk : kExitFailure;
    }
    if (*pre) {
      if (list) {
        for (const auto& p : presets()) std::printf("%-16s %s\n", p.name.c_str(), p.summary.c_str());
        return kExitOk;
      }
      if (!preset_name.empty()) {
        std::fputs(emit(to_json(preset(preset_name))).c_str(), stdout);
        return kExitOk;
      }
      std::fputs(emit(rotation_constants_json(omega)).c_str(), stdout);
      return kExitOk;
    }
    if (*ref) {
      if (ref_out.empty())
        std::fputs(config_reference().c_str(), stdout);
      else
        write_text(ref_out, config_reference());
      return kExitOk;
    }
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitFailure;
  }
  return kExitOk;
}
