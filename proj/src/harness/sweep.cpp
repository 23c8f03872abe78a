#include "gch/harness/sweep.hpp"

#include <atomic>
#include <cstdlib>
#include <sstream>
#include <thread>

#include "gch/harness/runner.hpp"

namespace gch::harness {

namespace {

double parse_number(const std::string& s, const std::string& spec) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw ConfigError("axis '" + spec + "': bad number '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

std::string run_dir_name(std::size_t i) {
  std::string s = std::to_string(i);
  return "run_" + std::string(s.size() < 4 ? 4 - s.size() : 0, '0') + s;
}

}  // namespace

AxisSpec parse_axis(const std::string& spec) {
  const auto eq = spec.find('=');
  if (eq == std::string::npos || eq == 0 || eq + 1 == spec.size())
    throw ConfigError("axis '" + spec + "': expected path=start:stop:count or path=v1,v2,...");
  AxisSpec a;
  a.path = spec.substr(0, eq);
  const std::string rhs = spec.substr(eq + 1);
  if (rhs.find(':') != std::string::npos) {
    auto parts = split(rhs, ':');
    if (parts.size() != 3) throw ConfigError("axis '" + spec + "': range needs start:stop:count");
    const double lo = parse_number(parts[0], spec), hi = parse_number(parts[1], spec);
    const double cnt = parse_number(parts[2], spec);
    if (!(cnt >= 1.0) || cnt != std::floor(cnt)) throw ConfigError("axis '" + spec + "': count must be a positive integer");
    const auto n = static_cast<std::size_t>(cnt);
    for (std::size_t i = 0; i < n; ++i)
      a.values.push_back(n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1));
  } else {
    for (const auto& p : split(rhs, ',')) a.values.push_back(parse_number(p, spec));
  }
  return a;
}

void set_path(Json& config, const std::string& path, double value) {
  const auto parts = split(path, '.');
  if (parts.empty() || parts.front().empty()) throw ConfigError("axis path '" + path + "' is empty");
  if (parts.front() == "rotation") config.erase("params");
  if (parts.front() == "params") {
    if (config.contains("rotation")) {
      config.erase("rotation");
      config["params"] = Json::object();
    }
  }
  Json* node = &config;
  for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
    Json& next = (*node)[parts[i]];
    if (next.is_null()) next = Json::object();
    if (!next.is_object()) throw ConfigError("axis path '" + path + "' crosses a non-object");
    node = &next;
  }
  Json& leaf = (*node)[parts.back()];
  if (leaf.is_number_integer() && value == std::floor(value))
    leaf = static_cast<long long>(value);
  else
    leaf = value;
}

std::size_t default_workers() {
  if (const char* env = std::getenv("GCH_WORKERS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

SweepResult run_sweep(const Json& config_template, const std::vector<AxisSpec>& axes,
                      const std::filesystem::path& out_dir, std::size_t workers) {
  SweepResult result;
  result.axes = axes;
  std::size_t total = 1;
  for (const auto& a : axes) {
    if (a.values.empty()) throw ConfigError("axis '" + a.path + "' has no values");
    total *= a.values.size();
  }
  result.rows.resize(total);
  for (std::size_t i = 0; i < total; ++i) {
    SweepRow& row = result.rows[i];
    row.index = i;
    std::size_t rest = i;
    row.values.resize(axes.size());
    for (std::size_t k = axes.size(); k-- > 0;) {
      row.values[k] = axes[k].values[rest % axes[k].values.size()];
      rest /= axes[k].values.size();
    }
  }
  std::filesystem::create_directories(out_dir);

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < total; i = next++) {
      SweepRow& row = result.rows[i];
      const auto dir = out_dir / run_dir_name(i);
      try {
        Json j = config_template;
        for (std::size_t k = 0; k < axes.size(); ++k) set_path(j, axes[k].path, row.values[k]);
        write_text(dir / "config.json", emit(j));
        const RunConfig cfg = parse_config(j);
        row.params = cfg.effective_params();
        const SimulationOutput out = simulate(cfg);
        const RunReport& r = out.report;
        row.classification = to_string(r.classification.classification);
        row.stop = to_string(r.status.stop);
        row.t_stop = r.status.t_stop;
        row.breaking_holds = r.certificates.breaking.holds;
        row.single_sign_holds = r.certificates.single_sign.holds;
        row.neg_then_pos_holds = r.certificates.neg_then_pos.holds;
        row.t_bound = r.certificates.breaking.t_bound;
        row.exit_code = r.exit_code;
        write_text(dir / "report.json", emit(to_json(r)));
        write_text(dir / "trajectory.csv", trajectory_csv(out.rows));
      } catch (const ConfigError& e) {
        row.error = e.what();
        row.exit_code = kExitConfig;
      } catch (const std::exception& e) {
        row.error = e.what();
        row.exit_code = kExitFailure;
      }
    }
  };
  workers = std::max<std::size_t>(1, std::min(workers, total));
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  write_text(out_dir / "summary.csv", sweep_summary_csv(result));
  return result;
}

std::string sweep_summary_csv(const SweepResult& r) {
  auto quote = [](const std::string& s) {
    std::string q = "\"";
    for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch == '\n' ? ' ' : ch);
    return q + "\"";
  };
  std::string s = "index";
  for (const auto& a : r.axes) s += "," + a.path;
  s += ",classification,stop,t_stop,breaking_holds,single_sign_holds,neg_then_pos_holds,t_bound,"
       "alpha,beta,gamma,big_gamma,exit_code,error\n";
  for (const auto& row : r.rows) {
    s += std::to_string(row.index);
    for (double v : row.values) s += "," + format_double(v);
    s += "," + row.classification.value_or("");
    s += "," + row.stop.value_or("");
    s += "," + format_double(row.t_stop);
    s += std::string(",") + (row.breaking_holds ? "1" : "0");
    s += std::string(",") + (row.single_sign_holds ? "1" : "0");
    s += std::string(",") + (row.neg_then_pos_holds ? "1" : "0");
    s += "," + format_double(row.t_bound);
    for (double v : {row.params.alpha, row.params.beta, row.params.gamma, row.params.big_gamma})
      s += "," + format_double(v);
    s += "," + std::to_string(row.exit_code);
    s += "," + (row.error.empty() ? std::string() : quote(row.error));
    s += '\n';
  }
  return s;
}

}  // namespace gch::harness
