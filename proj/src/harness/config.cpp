#include "gch/harness/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace gch::harness {

namespace {

class Reader {
 public:
  Reader(const Json& j, std::string where) : j_(j), where_(std::move(where)) {
    if (!j_.is_object()) throw ConfigError(where_ + ": expected an object");
  }

  void touch(const char* key) { used_.insert(key); }

  bool has(const char* key) const { return j_.contains(key) && !j_.at(key).is_null(); }

  const Json& raw(const char* key) {
    used_.insert(key);
    return j_.at(key);
  }

  void num(const char* key, double& out) {
    if (!mark(key)) return;
    out = as_number(j_.at(key), path(key));
  }

  void opt_num(const char* key, std::optional<double>& out) {
    if (!mark(key)) return;
    out = as_number(j_.at(key), path(key));
  }

  template <class Int>
  void integer(const char* key, Int& out) {
    if (!mark(key)) return;
    const Json& v = j_.at(key);
    if (!v.is_number_integer()) throw ConfigError(path(key) + ": expected an integer");
    if constexpr (std::is_unsigned_v<Int>) {
      if (v.is_number_unsigned()) {
        out = v.get<Int>();
        return;
      }
      if (v.get<long long>() < 0) throw ConfigError(path(key) + ": must be non-negative");
    }
    out = static_cast<Int>(v.get<long long>());
  }

  void boolean(const char* key, bool& out) {
    if (!mark(key)) return;
    if (!j_.at(key).is_boolean()) throw ConfigError(path(key) + ": expected true or false");
    out = j_.at(key).get<bool>();
  }

  void string(const char* key, std::string& out) {
    if (!mark(key)) return;
    if (!j_.at(key).is_string()) throw ConfigError(path(key) + ": expected a string");
    out = j_.at(key).get<std::string>();
  }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it)
      if (!used_.count(it.key())) throw ConfigError(where_ + ": unknown key '" + it.key() + "'");
  }

  std::string path(const char* key) const { return where_.empty() ? key : where_ + "." + key; }

 private:
  bool mark(const char* key) {
    used_.insert(key);
    return has(key);
  }

  static double as_number(const Json& v, const std::string& where) {
    try {
      return number_from_json(v);
    } catch (const std::exception&) {
      throw ConfigError(where + ": expected a number");
    }
  }

  const Json& j_;
  std::string where_;
  std::set<std::string> used_;
};

const std::set<std::string> kIcKinds{"gaussian", "sech2", "momentum_bump", "table", "random_bumps"};
const std::set<std::string> kLowerKinds{"auto", "none", "SingleSign", "NegThenPos"};

}  // namespace

Json number_to_json(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

double number_from_json(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw std::invalid_argument("not a number");
}

void RunConfig::validate() const {
  if (params.has_value() == rotation_omega.has_value())
    throw ConfigError("exactly one of 'params' and 'rotation' must be given");
  try {
    make_grid(grid.L, grid.n);
    effective_params().validate();
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  if (!(time.t_end >= 0.0) || !(time.dt_max > 0.0) || !(time.cfl > 0.0) || !(time.dt_min > 0.0))
    throw ConfigError("time: t_end >= 0 and positive dt_max, cfl, dt_min required");
  if (!(monitors.output_interval > 0.0)) throw ConfigError("monitors.output_interval must be positive");
  if (!kIcKinds.count(ic.kind)) throw ConfigError("ic.kind: unknown kind '" + ic.kind + "'");
  if (ic.kind != "table" && ic.kind != "momentum_bump" && !(ic.w > 0.0)) throw ConfigError("ic.w must be positive");
  if (ic.kind == "momentum_bump" && (ic.profile != "even" && ic.profile != "odd"))
    throw ConfigError("ic.profile must be 'even' or 'odd'");
  if (ic.kind == "momentum_bump" && !(ic.w > 0.0)) throw ConfigError("ic.w must be positive");
  if (ic.kind == "table" && ic.file.empty()) throw ConfigError("ic.file is required for kind 'table'");
  if (ic.kind == "random_bumps" && ic.count < 1) throw ConfigError("ic.count must be positive");
  if (!kLowerKinds.count(monitors.lower_bound)) throw ConfigError("monitors.lower_bound: unknown value");
  if (monitors.markers < 0) throw ConfigError("monitors.markers must be non-negative");
  if (monitors.sigma && !(*monitors.sigma > 0.0)) throw ConfigError("monitors.sigma must be positive");
  for (const auto& v : verify)
    if (v != "pss" && v != "dubrovin" && v != "hamiltonian-pair" && v != "rotation" && v != "all")
      throw ConfigError("verify: unknown identity '" + v + "'");
}

ModelParams RunConfig::effective_params() const {
  if (params) return *params;
  if (rotation_omega) {
    try {
      return rotation_preset(*rotation_omega).params;
    } catch (const std::exception& e) {
      throw ConfigError(e.what());
    }
  }
  throw ConfigError("no model parameters given");
}

RunConfig parse_config(const Json& j) {
  RunConfig c;
  try {
    Reader top(j, "");
    top.string("name", c.name);
    if (top.has("grid")) {
      Reader r(top.raw("grid"), "grid");
      r.num("L", c.grid.L);
      r.integer("n", c.grid.n);
      r.finish();
    }
    if (top.has("time")) {
      Reader r(top.raw("time"), "time");
      r.num("t_end", c.time.t_end);
      r.num("dt_max", c.time.dt_max);
      r.num("cfl", c.time.cfl);
      r.num("dt_min", c.time.dt_min);
      r.num("slope_dt", c.time.slope_dt);
      r.boolean("dealias", c.time.dealias);
      r.integer("max_steps", c.time.max_steps);
      r.finish();
    }
    if (top.has("params")) {
      Reader r(top.raw("params"), "params");
      ModelParams p;
      r.num("alpha", p.alpha);
      r.num("beta", p.beta);
      r.num("gamma", p.gamma);
      r.num("big_gamma", p.big_gamma);
      r.finish();
      c.params = p;
    }
    top.touch("params");
    if (top.has("rotation")) {
      Reader r(top.raw("rotation"), "rotation");
      double omega = 0.0;
      if (!r.has("omega")) throw ConfigError("rotation.omega is required");
      r.num("omega", omega);
      r.finish();
      c.rotation_omega = omega;
    }
    top.touch("rotation");
    if (top.has("ic")) {
      Reader r(top.raw("ic"), "ic");
      r.string("kind", c.ic.kind);
      r.num("a", c.ic.a);
      r.num("w", c.ic.w);
      r.num("x_c", c.ic.x_c);
      r.string("profile", c.ic.profile);
      r.string("file", c.ic.file);
      r.integer("count", c.ic.count);
      r.finish();
    }
    if (top.has("monitors")) {
      Reader r(top.raw("monitors"), "monitors");
      auto& m = c.monitors;
      r.num("output_interval", m.output_interval);
      r.num("tol_cons", m.tol_cons);
      r.num("tol_mass", m.tol_mass);
      r.num("slack", m.slack);
      r.num("slack_rel", m.slack_rel);
      r.num("linf_tol", m.linf_tol);
      r.num("gronwall_slack", m.gronwall_slack);
      r.num("identity_tol", m.identity_tol);
      r.num("tol_sign", m.tol_sign);
      r.num("boundary_tol", m.boundary_tol);
      r.opt_num("slope_stop", m.slope_stop);
      r.integer("markers", m.markers);
      r.string("lower_bound", m.lower_bound);
      r.opt_num("sigma", m.sigma);
      r.num("y_factor", m.policy.y_factor);
      r.num("y_abs", m.policy.y_abs);
      r.num("c_u", m.policy.c_u);
      r.num("c_abs", m.policy.c_abs);
      r.num("window_fraction", m.policy.window_fraction);
      r.finish();
    }
    top.integer("seed", c.seed);
    if (top.has("verify")) {
      const Json& v = top.raw("verify");
      if (!v.is_array()) throw ConfigError("verify: expected a list of identity names");
      for (const auto& e : v) {
        if (!e.is_string()) throw ConfigError("verify: expected strings");
        c.verify.push_back(e.get<std::string>());
      }
    }
    for (const char* k : {"grid", "time", "ic", "monitors", "verify"}) top.touch(k);
    top.finish();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  c.validate();
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  return parse_config(j);
}

Json to_json(const RunConfig& c) {
  Json j;
  j["name"] = c.name;
  j["grid"] = {{"L", c.grid.L}, {"n", c.grid.n}};
  j["time"] = {{"t_end", c.time.t_end},       {"dt_max", c.time.dt_max},   {"cfl", c.time.cfl},
               {"dt_min", c.time.dt_min},     {"slope_dt", c.time.slope_dt}, {"dealias", c.time.dealias},
               {"max_steps", c.time.max_steps}};
  if (c.params) {
    j["params"] = {{"alpha", c.params->alpha},
                   {"beta", c.params->beta},
                   {"gamma", c.params->gamma},
                   {"big_gamma", c.params->big_gamma}};
  }
  if (c.rotation_omega) j["rotation"] = {{"omega", *c.rotation_omega}};
  j["ic"] = {{"kind", c.ic.kind}, {"a", c.ic.a},       {"w", c.ic.w},        {"x_c", c.ic.x_c},
             {"profile", c.ic.profile}, {"file", c.ic.file}, {"count", c.ic.count}};
  const auto& m = c.monitors;
  j["monitors"] = {{"output_interval", m.output_interval},
                   {"tol_cons", m.tol_cons},
                   {"tol_mass", m.tol_mass},
                   {"slack", m.slack},
                   {"slack_rel", m.slack_rel},
                   {"linf_tol", m.linf_tol},
                   {"gronwall_slack", m.gronwall_slack},
                   {"identity_tol", m.identity_tol},
                   {"tol_sign", m.tol_sign},
                   {"boundary_tol", m.boundary_tol},
                   {"slope_stop", m.slope_stop ? number_to_json(*m.slope_stop) : Json(nullptr)},
                   {"markers", m.markers},
                   {"lower_bound", m.lower_bound},
                   {"sigma", m.sigma ? Json(*m.sigma) : Json(nullptr)},
                   {"y_factor", m.policy.y_factor},
                   {"y_abs", m.policy.y_abs},
                   {"c_u", m.policy.c_u},
                   {"c_abs", m.policy.c_abs},
                   {"window_fraction", m.policy.window_fraction}};
  j["seed"] = c.seed;
  j["verify"] = c.verify;
  return j;
}

std::string config_reference() {
  struct Entry {
    const char* key;
    const char* doc;
  };
  static const Entry kDocs[] = {
      {"name", "free-form run label, echoed in the report"},
      {"grid.L", "half length of the periodic box [-L, L)"},
      {"grid.n", "number of nodes, a power of two >= 16"},
      {"time.t_end", "final time"},
      {"time.dt_max", "upper bound on the step"},
      {"time.cfl", "CFL number; dt <= cfl dx / max|u + Gamma|"},
      {"time.dt_min", "steps below this stop the run (DtUnderflow)"},
      {"time.slope_dt", "dt <= slope_dt / max|u_x|; 0 disables the limit"},
      {"time.dealias", "2/3-rule dealiasing of the nonlinear terms"},
      {"time.max_steps", "hard cap on accepted steps (StepLimit)"},
      {"params.alpha", "coefficient of u_x"},
      {"params.beta", "coefficient of u^2 u_x"},
      {"params.gamma", "coefficient of u^3 u_x"},
      {"params.big_gamma", "coefficient of u_xxx (Gamma)"},
      {"rotation.omega", "rotation rate; replaces params by the rotation preset"},
      {"ic.kind", "gaussian | sech2 | momentum_bump | table | random_bumps"},
      {"ic.a", "amplitude"},
      {"ic.w", "width"},
      {"ic.x_c", "centre"},
      {"ic.profile", "momentum_bump shape: even (a g) or odd (a s g), g = exp(-s^2)"},
      {"ic.file", "table: whitespace separated 'x u' rows"},
      {"ic.count", "random_bumps: number of bumps"},
      {"monitors.output_interval", "spacing of trajectory rows and monitor checks"},
      {"monitors.tol_cons", "relative H1 drift tolerance"},
      {"monitors.tol_mass", "relative drift tolerance for the integrals of u and m"},
      {"monitors.slack", "absolute slack of every inequality check"},
      {"monitors.slack_rel", "relative slack of the slope inequality"},
      {"monitors.linf_tol", "slack of max|u| <= ||u0||_H1"},
      {"monitors.gronwall_slack", "slack of the reciprocal slope envelope"},
      {"monitors.identity_tol", "relative tolerance of the characteristics identity"},
      {"monitors.tol_sign", "entries with |m| <= tol_sign max|m| count as zero"},
      {"monitors.boundary_tol", "max|u| on the outer 1% of the box, relative to max|u0|"},
      {"monitors.slope_stop", "stop once min u_x < -slope_stop (null: the breaking threshold when certified, else never)"},
      {"monitors.markers", "number of Lagrangian markers on [-L/2, L/2]"},
      {"monitors.lower_bound", "auto | none | SingleSign | NegThenPos slope floor to monitor"},
      {"monitors.sigma", "override of the breaking-certificate sigma (null: largest admissible)"},
      {"monitors.y_factor", "breaking threshold Y_max = max(y_factor |y(0)|, y_abs)"},
      {"monitors.y_abs", "absolute part of Y_max"},
      {"monitors.c_u", "boundedness: max|u| <= c_u ||u0||_inf + c_abs"},
      {"monitors.c_abs", "absolute part of the boundedness check"},
      {"monitors.window_fraction", "final fraction of the run over which the slope must accelerate"},
      {"seed", "seed of the random_bumps family"},
      {"verify", "symbolic identity groups to attach to the report"},
  };
  RunConfig defaults;
  defaults.params = ModelParams{};
  const Json d = to_json(defaults);
  std::ostringstream os;
  os << "# Run configuration reference\n\n"
     << "Generated by `gch reference`. A configuration is a JSON object; every key is optional\n"
     << "except that exactly one of `params` and `rotation` must be present.\n\n"
     << "| key | default | meaning |\n|---|---|---|\n";
  for (const auto& e : kDocs) {
    std::string key = e.key;
    std::string def = "";
    Json::json_pointer ptr("/" + [&] {
      std::string s = key;
      for (auto& ch : s)
        if (ch == '.') ch = '/';
      return s;
    }());
    if (key.rfind("rotation", 0) == 0)
      def = "(absent)";
    else if (d.contains(ptr))
      def = d.at(ptr).dump();
    os << "| `" << key << "` | `" << def << "` | " << e.doc << " |\n";
  }
  return os.str();
}

}  // namespace gch::harness
