#include "gch/harness/presets.hpp"

#include <algorithm>

namespace gch::harness {

namespace {

RunConfig base(const std::string& name, ModelParams p, double L, int n, double t_end) {
  RunConfig c;
  c.name = name;
  c.params = p;
  c.grid = {L, n};
  c.time.t_end = t_end;
  return c;
}

IcConfig ic(const std::string& kind, double a, double w, const std::string& profile = "even") {
  IcConfig c;
  c.kind = kind;
  c.a = a;
  c.w = w;
  c.profile = profile;
  return c;
}

RunConfig make(const std::string& name) {
  if (name == "zero") {
    RunConfig c = base(name, {1.0, 0.0, 0.0, 0.0}, 20.0, 256, 1.0);
    c.ic.a = 0.0;
    return c;
  }
  if (name == "ch_conservation") {
    RunConfig c = base(name, {1.0, 0.0, 0.0, 0.0}, 20.0, 1024, 10.0);
    c.ic = ic("gaussian", 0.2, 1.0);
    // The dispersive tail reaches the box ends near t = 9 at about 2e-3 max|u0|.
    c.monitors.boundary_tol = 1e-2;
    return c;
  }
  if (name == "single_sign") {
    // h = 0, so m keeps its sign along characteristics.
    RunConfig c = base(name, {-0.1, 0.0, 0.0, 0.1}, 32.0, 2048, 20.0);
    c.ic = ic("momentum_bump", 0.15, 1.0, "even");
    c.monitors.markers = 16;
    return c;
  }
  if (name == "neg_then_pos") {
    RunConfig c = base(name, {-0.1, 0.0, 0.0, 0.1}, 32.0, 2048, 20.0);
    c.ic = ic("momentum_bump", 0.25, 1.0, "odd");
    c.monitors.markers = 16;
    return c;
  }
  if (name == "steep") {
    RunConfig c = base(name, {0.001, 0.003, 0.004, 0.001}, 8.0, 4096, 3.0);
    c.ic = ic("gaussian", 0.5, 0.5);
    c.monitors.output_interval = 0.01;
    return c;
  }
  if (name == "both_fail") {
    RunConfig c = base(name, {0.1, 0.05, 0.02, 0.05}, 20.0, 1024, 2.0);
    c.ic = ic("gaussian", 0.2, 1.0);
    return c;
  }
  if (name == "rotation") {
    RunConfig c;
    c.name = name;
    c.rotation_omega = 0.25;
    c.grid = {20.0, 1024};
    c.time.t_end = 2.0;
    c.ic = ic("gaussian", 0.2, 1.0);
    return c;
  }
  throw ConfigError("unknown preset '" + name + "'");
}

}  // namespace

const std::vector<PresetInfo>& presets() {
  static const std::vector<PresetInfo> kPresets{
      {"zero", "zero data; flat trajectory"},
      {"ch_conservation", "Camassa-Holm Gaussian run, t = 10"},
      {"single_sign", "non-negative momentum bump, t = 20"},
      {"neg_then_pos", "odd momentum bump, negative then positive, t = 20"},
      {"steep", "steep Gaussian satisfying the breaking criterion"},
      {"both_fail", "moderate Gaussian that meets neither certificate"},
      {"rotation", "rotation-induced coefficients at Omega = 0.25"},
  };
  return kPresets;
}

RunConfig preset(const std::string& name) {
  RunConfig c = make(name);
  c.validate();
  return c;
}

Json rotation_constants_json(double omega) {
  RotationPreset r;
  try {
    r = rotation_preset(omega);
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  return {{"omega", number_to_json(r.omega)},
          {"c", number_to_json(r.c)},
          {"alpha_f", number_to_json(r.alpha_f)},
          {"beta0", number_to_json(r.beta0)},
          {"beta_f", number_to_json(r.beta_f)},
          {"omega1", number_to_json(r.omega1)},
          {"omega2", number_to_json(r.omega2)},
          {"params",
           {{"alpha", number_to_json(r.params.alpha)},
            {"beta", number_to_json(r.params.beta)},
            {"gamma", number_to_json(r.params.gamma)},
            {"big_gamma", number_to_json(r.params.big_gamma)}}}};
}

}  // namespace gch::harness
