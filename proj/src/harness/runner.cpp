#include "gch/harness/runner.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

namespace gch::harness {

namespace {

Field sample(const SpectralWorkspace& ws, auto&& f) {
  const GridSpec& g = ws.grid();
  Field u(ws.size());
  for (int j = 0; j < g.n(); ++j) u[static_cast<std::size_t>(j)] = f(g.x(j));
  return u;
}

Field from_table(const std::string& path, const SpectralWorkspace& ws) {
  std::ifstream in(path);
  if (!in) throw ConfigError("ic.file: cannot open '" + path + "'");
  std::vector<std::pair<double, double>> pts;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    double x, u;
    if (!(ls >> x)) continue;
    if (!(ls >> u)) throw ConfigError(path + ":" + std::to_string(lineno) + ": expected two columns");
    pts.emplace_back(x, u);
  }
  if (pts.size() < 2) throw ConfigError(path + ": need at least two rows");
  std::sort(pts.begin(), pts.end());
  return sample(ws, [&](double x) {
    if (x < pts.front().first || x > pts.back().first) return 0.0;
    auto hi = std::lower_bound(pts.begin(), pts.end(), std::make_pair(x, -std::numeric_limits<double>::infinity()));
    if (hi == pts.begin()) return hi->second;
    auto lo = hi - 1;
    if (hi == pts.end()) return lo->second;
    const double span = hi->first - lo->first;
    if (span <= 0.0) return hi->second;
    const double th = (x - lo->first) / span;
    return (1.0 - th) * lo->second + th * hi->second;
  });
}

std::optional<PatternKind> lower_bound_kind(const MonitorConfig& m, const CertificateBundle& b) {
  if (m.lower_bound == "none") return std::nullopt;
  if (m.lower_bound == "auto") {
    if (b.single_sign.holds && !b.single_sign.degenerate) return PatternKind::SingleSign;
    if (b.neg_then_pos.holds && !b.neg_then_pos.degenerate) return PatternKind::NegThenPos;
    return std::nullopt;
  }
  return pattern_kind_from_string(m.lower_bound);
}

MonitorOptions monitor_options(const MonitorConfig& m) {
  MonitorOptions o;
  o.tol_cons = m.tol_cons;
  o.tol_mass = m.tol_mass;
  o.slack = m.slack;
  o.slack_rel = m.slack_rel;
  o.linf_tol = m.linf_tol;
  o.gronwall_slack = m.gronwall_slack;
  o.identity_tol = m.identity_tol;
  o.tol_sign = m.tol_sign;
  o.policy = m.policy;
  return o;
}

}  // namespace

int exit_code_for(Classification c) {
  switch (c) {
    case Classification::RanToHorizon: return kExitOk;
    case Classification::WaveBreaking: return kExitBreaking;
    case Classification::NumericalFailure: return kExitNumerical;
  }
  return kExitNumerical;
}

Field build_initial_data(const RunConfig& c, const SpectralWorkspace& ws) {
  const IcConfig& ic = c.ic;
  if (ic.kind == "gaussian") {
    return sample(ws, [&](double x) {
      const double s = (x - ic.x_c) / ic.w;
      return ic.a * std::exp(-s * s);
    });
  }
  if (ic.kind == "sech2") {
    return sample(ws, [&](double x) {
      const double ch = std::cosh((x - ic.x_c) / ic.w);
      return ic.a / (ch * ch);
    });
  }
  if (ic.kind == "momentum_bump") {
    const bool odd = ic.profile == "odd";
    Field m0 = sample(ws, [&](double x) {
      const double s = (x - ic.x_c) / ic.w;
      return ic.a * (odd ? s : 1.0) * std::exp(-s * s);
    });
    return ws.helmholtz_invert(m0);
  }
  if (ic.kind == "table") return from_table(ic.file, ws);
  if (ic.kind == "random_bumps") {
    std::mt19937_64 rng(c.seed);
    std::uniform_real_distribution<double> amp(-ic.a, ic.a), width(0.5 * ic.w, ic.w),
        centre(-0.25 * c.grid.L, 0.25 * c.grid.L);
    struct Bump {
      double a, w, xc;
    };
    std::vector<Bump> bumps;
    for (int i = 0; i < ic.count; ++i) {
      const double a = amp(rng);
      const double w = width(rng);
      bumps.push_back({a, w, centre(rng)});
    }
    return sample(ws, [&](double x) {
      double u = 0.0;
      for (const Bump& b : bumps) {
        const double s = (x - b.xc) / b.w;
        u += b.a * std::exp(-s * s);
      }
      return u;
    });
  }
  throw ConfigError("ic.kind: unknown kind '" + ic.kind + "'");
}

double boundary_value(const Field& u0) {
  if (u0.empty()) return 0.0;
  return std::max(std::abs(u0.front()), std::abs(u0.back()));
}

CertificateBundle certify(const Field& u0, const ModelParams& params, const SpectralWorkspace& ws,
                          const MonitorConfig& m) {
  CertificateBundle b;
  b.params = params;
  const FieldState s = make_state(u0, ws);
  b.initial = norms(s, ws);
  try {
    b.breaking = breaking_certificate(u0, params, ws, m.sigma);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("monitors.sigma: ") + e.what());
  }
  b.single_sign = global_certificate(u0, s.m, ws, PatternKind::SingleSign, m.tol_sign);
  b.neg_then_pos = global_certificate(u0, s.m, ws, PatternKind::NegThenPos, m.tol_sign);
  return b;
}

CertificateBundle certify(const RunConfig& c) {
  c.validate();
  const SpectralWorkspace ws(make_grid(c.grid.L, c.grid.n));
  return certify(build_initial_data(c, ws), c.effective_params(), ws, c.monitors);
}

std::vector<double> marker_positions(int count, double half_length) {
  std::vector<double> x;
  for (int i = 0; i < count; ++i) x.push_back(-0.5 * half_length + (i + 0.5) * half_length / count);
  return x;
}

SimulationOutput simulate(const RunConfig& c, const SimulateOptions& opt) {
  const auto start = std::chrono::steady_clock::now();
  c.validate();
  const ModelParams params = c.effective_params();
  const SpectralWorkspace ws(make_grid(c.grid.L, c.grid.n));
  const Field u0 = build_initial_data(c, ws);

  SimulationOutput out;
  RunReport& r = out.report;
  r.config = c;
  r.versions = build_versions();
  const double edge = boundary_value(u0);
  if (edge > kBoundaryDecay) {
    r.warnings.push_back("u0 does not decay at the box ends: max |u0(+-L)| = " + format_double(edge));
  }
  r.certificates = certify(u0, params, ws, c.monitors);
  r.lower_bound = lower_bound_kind(c.monitors, r.certificates);

  IntegrationControls ctl;
  ctl.t_end = c.time.t_end;
  ctl.dt_max = c.time.dt_max;
  ctl.cfl = c.time.cfl;
  ctl.dt_min = c.time.dt_min;
  ctl.slope_dt = c.time.slope_dt;
  ctl.dealias = c.time.dealias;
  ctl.max_steps = c.time.max_steps;
  ctl.output_interval = c.monitors.output_interval;
  ctl.boundary_tol = c.monitors.boundary_tol;
  ctl.keep_states = false;
  ctl.markers = marker_positions(c.monitors.markers, c.grid.L);
  if (c.monitors.slope_stop) {
    ctl.slope_stop = *c.monitors.slope_stop;
  } else {
    // Certified breaking: stop at the classification threshold.
    const double y_max = c.monitors.policy.y_max(r.certificates.breaking.y0);
    if (r.certificates.breaking.holds && y_max > 0.0) ctl.slope_stop = y_max;
  }

  std::optional<BreakingCertificate> brk;
  if (r.certificates.breaking.holds) brk = r.certificates.breaking;
  RunMonitor mon(ws, params, make_state(u0, ws), monitor_options(c.monitors), r.lower_bound, brk);
  IntegrationResult res = integrate(u0, params, ws, ctl,
                                    [&](const FieldState& s, const CharacteristicsState* ch, double dt) {
                                      mon.observe(s, ch, dt);
                                    });
  const MonitorReport mr = mon.finish(res.status);
  r.status = res.status;
  r.classification = mr.classification;
  r.monitors = summarize(mr);
  r.exit_code = exit_code_for(mr.verdict());
  if (res.status.boundary_contaminated)
    r.warnings.push_back("boundary contamination at t = " + format_double(res.status.boundary_time));
  if (!c.verify.empty()) r.verdicts = sym::run_verification(c.verify);
  out.rows = mon.rows();
  if (opt.record_wall_time)
    r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string trajectory_csv(const std::vector<TrajectoryRow>& rows) {
  std::string s = kTrajectoryColumns;
  s += '\n';
  for (const auto& r : rows) {
    for (double v : {r.t, r.h1, r.linf_u, r.mass_u, r.mass_m, r.min_ux, r.xi, r.g_lhs, r.g_rhs}) {
      s += format_double(v);
      s += ',';
    }
    s += format_double(r.dt);
    s += '\n';
  }
  return s;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path.string() + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace gch::harness
