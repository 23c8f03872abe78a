#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gch/harness/presets.hpp"
#include "gch/harness/report.hpp"
#include "gch/harness/runner.hpp"
#include "gch/symbolic/verify.hpp"

namespace py = pybind11;
using namespace gch;
using namespace gch::harness;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

Field to_field(const Array& a) {
  if (a.ndim() != 1) throw py::value_error("expected a one-dimensional array");
  return Field(a.data(), a.data() + a.size());
}

py::array_t<double> to_array(const Field& f) {
  py::array_t<double> a(static_cast<py::ssize_t>(f.size()));
  std::copy(f.begin(), f.end(), a.mutable_data());
  return a;
}

// Report types already have a JSON form; reuse it for Python dicts.
py::object to_py(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

Json from_py(const py::handle& obj) {
  return Json::parse(py::module_::import("json").attr("dumps")(obj).cast<std::string>());
}

RunConfig config_from(const py::object& obj) {
  if (py::isinstance<py::str>(obj)) return preset(obj.cast<std::string>());
  return parse_config(from_py(obj));
}

py::dict trajectory(const std::vector<TrajectoryRow>& rows) {
  const std::vector<std::pair<const char*, double TrajectoryRow::*>> cols = {
      {"t", &TrajectoryRow::t},           {"h1", &TrajectoryRow::h1},         {"linf_u", &TrajectoryRow::linf_u},
      {"mass_u", &TrajectoryRow::mass_u}, {"mass_m", &TrajectoryRow::mass_m}, {"min_ux", &TrajectoryRow::min_ux},
      {"xi", &TrajectoryRow::xi},         {"g_lhs", &TrajectoryRow::g_lhs},   {"g_rhs", &TrajectoryRow::g_rhs},
      {"dt", &TrajectoryRow::dt}};
  py::dict out;
  for (const auto& [name, member] : cols) {
    Field col;
    col.reserve(rows.size());
    for (const auto& r : rows) col.push_back(r.*member);
    out[name] = to_array(col);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_gch, m) {
  m.doc() = "Generalized Camassa-Holm solver, certificates and identity checks";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  py::class_<ModelParams>(m, "ModelParams")
      .def(py::init<double, double, double, double>(), py::arg("alpha") = 0.0, py::arg("beta") = 0.0,
           py::arg("gamma") = 0.0, py::arg("big_gamma") = 0.0)
      .def_readwrite("alpha", &ModelParams::alpha)
      .def_readwrite("beta", &ModelParams::beta)
      .def_readwrite("gamma", &ModelParams::gamma)
      .def_readwrite("big_gamma", &ModelParams::big_gamma)
      .def_property_readonly("K", [](const ModelParams& p) { return k_of(p); })
      .def("__repr__", [](const ModelParams& p) {
        return "ModelParams(alpha=" + format_double(p.alpha) + ", beta=" + format_double(p.beta) +
               ", gamma=" + format_double(p.gamma) + ", big_gamma=" + format_double(p.big_gamma) + ")";
      });

  py::class_<SpectralWorkspace>(m, "Workspace")
      .def(py::init([](double L, int n) { return std::make_unique<SpectralWorkspace>(make_grid(L, n)); }),
           py::arg("L"), py::arg("n"))
      .def_property_readonly("x",
                             [](const SpectralWorkspace& ws) {
                               Field x(ws.size());
                               for (int j = 0; j < ws.grid().n(); ++j) x[j] = ws.grid().x(j);
                               return to_array(x);
                             })
      .def("dx", [](const SpectralWorkspace& ws, const Array& u) { return to_array(ws.dx(to_field(u))); })
      .def("helmholtz_apply",
           [](const SpectralWorkspace& ws, const Array& u) { return to_array(ws.helmholtz_apply(to_field(u))); })
      .def("helmholtz_invert",
           [](const SpectralWorkspace& ws, const Array& m) { return to_array(ws.helmholtz_invert(to_field(m))); })
      .def("green_convolve",
           [](const SpectralWorkspace& ws, const Array& m) { return to_array(ws.green_convolve(to_field(m))); })
      .def("sobolev_norm",
           [](const SpectralWorkspace& ws, const Array& u, double s) { return ws.sobolev_norm(to_field(u), s); })
      .def(
          "rhs",
          [](const SpectralWorkspace& ws, const Array& u, const ModelParams& p, bool dealias) {
            return to_array(rhs(to_field(u), p, ws, dealias));
          },
          py::arg("u"), py::arg("params"), py::arg("dealias") = true);

  m.def(
      "breaking_certificate",
      [](const SpectralWorkspace& ws, const Array& u0, const ModelParams& p, std::optional<double> sigma) {
        return to_py(to_json(breaking_certificate(to_field(u0), p, ws, sigma)));
      },
      py::arg("ws"), py::arg("u0"), py::arg("params"), py::arg("sigma") = py::none());

  m.def(
      "global_certificate",
      [](const SpectralWorkspace& ws, const Array& u0, const std::string& kind) {
        const auto k = pattern_kind_from_string(kind);
        if (!k) throw py::value_error("kind must be SingleSign or NegThenPos");
        const Field u = to_field(u0);
        return to_py(to_json(global_certificate(u, ws.helmholtz_apply(u), ws, *k)));
      },
      py::arg("ws"), py::arg("u0"), py::arg("kind"));

  m.def("rotation_constants", [](double omega) { return to_py(rotation_constants_json(omega)); }, py::arg("omega"));

  m.def("presets", [] {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& p : presets()) out.emplace_back(p.name, p.summary);
    return out;
  });
  m.def("preset", [](const std::string& name) { return to_py(to_json(preset(name))); }, py::arg("name"));
  m.def("config_reference", &config_reference);

  m.def(
      "certify", [](const py::object& config) { return to_py(to_json(certify(config_from(config)))); },
      py::arg("config"));

  m.def(
      "simulate",
      [](const py::object& config, bool timing) {
        const RunConfig c = config_from(config);
        SimulationOutput out;
        {
          py::gil_scoped_release release;
          out = simulate(c, {.record_wall_time = timing});
        }
        return py::make_tuple(to_py(to_json(out.report)), trajectory(out.rows));
      },
      py::arg("config"), py::arg("timing") = false,
      "Runs a configuration (dict or preset name); returns (report, trajectory columns).");

  m.def(
      "verify",
      [](const std::vector<std::string>& groups) {
        std::vector<sym::IdentityVerdict> v;
        {
          py::gil_scoped_release release;
          v = sym::run_verification(groups);
        }
        py::list out;
        for (const auto& x : v) out.append(to_py(to_json(x)));
        return out;
      },
      py::arg("groups") = std::vector<std::string>{"all"});

  m.attr("__version__") = build_versions().at("gch");
}
