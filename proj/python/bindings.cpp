#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "lvbec/detector.hpp"
#include "lvbec/dispersion.hpp"
#include "lvbec/errors.hpp"
#include "lvbec/special.hpp"
#include "lvbec/spectrum.hpp"
#include "lvbec/sweep.hpp"

namespace py = pybind11;
using namespace lvbec;

PYBIND11_MODULE(_lvbec, m) {
  m.doc() = "Bogoliubov dispersion, spectrum criticalities and detector transition rates";
  m.attr("__version__") = LVBEC_VERSION;
  m.attr("R_DDI") = kRDipolar;
  m.attr("A_C_REFERENCE") = kCriticalAReference;

  static py::exception<DomainError> domain_error(m, "DomainError", PyExc_ValueError);
  static py::exception<ValidationError> validation_error(m, "ValidationError", PyExc_ValueError);
  static py::exception<UnstableSpectrum> unstable(m, "UnstableSpectrum", PyExc_ArithmeticError);
  static py::exception<NoInstability> no_instability(m, "NoInstability", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ValidationError& e) {
      PyErr_SetString(validation_error.ptr(), e.what());
    } catch (const UnstableSpectrum& e) {
      PyErr_SetObject(unstable.ptr(), py::make_tuple(e.what(), e.g(), e.f_squared()).ptr());
    } catch (const DomainError& e) {
      PyErr_SetString(domain_error.ptr(), e.what());
    } catch (const NoInstability& e) {
      PyErr_SetString(no_instability.ptr(), e.what());
    }
  });

  py::class_<MediumParams>(m, "MediumParams")
      .def(py::init([](double A, double R) { return MediumParams{A, R}; }), py::arg("A"),
           py::arg("R") = kRDipolar)
      .def_readwrite("A", &MediumParams::A)
      .def_readwrite("R", &MediumParams::R)
      .def("validate", &MediumParams::validate)
      .def("__repr__", [](const MediumParams& p) {
        return "MediumParams(A=" + format_double(p.A) + ", R=" + format_double(p.R) + ")";
      });

  py::class_<PhysicalParams>(m, "PhysicalParams")
      .def(py::init([](double mass, double omega_z, double rho0, double g_c, double g_d,
                       double omega) {
             PhysicalParams p;
             p.m = mass;
             p.omega_z = omega_z;
             p.rho0 = rho0;
             p.g_c = g_c;
             p.g_d = g_d;
             p.omega = omega;
             return p;
           }),
           py::arg("m"), py::arg("omega_z"), py::arg("rho0"), py::arg("g_c"), py::arg("g_d"),
           py::arg("omega") = 0.0)
      .def_readwrite("m", &PhysicalParams::m)
      .def_readwrite("omega", &PhysicalParams::omega)
      .def_readwrite("omega_z", &PhysicalParams::omega_z)
      .def_readwrite("rho0", &PhysicalParams::rho0)
      .def_readwrite("g_c", &PhysicalParams::g_c)
      .def_readwrite("g_d", &PhysicalParams::g_d);

  py::class_<DerivedScales>(m, "DerivedScales")
      .def_readonly("g0_eff", &DerivedScales::g0_eff)
      .def_readonly("d_z", &DerivedScales::d_z)
      .def_readonly("c0", &DerivedScales::c0)
      .def_readonly("M_star", &DerivedScales::M_star)
      .def_readonly("rho0", &DerivedScales::rho0)
      .def_readonly("m", &DerivedScales::m)
      .def_readonly("medium", &DerivedScales::medium)
      .def_readonly("trap_condition_ok", &DerivedScales::trap_condition_ok)
      .def_readonly("omega_z_required", &DerivedScales::omega_z_required)
      .def_readonly("warnings", &DerivedScales::warnings);

  py::class_<BogoliubovPair>(m, "BogoliubovPair")
      .def_readonly("u", &BogoliubovPair::u)
      .def_readonly("v", &BogoliubovPair::v)
      .def_readonly("omega_k", &BogoliubovPair::omega_k)
      .def_readonly("H_k", &BogoliubovPair::H_k)
      .def_readonly("A_k", &BogoliubovPair::A_k);

  m.def("w_scaled", &w_scaled, py::arg("x"), "exp(x^2) erfc(x) for x >= 0");
  m.def("f_squared", &f_squared, py::arg("g"), py::arg("medium"));
  m.def("f", &f_dimensionless, py::arg("g"), py::arg("medium"));
  m.def("derive_scales", &derive_scales, py::arg("phys"),
        py::arg("aspect_warning") = kDefaultAspectWarning);
  m.def("v2d_kernel", &v2d_kernel, py::arg("k"), py::arg("scales"));
  m.def("omega_physical", &omega_physical, py::arg("k"), py::arg("scales"));
  m.def("bogoliubov_uv", &bogoliubov_uv, py::arg("k"), py::arg("scales"));

  py::class_<MinF>(m, "MinF")
      .def_readonly("g_at_min", &MinF::g_at_min)
      .def_readonly("f_c", &MinF::f_c);
  py::class_<CriticalAResult>(m, "CriticalAResult")
      .def_readonly("A_c", &CriticalAResult::A_c)
      .def_readonly("monotone_verified", &CriticalAResult::monotone_verified);
  py::class_<SpectrumFeatures>(m, "SpectrumFeatures")
      .def_readonly("f_c", &SpectrumFeatures::f_c)
      .def_readonly("g_at_min", &SpectrumFeatures::g_at_min)
      .def_readonly("beta_c", &SpectrumFeatures::beta_c)
      .def_property_readonly("classification",
                             [](const SpectrumFeatures& s) {
                               return std::string(to_string(s.classification));
                             })
      .def_readonly("min_f_squared", &SpectrumFeatures::min_f_squared)
      .def_readonly("g_maxon", &SpectrumFeatures::g_maxon)
      .def_readonly("g_roton", &SpectrumFeatures::g_roton);

  m.def("min_f", &min_f, py::arg("medium"));
  m.def("critical_rapidity", &critical_rapidity, py::arg("medium"));
  m.def("critical_A", &critical_A, py::arg("R") = kRDipolar, py::arg("tol") = 1e-10);
  m.def("classify", &classify, py::arg("medium"));

  py::class_<QuadratureSettings>(m, "QuadratureSettings")
      .def(py::init([](double rel_tol, double abs_tol, int max_refinements, int scan_points) {
             QuadratureSettings q;
             q.rel_tol = rel_tol;
             q.abs_tol = abs_tol;
             q.max_refinements = max_refinements;
             q.scan_points = scan_points;
             return q;
           }),
           py::arg("rel_tol") = 1e-8, py::arg("abs_tol") = 1e-14,
           py::arg("max_refinements") = 30, py::arg("scan_points") = 8192)
      .def_readwrite("rel_tol", &QuadratureSettings::rel_tol)
      .def_readwrite("abs_tol", &QuadratureSettings::abs_tol)
      .def_readwrite("max_refinements", &QuadratureSettings::max_refinements)
      .def_readwrite("scan_points", &QuadratureSettings::scan_points);

  py::class_<DetectorConfig>(m, "DetectorConfig")
      .def(py::init([](double omega_tilde, double beta) {
             DetectorConfig d;
             d.omega_tilde = omega_tilde;
             d.beta = beta;
             return d;
           }),
           py::arg("omega_tilde"), py::arg("beta"))
      .def_readwrite("omega_tilde", &DetectorConfig::omega_tilde)
      .def_readwrite("beta", &DetectorConfig::beta)
      .def_readwrite("coupling_g_minus", &DetectorConfig::coupling_g_minus)
      .def_readwrite("rho0", &DetectorConfig::rho0)
      .def_readwrite("M_star", &DetectorConfig::M_star)
      .def_readwrite("c0", &DetectorConfig::c0);

  py::class_<SupportSet>(m, "SupportSet")
      .def_property_readonly("intervals",
                             [](const SupportSet& s) {
                               std::vector<std::pair<double, double>> out;
                               for (const auto& iv : s.intervals) out.emplace_back(iv.g_lo, iv.g_hi);
                               return out;
                             })
      .def_readonly("total_measure", &SupportSet::total_measure)
      .def_readonly("critical_grazing", &SupportSet::critical_grazing)
      .def("empty", &SupportSet::empty);

  py::class_<RateResult>(m, "RateResult")
      .def_readonly("value", &RateResult::value)
      .def_readonly("abs_error_estimate", &RateResult::abs_error_estimate)
      .def_readonly("support", &RateResult::support)
      .def_readonly("converged", &RateResult::converged)
      .def_readonly("dimensional_value", &RateResult::dimensional_value);

  const QuadratureSettings defaults;
  m.def(
      "support_set",
      [](const DetectorConfig& d, const MediumParams& medium, const QuadratureSettings& q) {
        return support_set(d, medium, q);
      },
      py::arg("det"), py::arg("medium"), py::arg("settings") = defaults);
  m.def("excitation_window", &excitation_window, py::arg("beta"), py::arg("medium"));
  m.def("transition_rate", &transition_rate, py::arg("det"), py::arg("medium"),
        py::arg("settings") = defaults, py::call_guard<py::gil_scoped_release>());
  m.def("transition_rate_low_speed", &transition_rate_low_speed, py::arg("det"),
        py::arg("medium"), py::arg("settings") = defaults,
        py::call_guard<py::gil_scoped_release>());
  m.def("rate_prefactor", &rate_prefactor, py::arg("det"));

  // Sweeps: presets by name, table returned as a dict of column lists.
  py::class_<SweepSpec>(m, "SweepSpec")
      .def_property_readonly("target",
                             [](const SweepSpec& s) { return std::string(to_string(s.target)); })
      .def_readwrite("output_path", &SweepSpec::output_path)
      .def("validate", &SweepSpec::validate)
      .def("canonical_form", [](const SweepSpec& s) { return canonical_form(s); });
  m.def("preset", [](const std::string& name) {
    auto p = preset_by_name(name);
    if (!p) throw ValidationError({"unknown preset '" + name + "'"});
    return *p;
  }, py::arg("name"));
  m.def("parse_sweep_config", [](const std::string& text) { return parse_sweep_config(text); },
        py::arg("text"));

  py::class_<CurveTable>(m, "CurveTable")
      .def_readonly("columns", &CurveTable::columns)
      .def_readonly("units", &CurveTable::units)
      .def_readonly("rows", &CurveTable::rows)
      .def_readonly("row_status", &CurveTable::row_status)
      .def_readonly("provenance", &CurveTable::provenance)
      .def("column", [](const CurveTable& t, const std::string& name) {
        const std::size_t c = t.column(name);
        std::vector<double> out;
        for (const auto& r : t.rows) out.push_back(r[c]);
        return out;
      })
      .def("to_csv", [](const CurveTable& t, bool ts) { return to_csv(t, ts); },
           py::arg("with_timestamp") = false);
  m.def("run_sweep", &run_sweep, py::arg("spec"), py::arg("workers") = 0,
        py::call_guard<py::gil_scoped_release>());
}
