#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lossblockade/analytic.hpp"
#include "lossblockade/error.hpp"
#include "lossblockade/experiments.hpp"
#include "lossblockade/observables.hpp"
#include "lossblockade/presets.hpp"
#include "lossblockade/spectral.hpp"

namespace py = pybind11;
using namespace lossblockade;

namespace {

py::dict point_dict(const PointResult& r) {
  py::dict d;
  d["ok"] = r.ok;
  d["error"] = r.error;
  d["N1"] = r.N1;
  d["N2"] = r.N2;
  d["g2"] = r.g2;
  d["g3"] = r.g3;
  d["P"] = std::vector<double>(r.P.begin(), r.P.end());
  return d;
}

PerModeTruncation cutoff(std::pair<int, int> c) { return PerModeTruncation{c.first, c.second}; }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Driven Kerr resonator coupled to a lossy linear resonator";
  m.attr("__version__") = LOSSBLOCKADE_VERSION;

  py::register_exception<NumericalFailure>(m, "NumericalFailure", PyExc_RuntimeError);
  py::register_exception<SingularParameter>(m, "SingularParameter", PyExc_ArithmeticError);

  py::class_<SystemParams>(m, "SystemParams")
      .def(py::init<>())
      .def_readwrite("omega_c", &SystemParams::omega_c)
      .def_readwrite("delta", &SystemParams::delta)
      .def_readwrite("chi", &SystemParams::chi)
      .def_readwrite("J", &SystemParams::J)
      .def_readwrite("gamma_1", &SystemParams::gamma_1)
      .def_readwrite("gamma_ex", &SystemParams::gamma_ex)
      .def_readwrite("gamma_2", &SystemParams::gamma_2)
      .def_readwrite("gamma_tip", &SystemParams::gamma_tip)
      .def_readwrite("omega_drive", &SystemParams::omega_drive)
      .def_readwrite("drive_phase", &SystemParams::drive_phase)
      .def_property_readonly("gamma1_prime", &SystemParams::gamma1_prime)
      .def_property_readonly("gamma2_prime", &SystemParams::gamma2_prime)
      .def("set", [](SystemParams& p, const std::string& key, double value) { set_param(p, key, value); })
      .def("__repr__", [](const SystemParams& p) { return "SystemParams(" + to_json(p).dump() + ")"; });

  m.def("preset_names", &preset_names);
  m.def("preset", [](const std::string& name) { return builtin_preset(name).params; }, py::arg("name"),
        "Parameters of a built-in preset");

  m.def("hep", [](const SystemParams& p) { return hep_location(p.J, p.gamma1_prime(), p.gamma_2).gamma_tip; },
        "gamma_tip of the Hamiltonian exceptional point");
  m.def("one_photon_eigenvalues", [](const SystemParams& p) { return one_photon_eigensystem_closed(p).eigenvalues; });
  m.def("two_photon_eigenvalues", [](const SystemParams& p) { return two_photon_eigensystem_closed(p).eigenvalues; });
  m.def("upper_branch_detuning", [](const SystemParams& p) { return DetuningProtocol::track_upper_branch().resolve(p); });

  m.def("analytic", [](const SystemParams& p) { return point_dict(evaluate_analytic(p)); }, py::arg("params"),
        "Weak-drive closed-form observables");
  m.def(
      "lindblad",
      [](const SystemParams& p, std::pair<int, int> c) { return point_dict(evaluate_lindblad(p, build_basis(cutoff(c)))); },
      py::arg("params"), py::arg("cutoff") = std::pair<int, int>{5, 5}, "Master-equation steady-state observables");

  m.def(
      "sweep_loss",
      [](const SystemParams& p, const std::vector<double>& grid, const std::string& protocol, double fixed_delta,
         const std::string& backends, unsigned threads) {
        SweepOptions o;
        o.threads = threads;
        const auto table = sweep_loss(p, grid, protocol_from_string(protocol, fixed_delta), Backends::from_string(backends), o);
        py::list rows;
        for (const auto& r : table.rows) {
          py::dict d;
          d["gamma_tip"] = r.gamma_tip;
          d["delta_used"] = r.delta_used;
          d["failed"] = r.failed();
          if (r.analytic) d["analytic"] = point_dict(*r.analytic);
          if (r.lindblad) d["lindblad"] = point_dict(*r.lindblad);
          rows.append(d);
        }
        return rows;
      },
      py::arg("params"), py::arg("gamma_tip_grid"), py::arg("protocol") = "track_upper_branch", py::arg("fixed_delta") = 0.0,
      py::arg("backends") = "both", py::arg("threads") = 0u);

  m.def(
      "critical_points",
      [](const SystemParams& p, const std::vector<double>& grid, unsigned threads) {
        SweepOptions o;
        o.threads = threads;
        const auto protocol = DetuningProtocol::track_upper_branch();
        const Backends backends{false, true};
        CriticalPointOptions cp;
        cp.evaluator = make_evaluator(p, protocol, backends, o);
        return critical_points(sweep_loss(p, grid, protocol, backends, o), p, cp).to_json().dump();
      },
      py::arg("params"), py::arg("gamma_tip_grid"), py::arg("threads") = 0u,
      "Critical points along a tracked-detuning loss sweep, as a JSON string");

  m.def(
      "excitation_spectrum",
      [](const SystemParams& p, const std::vector<double>& delta_grid, const std::string& backend) {
        const auto s = excitation_spectrum(p, delta_grid, backend_from_string(backend));
        return py::make_tuple(s.s1, s.peak_positions());
      },
      py::arg("params"), py::arg("delta_grid"), py::arg("backend") = "analytic", "Returns (S1 values, peak detunings)");
}
