#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "modelmult/clark.hpp"
#include "modelmult/cli.hpp"
#include "modelmult/errors.hpp"
#include "modelmult/fixtures.hpp"
#include "modelmult/halfplane.hpp"
#include "modelmult/inner.hpp"
#include "modelmult/modelspace.hpp"
#include "modelmult/multiplier.hpp"

namespace py = pybind11;
using namespace modelmult;

namespace {

py::object to_py(const nlohmann::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

nlohmann::json from_py(const py::object& o) {
  return nlohmann::json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Multipliers between model spaces";

  auto base = py::register_exception<Error>(m, "ModelMultError");
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<DescriptorError>(m, "DescriptorError", base.ptr());
  py::register_exception<NotImplementedError>(m, "NotImplementedModelError", base.ptr());
  py::register_exception<PartialResultError>(m, "PartialResultError", base.ptr());
  py::register_exception<IllConditionedError>(m, "IllConditionedError", base.ptr());

  py::class_<InnerFunction>(m, "InnerFunction")
      .def_static("finite_blaschke", &InnerFunction::finite_blaschke, py::arg("zeros"))
      .def_static("atomic_singular",
                  [](const std::vector<std::pair<double, double>>& atoms) {
                    std::vector<Atom> a;
                    for (const auto& [t, w] : atoms) a.push_back({t, w});
                    return InnerFunction::atomic_singular(a);
                  },
                  py::arg("atoms"), "atoms as (angle_turns, weight) pairs")
      .def_static("from_json", [](const py::object& d) { return InnerFunction::from_json(from_py(d)); })
      .def_static("product", py::overload_cast<const InnerFunction&, const InnerFunction&>(&InnerFunction::product))
      .def("__call__", [](const InnerFunction& u, cplx z) { return u(z); })
      .def("eval",
           [](const InnerFunction& u, cplx z, double target) {
             const Certified c = u.eval(z, target);
             return py::make_tuple(c.value, c.error);
           },
           py::arg("z"), py::arg("target") = 1e-8)
      .def("degree", &InnerFunction::degree)
      .def("finite_zeros", &InnerFunction::finite_zeros)
      .def("to_json", [](const InnerFunction& u) { return to_py(u.to_json()); })
      .def("boundary_spectrum", [](const InnerFunction& u) { return to_py(to_json(u.boundary_spectrum())); })
      .def_property_readonly("tag", &InnerFunction::tag);

  m.def("frostman_shift", &frostman_shift, py::arg("u"), py::arg("a"));
  m.def("kernel_norm_sq", &kernel_norm_sq, py::arg("u"), py::arg("lam"));
  m.def("kernel_norm_sq_quadrature", &kernel_norm_sq_quadrature, py::arg("u"), py::arg("lam"));
  m.def("multiplier_basis",
        [](const std::vector<cplx>& uz, const std::vector<cplx>& vz) { return to_py(to_json(multiplier_basis(uz, vz))); },
        py::arg("u_zeros"), py::arg("v_zeros"));
  m.def("toeplitz_kernel_dim",
        [](const std::vector<cplx>& uz, const std::vector<cplx>& vz, double tol) {
          return to_py(to_json(toeplitz_kernel_dim(uz, vz, tol)));
        },
        py::arg("u_zeros"), py::arg("v_zeros"), py::arg("tol") = kDefaultNullspaceTolerance);
  m.def("clark_measure", [](const InnerFunction& u, int k) { return to_py(to_json(clark_measure(u, k))); },
        py::arg("u"), py::arg("truncation") = 200);
  m.def("eval_product",
        [](const std::string& name, cplx z, double delta, double rel_tol) {
          return to_py(to_json(eval_product(CanonicalProduct::from_name(name, delta), z, rel_tol)));
        },
        py::arg("name"), py::arg("z"), py::arg("delta") = 0.1, py::arg("rel_tol") = 1e-9);
  m.def("lyubarskii_seip_ratio",
        [](double delta, const std::vector<double>& xs) { return to_py(to_json(lyubarskii_seip_ratio(delta, xs))); },
        py::arg("delta"), py::arg("xs"));
  m.def("zero_midpoints", &zero_midpoints, py::arg("delta"), py::arg("count"));
  m.def("cayley", &cayley, py::arg("z"));
  m.def("verify_example", [](const std::string& name) { return to_py(run_fixture(name).to_json()); },
        py::arg("name"));
  m.def("fixture_names", &fixture_names);
  m.def("run_cli",
        [](const std::vector<std::string>& args) {
          std::vector<std::string> full{"modelmult"};
          full.insert(full.end(), args.begin(), args.end());
          std::ostringstream out, err;
          const int code = cli::run(full, out, err);
          return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Run the command-line tool in-process; returns (exit_code, stdout, stderr)");
}
