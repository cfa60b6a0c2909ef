#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sseq/bodies.hpp"
#include "sseq/cli.hpp"
#include "sseq/errors.hpp"
#include "sseq/instance.hpp"
#include "sseq/milnor.hpp"
#include "sseq/report.hpp"

namespace py = pybind11;

namespace {

sseq::Instance make_gersten(const std::string& space, long q, int n, int bound, bool mod2,
                            int threads) {
  sseq::LineSpace sp;
  if (space == "P1")
    sp = sseq::LineSpace::projective;
  else if (space == "A1")
    sp = sseq::LineSpace::affine;
  else
    throw sseq::invalid_error("gersten: space must be P1 or A1");
  sseq::FilteredComplex f = sseq::gersten_filtered(sp, q, n, bound, mod2, !mod2, threads);
  return sseq::Instance{"1", sseq::InstanceMetadata{}, std::move(f), std::nullopt};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "exact spectral sequences, obstruction towers, and symbol calculus";

  // the library throws one tagged exception type; the tags become the same
  // python types a caller would raise for those situations
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const sseq::error& e) {
      switch (e.which()) {
        case sseq::error::kind::unsupported:
          PyErr_SetString(PyExc_NotImplementedError, e.what());
          break;
        case sseq::error::kind::internal:
          PyErr_SetString(PyExc_RuntimeError, e.what());
          break;
        default:
          PyErr_SetString(PyExc_ValueError, e.what());
      }
    }
  });

  py::class_<sseq::Instance>(m, "Instance",
                             "a filtered complex with optional declared bounds and an optional "
                             "secondary block; parse/serialize round-trip byte for byte")
      .def_static("parse", &sseq::parse_instance, py::arg("text"))
      .def_static("read", &sseq::read_instance_file, py::arg("path"))
      .def_static("fixture", &sseq::fixture_instance, py::arg("name"),
                  "named shipped instance: z4, killing, sl3, or secondary")
      .def("serialize", &sseq::serialize_instance)
      .def("write", &sseq::write_instance_file, py::arg("path"))
      .def("digest",
           [](const sseq::Instance& i) { return sseq::fnv1a64_hex(sseq::serialize_instance(i)); })
      .def_property_readonly("dimension", [](const sseq::Instance& i) { return i.metadata.d; })
      .def_property_readonly("declared_stages",
                             [](const sseq::Instance& i) { return i.metadata.s; })
      .def_property_readonly("twist", [](const sseq::Instance& i) { return i.metadata.twist; })
      .def_property_readonly("has_secondary",
                             [](const sseq::Instance& i) { return bool(i.secondary); })
      .def_property_readonly("degrees",
                             [](const sseq::Instance& i) {
                               const auto& c = i.filtration.complex();
                               return py::make_tuple(c.lo(), c.hi());
                             })
      .def_property_readonly("levels",
                             [](const sseq::Instance& i) {
                               return py::make_tuple(i.filtration.p_min(), i.filtration.p_max());
                             })
      .def(py::self == py::self)
      .def("__repr__", [](const sseq::Instance& i) {
        const auto& c = i.filtration.complex();
        std::ostringstream s;
        s << "<sseq.Instance degrees [" << c.lo() << ", " << c.hi() << "], levels ("
          << i.filtration.p_min() << ", " << i.filtration.p_max() << "]"
          << (i.secondary ? ", secondary block" : "") << ">";
        return s.str();
      });

  m.def("validate_json", &sseq::validate_body, py::arg("instance"));
  m.def("pages_json", &sseq::pages_body, py::arg("instance"), py::arg("r_max") = 3,
        py::arg("threads") = 1);
  m.def(
      "tower_json",
      [](const sseq::Instance& ins, const std::vector<long>& cls, std::optional<int> degree) {
        return sseq::tower_body(ins, degree, cls);
      },
      py::arg("instance"), py::arg("cls"), py::arg("degree") = py::none());
  m.def("secondary_json", &sseq::secondary_body, py::arg("instance"));
  m.def("sq2_json", &sseq::sq2_body, py::arg("ring"), py::arg("twist"), py::arg("cls"));

  m.def("gersten", &make_gersten, py::arg("space"), py::arg("q"), py::arg("n"), py::arg("bound"),
        py::arg("mod2") = false, py::arg("threads") = 1,
        "Gersten instance for the line: P1 or A1, constants of odd order q, symbol weight n, "
        "places of degree <= bound");

  m.def(
      "run",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int rc = sseq::run_cli(args, out, err);
        return py::make_tuple(rc, out.str(), err.str());
      },
      py::arg("args"), "run the command line with captured streams; returns (code, out, err)");
}
