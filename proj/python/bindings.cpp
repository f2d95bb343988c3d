#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "txinfer/cli.hpp"
#include "txinfer/emitter.hpp"
#include "txinfer/frontend.hpp"
#include "txinfer/pipeline.hpp"

namespace py = pybind11;
using namespace txinfer;

// Holds syntax trees with unique_ptr children; std::vector hides that.
template <>
struct pybind11::detail::is_copy_constructible<UnitResult> : std::false_type {};

namespace {

py::dict class_dict(const ClassResult& cr) {
  py::dict d;
  d["name"] = cr.name;
  d["unifiers"] = cr.unifiers.size();
  d["typings"] = cr.typings.size();
  py::dict methods;
  for (const auto& sig : cr.signatures) {
    py::list ts;
    for (const auto& t : sig.typings) ts.append(typing_to_string(t));
    methods[py::str(sig.method + "#" + std::to_string(sig.index))] = ts;
  }
  d["methods"] = methods;
  return d;
}

}  // namespace

PYBIND11_MODULE(_txinfer, m) {
  m.doc() = "Global type inference for untyped Java-like classes";

  static py::exception<CompileError> compile_error(m, "CompileError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const CompileError& e) {
      py::object err = py::reinterpret_borrow<py::object>(compile_error.ptr())(e.what());
      err.attr("kind") = std::string(error_kind_name(e.kind()));
      err.attr("line") = e.pos().line;
      err.attr("column") = e.pos().column;
      err.attr("front_end") = is_front_end_error(e.kind());
      PyErr_SetObject(compile_error.ptr(), err.ptr());
    }
  });

  py::class_<UnitResult>(m, "Unit")
      .def_property_readonly("classes",
                             [](const UnitResult& u) {
                               py::list out;
                               for (const auto& c : u.classes) out.append(class_dict(c));
                               return out;
                             })
      .def("typed_source", &emit_typed_source)
      .def("signatures", &emit_signatures)
      .def("descriptors", &emit_descriptors)
      .def("funifaces", &emit_funifaces)
      .def("constraints", &dump_constraints)
      .def("unifiers", [](const UnitResult& u) { return dump_unifiers(u); })
      .def("generics", &dump_generics);

  m.def(
      "infer", [](const std::string& source) { return std::make_unique<UnitResult>(infer_source(source)); }, py::arg("source"),
      "Infers every class of a compilation unit.");
  m.def(
      "parse_and_print", [](const std::string& source) { return print_program(parse(source)); },
      py::arg("source"), "Parses and pretty-prints a unit without typing it.");
  m.def(
      "run",
      [](std::vector<std::string> args) {
        args.insert(args.begin(), "tx-infer");
        std::vector<const char*> argv;
        for (const auto& a : args) argv.push_back(a.c_str());
        std::ostringstream out, err;
        int status;
        {
          py::gil_scoped_release release;
          status = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
        }
        return py::make_tuple(status, out.str(), err.str());
      },
      py::arg("args"), "Runs the command line driver; returns (status, stdout, stderr).");
}
