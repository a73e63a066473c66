#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fraisse/canonical.hpp"
#include "fraisse/catalog.hpp"
#include "fraisse/class_spec.hpp"
#include "fraisse/encodings.hpp"
#include "fraisse/generic.hpp"
#include "fraisse/hf.hpp"
#include "fraisse/interpretation.hpp"
#include "fraisse/one_sort.hpp"
#include "fraisse/structure_io.hpp"

namespace py = pybind11;
using namespace fraisse;

PYBIND11_MODULE(_core, m) {
  m.doc() = "finite structures, Fraisse classes and interpretation encodings";

  py::class_<Structure>(m, "Structure")
      .def_static("from_text", [](const std::string& text) { return parse_structure(text); },
                  py::arg("text"))
      .def("to_text", [](const Structure& s) { return serialize_structure(s); })
      .def("total_size", &Structure::total_size)
      .def("size", &Structure::size, py::arg("sort"))
      .def("canonical_hex", [](const Structure& s) { return canonical_form(s).hex(); })
      .def("__eq__", [](const Structure& a, const Structure& b) { return a == b; })
      .def("__repr__", [](const Structure& s) {
        return "<Structure sig=" + s.sig.to_literal() + " size=" +
               std::to_string(s.total_size()) + ">";
      });

  py::class_<ClassSpec>(m, "ClassSpec")
      .def_property_readonly("name", [](const ClassSpec& k) { return k.name; })
      .def_property_readonly("signature", [](const ClassSpec& k) { return k.sig.to_literal(); })
      .def("__repr__", [](const ClassSpec& k) { return "<ClassSpec " + k.name + ">"; });

  py::class_<EncodingResult>(m, "Encoding")
      .def_property_readonly("source", [](const EncodingResult& e) { return e.source; })
      .def_property_readonly("target", [](const EncodingResult& e) { return e.target; })
      .def_property_readonly("map", [](const EncodingResult& e) { return e.map; })
      .def_property_readonly("interp_text",
                             [](const EncodingResult& e) { return serialize_interpretation(e.interp); })
      .def("verify", [](const EncodingResult& e) {
        return verify_witness(e.interp, e.source, e.target, e.map);
      });

  m.def("get_class", &get_class, py::arg("name"));
  m.def("catalog_names", &catalog_names);
  m.def("is_member", &is_member, py::arg("cls"), py::arg("structure"));
  m.def("members_of_size", &members_of_size, py::arg("cls"), py::arg("size"));
  m.def("are_isomorphic", &are_isomorphic, py::arg("a"), py::arg("b"));

  m.def("check_axiom",
        [](const ClassSpec& k, const std::string& axiom, int bound) {
          AxiomReport rep = check_axiom(k, parse_axiom(axiom), bound);
          return py::make_tuple(rep.verdict == AxiomReport::Verdict::HoldsUpTo, rep.detail);
        },
        py::arg("cls"), py::arg("axiom"), py::arg("bound"));

  m.def("build_generic",
        [](const ClassSpec& k, int level, int budget) {
          GenericResult res = build_generic(k, level, budget);
          if (res.status != GenericResult::Status::Ok) throw std::runtime_error(res.detail);
          return *res.model;
        },
        py::arg("cls"), py::arg("level"), py::arg("budget") = 64);

  m.def("verify_extension",
        [](const Structure& s, const ClassSpec& k, int level) {
          ExtensionReport rep = verify_extension_property(s, k, level);
          return py::make_tuple(rep.holds, rep.detail);
        },
        py::arg("structure"), py::arg("cls"), py::arg("level"));

  m.def("ramsey_search",
        [](const ClassSpec& k, const Structure& a, const Structure& b, int colors, int bound,
           int budget_bits) -> py::object {
          RamseyResult res = ramsey_witness_search(k, a, b, colors, bound, budget_bits);
          if (res.status == RamseyResult::Status::Found)
            return py::make_tuple("found", *res.c);
          if (res.status == RamseyResult::Status::Absent)
            return py::make_tuple("absent", py::none());
          return py::make_tuple("budget", py::none());
        },
        py::arg("cls"), py::arg("a"), py::arg("b"), py::arg("colors"), py::arg("bound"),
        py::arg("budget_bits") = 24);

  m.def("chain_gap",
        [](int r1, int r2, int mult) {
          ChainGapResult res = chain_gap(r1, r2, mult);
          return py::make_tuple(res.n, res.lhs, res.rhs);
        },
        py::arg("r1"), py::arg("r2"), py::arg("m"));

  m.def("lift_arity", &lift_arity, py::arg("structure"), py::arg("r2"));
  m.def("remove_cliques", &remove_cliques, py::arg("structure"), py::arg("k"));
  m.def("encode_society", &encode_society, py::arg("structure"));
  m.def("code_order",
        [](const std::string& cls, const Structure& b) {
          return code_order(get_class(cls), b, op_witness(cls));
        },
        py::arg("cls"), py::arg("structure"));
  m.def("order_expansion", &order_expansion, py::arg("cls"));
  m.def("product", &product_structure, py::arg("factors"));

  m.def("one_sort_text", [](const Structure& b) { return serialize_one_sort(one_sort_forward(b)); },
        py::arg("structure"));
  m.def("one_sort_round_trip",
        [](const Structure& b) {
          OneSortResult f = one_sort_forward(b);
          return one_sort_back(f.derived, f.original, f.types).original;
        },
        py::arg("structure"));

  m.def("hf_verify",
        [](const Structure& b) {
          HFEncoding enc = hf_encode(b);
          return hf_check(enc);
        },
        py::arg("structure"));
  m.def("hf_strings",
        [](const Structure& b) {
          HFEncoding enc = hf_encode(b);
          std::vector<std::string> out;
          for (const auto& h : enc.encoded) out.push_back(h.to_string());
          return out;
        },
        py::arg("structure"));

  m.def("search_interpretation",
        [](const ClassSpec& k1, const ClassSpec& k2, int width, int max_nodes, int n_max)
            -> py::object {
          InterpSearchResult res = search_interpretation(k1, k2, width, max_nodes, n_max);
          if (res.status == InterpSearchResult::Status::Found)
            return py::make_tuple("found", serialize_interpretation(*res.interp));
          if (res.status == InterpSearchResult::Status::Absent)
            return py::make_tuple("absent", py::none());
          return py::make_tuple("budget", py::none());
        },
        py::arg("from_cls"), py::arg("to_cls"), py::arg("m"), py::arg("max_nodes"),
        py::arg("n_max"));
}
