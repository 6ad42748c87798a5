// pymodule.cc - the otfsm._core extension module
//
// Exposes machines and the main operations with pythonic spellings:
// strings in and out are lists of symbol tokens, harmony vectors are
// lists of ints, and errors surface as ValueError.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "otfsm/constraints.hh"
#include "otfsm/dot.hh"
#include "otfsm/errors.hh"
#include "otfsm/harmony.hh"
#include "otfsm/machine_io.hh"
#include "otfsm/optimize.hh"
#include "otfsm/oracle.hh"
#include "otfsm/product.hh"

namespace py = pybind11;
using namespace otfsm;

namespace {

std::vector<SymbolId> to_ids(const Machine& m,
                             const std::vector<std::string>& tokens) {
  return parse_symbols(*m.alphabet(), tokens);
}

std::vector<std::vector<std::string>> to_token_lists(
    const Machine& m, const std::vector<std::vector<SymbolId>>& strings) {
  std::vector<std::vector<std::string>> out;
  out.reserve(strings.size());
  for (const auto& s : strings) out.push_back(symbol_tokens(*m.alphabet(), s));
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
  mod.doc() = "finite-state optimality engine";

  py::register_exception<Error>(mod, "EngineError", PyExc_ValueError);

  py::class_<Machine>(mod, "Machine")
      .def_property_readonly("degree", &Machine::degree)
      .def_property_readonly("num_states", &Machine::num_states)
      .def_property_readonly("num_arcs",
                             [](const Machine& m) { return m.arcs().size(); })
      .def_property_readonly("initial", &Machine::initial)
      .def_property_readonly("final", &Machine::final_state)
      .def_property_readonly(
          "alphabet",
          [](const Machine& m) { return m.alphabet()->tokens(); })
      .def("accepts",
           [](const Machine& m, const std::vector<std::string>& tokens) {
             return accepts(m, to_ids(m, tokens));
           },
           py::arg("tokens"))
      .def("evaluate",
           [](const Machine& m, const std::vector<std::string>& tokens) {
             return evaluate(m, to_ids(m, tokens)).entries();
           },
           py::arg("tokens"))
      .def("enumerate",
           [](const Machine& m, std::size_t max_len, std::size_t max_count) {
             LanguageSample s = enumerate_language(m, max_len, max_count);
             return py::make_tuple(to_token_lists(m, s.strings), s.truncated);
           },
           py::arg("max_len"), py::arg("max_count") = 100000,
           "returns (list of token lists, truncated)")
      .def("save",
           [](const Machine& m, const std::string& path) {
             save_machine_file(path, m);
           },
           py::arg("path"))
      .def("text", [](const Machine& m) { return machine_text(m); })
      .def("dot", [](const Machine& m) { return dot_text(m); })
      .def("__repr__", [](const Machine& m) {
        std::ostringstream out;
        out << "<Machine degree=" << m.degree() << " states=" << m.num_states()
            << " arcs=" << m.arcs().size() << ">";
        return out.str();
      });

  mod.def("load_machine", &load_machine_file, py::arg("path"));
  mod.def(
      "gen_syllabification",
      [](const std::vector<std::string>& segments,
         const std::vector<std::string>& vowels) {
        return build_gen_syllabification(segments, vowels);
      },
      py::arg("segments"), py::arg("vowels"));
  mod.def(
      "constraint_fill",
      [](const Machine& alphabet_of) {
        return build_fill(alphabet_of.alphabet());
      },
      py::arg("alphabet_of"), "FILL over the machine's alphabet");
  mod.def(
      "constraint_ons",
      [](const Machine& alphabet_of) {
        return build_ons(alphabet_of.alphabet());
      },
      py::arg("alphabet_of"), "ONS over the machine's alphabet");
  mod.def(
      "constraint_nointervening",
      [](const Machine& alphabet_of, const std::string& target,
         const std::string& edge) {
        Edge e;
        if (edge == "left") e = Edge::Left;
        else if (edge == "right") e = Edge::Right;
        else throw FormatError("edge must be 'left' or 'right'");
        return build_nointervening(
            alphabet_of.alphabet(),
            parse_label(target, *alphabet_of.alphabet()), e);
      },
      py::arg("alphabet_of"), py::arg("target"), py::arg("edge") = "left");
  mod.def(
      "compile_expr",
      [](const std::string& expr, const Machine& alphabet_of) {
        return compile_expr(expr, alphabet_of.alphabet());
      },
      py::arg("expr"), py::arg("alphabet_of"));

  mod.def("product", &product, py::arg("a"), py::arg("b"));
  mod.def("augmented_product", &augmented_product, py::arg("a"), py::arg("b"));
  mod.def("precompile", &precompile, py::arg("constraints"));

  mod.def(
      "derive",
      [](const Machine& gen, const std::vector<Machine>& constraints) {
        DeriveResult d = derive(gen, constraints);
        py::dict out;
        out["machine"] = d.machine;
        out["harmony"] = d.harmony.entries();
        out["comparisons"] = d.comparisons;
        out["surface_states"] = d.surface_states;
        out["surface_arcs"] = d.surface_arcs;
        out["pruned_states"] = d.pruned_states;
        out["pruned_arcs"] = d.pruned_arcs;
        return out;
      },
      py::arg("gen"), py::arg("constraints"),
      "optimal surface forms under the ranked constraints");

  mod.def(
      "compare_mark_lists",
      [](const std::vector<std::string>& alphabet,
         const std::vector<std::string>& a,
         const std::vector<std::string>& b) {
        auto marks = std::make_shared<const MarkAlphabet>(alphabet);
        Ordering o = list_compare(MarkList::from_tokens(marks, a),
                                  MarkList::from_tokens(marks, b));
        return o == Ordering::Greater ? 1 : o == Ordering::Less ? -1 : 0;
      },
      py::arg("alphabet"), py::arg("a"), py::arg("b"),
      "1 if a is more harmonic, -1 if less, 0 if equal");

  mod.def(
      "oracle_check",
      [](const Machine& gen, const std::vector<Machine>& constraints,
         std::size_t max_len) {
        EquivalenceReport eq = check_equivalence(gen, constraints, max_len);
        return py::make_tuple(eq.match, eq.detail);
      },
      py::arg("gen"), py::arg("constraints"), py::arg("max_len") = 16,
      "returns (match, detail)");
}
