#include "otfsm/dot.hh"

#include <ostream>
#include <sstream>

namespace otfsm {

namespace {

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

}  // namespace

void export_dot(std::ostream& out, const Machine& machine,
                const std::string& graph_name) {
  out << "digraph \"" << escape(graph_name) << "\" {\n";
  out << "  rankdir=LR;\n";
  out << "  node [fontname=\"Helvetica\"];\n";
  out << "  edge [fontname=\"Helvetica\"];\n";
  for (StateId s = 0; s < machine.num_states(); ++s) {
    out << "  q" << s << " [label=\"" << s << "\", shape="
        << (s == machine.final_state() ? "doublecircle" : "circle");
    if (s == machine.initial()) out << ", style=bold";
    out << "];\n";
  }
  for (const Arc& a : machine.arcs()) {
    std::string label = escape(label_text(a.label, *machine.alphabet()));
    if (machine.degree() > 0) label += "\\n" + mv_text(a.marks);
    out << "  q" << a.src << " -> q" << a.dst << " [label=\"" << label
        << "\"];\n";
  }
  out << "}\n";
}

std::string dot_text(const Machine& machine, const std::string& graph_name) {
  std::ostringstream out;
  export_dot(out, machine, graph_name);
  return out.str();
}

}  // namespace otfsm
