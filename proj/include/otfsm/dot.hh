// dot.hh - Graphviz rendering of machines
#pragma once

#include <iosfwd>
#include <string>

#include "otfsm/machine.hh"

namespace otfsm {

// Writes a deterministic dot digraph: one node statement per state (the
// initial state bold, the final state doublecircle) and one edge
// statement per arc, labeled with the symbol set and, on weighted
// machines, the mark vector.
void export_dot(std::ostream& out, const Machine& machine,
                const std::string& graph_name = "machine");
std::string dot_text(const Machine& machine,
                     const std::string& graph_name = "machine");

}  // namespace otfsm
