// machine_io.hh - line-oriented machine text format
//
//   # comment
//   degree D
//   alphabet s1 s2 ...
//   class NAME s1 s2 ...
//   initial q
//   final q
//   arc SRC DST LABEL m1 ... mD
//
// LABEL is a symbol token, a class name, or {s1,s2,...} without spaces.
// Several initial/final lines are accepted; the loader merges them down
// to one of each.  State ids may be arbitrary non-negative integers and
// are renumbered densely in order of first appearance.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "otfsm/machine.hh"

namespace otfsm {

Machine load_machine(std::istream& in);
Machine load_machine_file(const std::string& path);

// Canonical form: header comments, degree, alphabet, classes (sorted by
// name, wildcard omitted), initial, final, then arcs in stored order.
void save_machine(std::ostream& out, const Machine& machine,
                  const std::vector<std::string>& header_comments = {});
void save_machine_file(const std::string& path, const Machine& machine,
                       const std::vector<std::string>& header_comments = {});
std::string machine_text(const Machine& machine,
                         const std::vector<std::string>& header_comments = {});

// Resolves a LABEL token against an alphabet: symbol, class name, or
// {s1,s2,...} set syntax.
Label parse_label(const std::string& text, const Alphabet& alphabet);

}  // namespace otfsm
