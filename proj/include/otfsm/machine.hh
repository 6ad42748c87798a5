// machine.hh - the machine representation: a finite-state transducer whose
// arcs carry a symbol set and a fixed-degree harmony vector.  An automaton
// is the degree-0 case.  Machines are immutable values after construction.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "otfsm/alphabet.hh"
#include "otfsm/marks.hh"

namespace otfsm {

using StateId = std::uint32_t;

struct Arc {
  StateId src = 0;
  StateId dst = 0;
  Label label;
  MarkVector marks;

  bool operator==(const Arc&) const = default;
};

// Relaxed construction form: any number of initial and final states.
// Only merge_terminals() and the file loader accept this shape; everything
// else works on Machine, which has exactly one of each.
struct MachineDraft {
  std::uint32_t degree = 0;
  AlphabetRef alphabet;
  StateId num_states = 0;
  std::vector<StateId> initials;
  std::vector<StateId> finals;
  std::vector<Arc> arcs;
};

class Machine {
 public:
  // Validates: endpoints and symbols in range, labels non-empty, mark
  // degree equal to the machine degree, all mark entries non-positive.
  Machine(std::uint32_t degree, AlphabetRef alphabet, StateId num_states,
          StateId initial, StateId final_state, std::vector<Arc> arcs);

  std::uint32_t degree() const { return degree_; }
  const AlphabetRef& alphabet() const { return alphabet_; }
  StateId num_states() const { return num_states_; }
  StateId initial() const { return initial_; }
  StateId final_state() const { return final_; }
  const std::vector<Arc>& arcs() const { return arcs_; }

  // Indices into arcs() of the arcs leaving `state`.
  const std::vector<std::uint32_t>& arcs_from(StateId state) const {
    return out_arcs_.at(state);
  }

  MachineDraft as_draft() const;

 private:
  std::uint32_t degree_;
  AlphabetRef alphabet_;
  StateId num_states_;
  StateId initial_;
  StateId final_;
  std::vector<Arc> arcs_;
  std::vector<std::vector<std::uint32_t>> out_arcs_;
};

// Reduces a draft to a machine with exactly one initial and one final
// state, preserving the accepted language and every string's best harmony
// vector.  A draft already in that form is kept structurally intact;
// otherwise fresh terminal states replace the declared ones and the
// reconstruction is trimmed.  A draft with no terminals yields a
// two-state machine with no arcs.
Machine merge_terminals(const MachineDraft& draft);

// Drops states that are not on any initial-to-final path.  Language and
// per-string best vectors are unchanged.  If no such path exists the
// result is the canonical empty machine: two states, no arcs.
Machine trim(const Machine& machine);

// True iff some initial-to-final path exists (the language is non-empty).
bool has_accepting_path(const Machine& machine);

// True iff some accepting path spells the input, position-wise.
bool accepts(const Machine& machine, const std::vector<SymbolId>& input);
bool accepts(const Machine& machine, const std::vector<std::string>& tokens);

// Best harmony over all accepting paths for the input: the lexicographic
// maximum of summed arc vectors.  Throws NotAcceptedError if no accepting
// path exists.
MarkVector evaluate(const Machine& machine, const std::vector<SymbolId>& input);
MarkVector evaluate(const Machine& machine,
                    const std::vector<std::string>& tokens);

// Degree-0 copy: same states, arcs and labels, marks dropped.
Machine strip_marks(const Machine& machine);

// Token list -> symbol ids against the machine's alphabet.
// Throws UnknownSymbolError.
std::vector<SymbolId> parse_symbols(const Alphabet& alphabet,
                                    const std::vector<std::string>& tokens);
std::vector<std::string> symbol_tokens(const Alphabet& alphabet,
                                       const std::vector<SymbolId>& ids);

// Structural identity: same degree, symbols, state count, terminals and
// arc sequence.  Stricter than language equivalence; used by tests and
// the canonical-save check.
bool same_structure(const Machine& a, const Machine& b);

}  // namespace otfsm
