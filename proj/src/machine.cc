// machine.cc
#include "otfsm/machine.hh"

#include <algorithm>
#include <deque>

#include "otfsm/errors.hh"

namespace otfsm {

Machine::Machine(std::uint32_t degree, AlphabetRef alphabet,
                 StateId num_states, StateId initial, StateId final_state,
                 std::vector<Arc> arcs)
    : degree_(degree),
      alphabet_(std::move(alphabet)),
      num_states_(num_states),
      initial_(initial),
      final_(final_state),
      arcs_(std::move(arcs)) {
  if (!alphabet_) throw InvariantError("machine needs an alphabet");
  if (num_states_ == 0) throw InvariantError("machine needs at least one state");
  if (initial_ >= num_states_ || final_ >= num_states_)
    throw InvariantError("initial/final state id out of range");
  out_arcs_.resize(num_states_);
  for (std::uint32_t i = 0; i < arcs_.size(); ++i) {
    const Arc& a = arcs_[i];
    if (a.src >= num_states_ || a.dst >= num_states_)
      throw InvariantError("arc endpoint is not a declared state");
    if (a.label.empty()) throw InvariantError("arc label is empty");
    for (SymbolId s : a.label.symbols)
      if (s >= alphabet_->size())
        throw InvariantError("arc symbol is not in the alphabet");
    if (a.marks.degree() != degree_)
      throw InvariantError("arc mark vector degree " +
                           std::to_string(a.marks.degree()) +
                           " does not match machine degree " +
                           std::to_string(degree_));
    for (std::int32_t e : a.marks.entries())
      if (e > 0)
        throw PositiveMarkError("arc mark entries must be non-positive");
    out_arcs_[a.src].push_back(i);
  }
}

MachineDraft Machine::as_draft() const {
  return MachineDraft{degree_, alphabet_, num_states_,
                      {initial_}, {final_},  arcs_};
}

namespace {

std::vector<bool> reachable_forward(StateId num_states,
                                    const std::vector<Arc>& arcs,
                                    const std::vector<StateId>& sources) {
  std::vector<std::vector<StateId>> succ(num_states);
  for (const Arc& a : arcs) succ[a.src].push_back(a.dst);
  std::vector<bool> seen(num_states, false);
  std::deque<StateId> queue;
  for (StateId s : sources)
    if (!seen[s]) {
      seen[s] = true;
      queue.push_back(s);
    }
  while (!queue.empty()) {
    StateId s = queue.front();
    queue.pop_front();
    for (StateId t : succ[s])
      if (!seen[t]) {
        seen[t] = true;
        queue.push_back(t);
      }
  }
  return seen;
}

std::vector<bool> reachable_backward(StateId num_states,
                                     const std::vector<Arc>& arcs,
                                     const std::vector<StateId>& sinks) {
  std::vector<Arc> reversed;
  reversed.reserve(arcs.size());
  for (const Arc& a : arcs) reversed.push_back(Arc{a.dst, a.src, a.label, a.marks});
  return reachable_forward(num_states, reversed, sinks);
}

// Canonical empty-language machine over the given alphabet and degree.
Machine empty_machine(std::uint32_t degree, AlphabetRef alphabet) {
  return Machine(degree, std::move(alphabet), 2, 0, 1, {});
}

// Keeps exactly the states marked useful, renumbered densely in increasing
// old-id order; arc order is preserved.
Machine restrict_to(const Machine& machine, const std::vector<bool>& useful) {
  std::vector<StateId> remap(machine.num_states(), 0);
  StateId next = 0;
  for (StateId s = 0; s < machine.num_states(); ++s)
    if (useful[s]) remap[s] = next++;
  std::vector<Arc> arcs;
  for (const Arc& a : machine.arcs())
    if (useful[a.src] && useful[a.dst])
      arcs.push_back(Arc{remap[a.src], remap[a.dst], a.label, a.marks});
  return Machine(machine.degree(), machine.alphabet(), next,
                 remap[machine.initial()], remap[machine.final_state()],
                 std::move(arcs));
}

}  // namespace

Machine merge_terminals(const MachineDraft& draft) {
  if (!draft.alphabet) throw InvariantError("draft needs an alphabet");
  if (draft.num_states == 0 ||
      (draft.initials.empty() && draft.finals.empty() && draft.arcs.empty()))
    return empty_machine(draft.degree, draft.alphabet);
  if (draft.initials.empty() || draft.finals.empty())
    return empty_machine(draft.degree, draft.alphabet);

  if (draft.initials.size() == 1 && draft.finals.size() == 1) {
    // Already in normal form; keep the structure exactly.
    return Machine(draft.degree, draft.alphabet, draft.num_states,
                   draft.initials[0], draft.finals[0], draft.arcs);
  }

  // Fresh terminal states with copied arcs; identifying the declared
  // terminals directly could splice unrelated paths together.
  std::vector<bool> is_initial(draft.num_states, false);
  std::vector<bool> is_final(draft.num_states, false);
  for (StateId s : draft.initials) is_initial.at(s) = true;
  for (StateId s : draft.finals) is_final.at(s) = true;

  StateId fresh_i = draft.num_states;
  StateId fresh_f = draft.num_states + 1;
  std::vector<Arc> arcs = draft.arcs;
  for (const Arc& a : draft.arcs) {
    if (is_initial[a.src]) arcs.push_back(Arc{fresh_i, a.dst, a.label, a.marks});
    if (is_final[a.dst]) arcs.push_back(Arc{a.src, fresh_f, a.label, a.marks});
    if (is_initial[a.src] && is_final[a.dst])
      arcs.push_back(Arc{fresh_i, fresh_f, a.label, a.marks});
  }
  Machine merged(draft.degree, draft.alphabet, draft.num_states + 2, fresh_i,
                 fresh_f, std::move(arcs));
  return trim(merged);
}

Machine trim(const Machine& machine) {
  std::vector<bool> fwd = reachable_forward(machine.num_states(),
                                            machine.arcs(), {machine.initial()});
  std::vector<bool> bwd = reachable_backward(
      machine.num_states(), machine.arcs(), {machine.final_state()});
  if (!fwd[machine.final_state()])
    return empty_machine(machine.degree(), machine.alphabet());
  std::vector<bool> useful(machine.num_states(), false);
  for (StateId s = 0; s < machine.num_states(); ++s)
    useful[s] = fwd[s] && bwd[s];
  return restrict_to(machine, useful);
}

bool has_accepting_path(const Machine& machine) {
  return reachable_forward(machine.num_states(), machine.arcs(),
                           {machine.initial()})[machine.final_state()];
}

bool accepts(const Machine& machine, const std::vector<SymbolId>& input) {
  for (SymbolId s : input)
    if (s >= machine.alphabet()->size())
      throw UnknownSymbolError("input symbol id out of range");
  std::vector<bool> now(machine.num_states(), false);
  now[machine.initial()] = true;
  for (SymbolId sym : input) {
    std::vector<bool> next(machine.num_states(), false);
    for (const Arc& a : machine.arcs())
      if (now[a.src] && a.label.contains(sym)) next[a.dst] = true;
    now.swap(next);
  }
  return now[machine.final_state()];
}

bool accepts(const Machine& machine, const std::vector<std::string>& tokens) {
  return accepts(machine, parse_symbols(*machine.alphabet(), tokens));
}

MarkVector evaluate(const Machine& machine,
                    const std::vector<SymbolId>& input) {
  for (SymbolId s : input)
    if (s >= machine.alphabet()->size())
      throw UnknownSymbolError("input symbol id out of range");
  // Viterbi over prefix positions; exact because harmony addition is
  // monotone with respect to the lexicographic order.
  std::vector<std::optional<MarkVector>> now(machine.num_states());
  now[machine.initial()] = MarkVector::zeros(machine.degree());
  for (SymbolId sym : input) {
    std::vector<std::optional<MarkVector>> next(machine.num_states());
    for (const Arc& a : machine.arcs()) {
      if (!now[a.src] || !a.label.contains(sym)) continue;
      MarkVector cand = mv_add(*now[a.src], a.marks);
      if (!next[a.dst] ||
          mv_compare(cand, *next[a.dst]) == Ordering::Greater)
        next[a.dst] = std::move(cand);
    }
    now.swap(next);
  }
  if (!now[machine.final_state()])
    throw NotAcceptedError("machine does not accept the input");
  return *now[machine.final_state()];
}

MarkVector evaluate(const Machine& machine,
                    const std::vector<std::string>& tokens) {
  return evaluate(machine, parse_symbols(*machine.alphabet(), tokens));
}

Machine strip_marks(const Machine& machine) {
  std::vector<Arc> arcs;
  arcs.reserve(machine.arcs().size());
  for (const Arc& a : machine.arcs())
    arcs.push_back(Arc{a.src, a.dst, a.label, MarkVector()});
  return Machine(0, machine.alphabet(), machine.num_states(),
                 machine.initial(), machine.final_state(), std::move(arcs));
}

std::vector<SymbolId> parse_symbols(const Alphabet& alphabet,
                                    const std::vector<std::string>& tokens) {
  std::vector<SymbolId> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(alphabet.id_of(t));
  return out;
}

std::vector<std::string> symbol_tokens(const Alphabet& alphabet,
                                       const std::vector<SymbolId>& ids) {
  std::vector<std::string> out;
  out.reserve(ids.size());
  for (SymbolId s : ids) out.push_back(alphabet.token(s));
  return out;
}

bool same_structure(const Machine& a, const Machine& b) {
  return a.degree() == b.degree() &&
         a.alphabet()->same_symbols(*b.alphabet()) &&
         a.num_states() == b.num_states() && a.initial() == b.initial() &&
         a.final_state() == b.final_state() && a.arcs() == b.arcs();
}

}  // namespace otfsm
