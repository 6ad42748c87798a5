#include "otfsm/product.hh"

#include <deque>
#include <map>
#include <utility>

#include "otfsm/errors.hh"

namespace otfsm {

namespace {

// Pairs of states reachable from (initial, initial), discovered with a
// worklist; only those pairs become result states.
Machine pair_construction(const Machine& a, const Machine& b) {
  if (!a.alphabet()->same_symbols(*b.alphabet()))
    throw AlphabetMismatchError("product inputs use different alphabets");

  using Pair = std::pair<StateId, StateId>;
  std::map<Pair, StateId> ids;
  std::deque<Pair> worklist;
  auto id_of = [&](Pair p) {
    auto [it, fresh] = ids.try_emplace(p, static_cast<StateId>(ids.size()));
    if (fresh) worklist.push_back(p);
    return it->second;
  };

  std::vector<Arc> arcs;
  StateId start = id_of({a.initial(), b.initial()});
  (void)start;
  while (!worklist.empty()) {
    Pair p = worklist.front();
    worklist.pop_front();
    StateId src = ids.at(p);
    for (std::uint32_t ai : a.arcs_from(p.first)) {
      const Arc& arc_a = a.arcs()[ai];
      for (std::uint32_t bi : b.arcs_from(p.second)) {
        const Arc& arc_b = b.arcs()[bi];
        Label shared = intersect(arc_a.label, arc_b.label);
        if (shared.empty()) continue;
        StateId dst = id_of({arc_a.dst, arc_b.dst});
        arcs.push_back(Arc{src, dst, std::move(shared),
                           mv_concat(arc_a.marks, arc_b.marks)});
      }
    }
  }

  auto final_it = ids.find({a.final_state(), b.final_state()});
  StateId num_states = static_cast<StateId>(ids.size());
  StateId final_id;
  if (final_it != ids.end()) {
    final_id = final_it->second;
  } else {
    final_id = num_states++;  // unreachable; trim collapses to the empty machine
  }
  Machine raw(a.degree() + b.degree(), a.alphabet(), num_states, 0, final_id,
              std::move(arcs));
  return trim(raw);
}

}  // namespace

Machine product(const Machine& a, const Machine& b) {
  if (a.degree() != 0 || b.degree() != 0)
    throw DegreeMismatchError("plain product expects automata (degree 0)");
  return pair_construction(a, b);
}

Machine augmented_product(const Machine& a, const Machine& b) {
  return pair_construction(a, b);
}

}  // namespace otfsm
