#include "otfsm/optimize.hh"

#include <set>

#include "otfsm/errors.hh"
#include "otfsm/product.hh"

namespace otfsm {

namespace {

// Orders queued states by current harmony, most harmonic first, ids as
// tie break.  Reads the harmony store by reference, so entries must only
// change while their state is out of the set.
struct QueueOrder {
  const std::vector<std::optional<MarkVector>>* harmony;
  CompareCounter* counter;

  bool operator()(StateId x, StateId y) const {
    Ordering o = mv_compare(*(*harmony)[x], *(*harmony)[y], counter);
    if (o != Ordering::Equal) return o == Ordering::Greater;
    return x < y;
  }
};

}  // namespace

HarmonyAnnotation label_nodes(const Machine& machine) {
  HarmonyAnnotation ann;
  ann.harmony.resize(machine.num_states());

  CompareCounter counter;
  QueueOrder order{&ann.harmony, &counter};
  std::set<StateId, QueueOrder> queue(order);
  std::vector<std::set<StateId, QueueOrder>::iterator> handle(
      machine.num_states());
  std::vector<bool> queued(machine.num_states(), false);
  std::vector<bool> settled(machine.num_states(), false);

  ann.harmony[machine.initial()] = MarkVector::zeros(machine.degree());
  handle[machine.initial()] = queue.insert(machine.initial()).first;
  queued[machine.initial()] = true;

  while (!queue.empty()) {
    StateId u = *queue.begin();
    queue.erase(queue.begin());
    queued[u] = false;
    settled[u] = true;
    ++ann.expansions;

    for (std::uint32_t ai : machine.arcs_from(u)) {
      const Arc& arc = machine.arcs()[ai];
      StateId v = arc.dst;
      if (settled[v]) continue;
      MarkVector candidate = mv_add(*ann.harmony[u], arc.marks);
      if (ann.harmony[v] &&
          mv_compare(candidate, *ann.harmony[v], &counter) !=
              Ordering::Greater)
        continue;
      // Decrease-key: drop the stale entry by iterator (no comparisons),
      // rewrite the harmony, reinsert.
      if (queued[v]) queue.erase(handle[v]);
      ann.harmony[v] = std::move(candidate);
      handle[v] = queue.insert(v).first;
      queued[v] = true;
    }
  }

  ann.comparisons = counter.count;
  return ann;
}

Machine prune(const Machine& machine, const HarmonyAnnotation& annotation) {
  std::vector<Arc> kept;
  for (const Arc& arc : machine.arcs()) {
    const auto& hs = annotation.harmony[arc.src];
    const auto& hd = annotation.harmony[arc.dst];
    if (hs && hd &&
        mv_compare(mv_add(*hs, arc.marks), *hd) == Ordering::Less)
      continue;
    kept.push_back(arc);
  }
  return Machine(machine.degree(), machine.alphabet(), machine.num_states(),
                 machine.initial(), machine.final_state(), std::move(kept));
}

DeriveResult derive(const Machine& gen,
                    const std::vector<Machine>& constraints) {
  if (gen.degree() != 0)
    throw DegreeMismatchError("candidate machine must be an automaton");
  for (const Machine& c : constraints)
    if (c.degree() == 0)
      throw DegreeMismatchError("constraints must carry marks (degree >= 1)");

  Machine surface = trim(gen);
  for (const Machine& c : constraints)
    surface = augmented_product(surface, c);

  HarmonyAnnotation ann = label_nodes(surface);
  const auto& best = ann.harmony[surface.final_state()];
  if (!best)
    throw EmptySurfaceError("no surface form: the candidate set is empty");

  Machine winners = trim(prune(surface, ann));

  DeriveResult result{std::move(winners), *best, ann.comparisons,
                      surface.num_states(), surface.arcs().size(), 0, 0};
  result.pruned_states = result.machine.num_states();
  result.pruned_arcs = result.machine.arcs().size();
  return result;
}

Machine precompile(const std::vector<Machine>& constraints) {
  if (constraints.empty())
    throw InvariantError("precompile needs at least one constraint");
  Machine folded = constraints.front();
  for (std::size_t i = 1; i < constraints.size(); ++i)
    folded = augmented_product(folded, constraints[i]);
  return folded;
}

SequentialResult derive_sequential(const Machine& gen,
                                   const std::vector<Machine>& constraints) {
  SequentialResult result{trim(gen), {}, 0};
  for (const Machine& c : constraints) {
    DeriveResult stage = derive(result.machine, {c});
    result.machine = strip_marks(stage.machine);
    result.stage_harmonies.push_back(std::move(stage.harmony));
    result.comparisons += stage.comparisons;
  }
  return result;
}

}  // namespace otfsm
