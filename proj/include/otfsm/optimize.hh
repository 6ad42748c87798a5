// optimize.hh - best-harmony labeling, arc pruning and derivation
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "otfsm/machine.hh"

namespace otfsm {

// Per-state best harmony: the most harmonic mark vector over all paths
// from the initial state.  Unreachable states stay unset.  `comparisons`
// counts every mv_compare the labeling performed, including those issued
// by the priority structure; `expansions` counts states settled.
struct HarmonyAnnotation {
  std::vector<std::optional<MarkVector>> harmony;
  std::uint64_t comparisons = 0;
  std::uint64_t expansions = 0;

  const std::optional<MarkVector>& at(StateId s) const { return harmony[s]; }
};

// Settles states most-harmonic-first (a max-first shortest-path sweep;
// exact because marks are non-positive, so extending a path never makes
// it more harmonic).  Each state is expanded at most once, which also
// terminates machines with zero-mark cycles.
HarmonyAnnotation label_nodes(const Machine& machine);

// Removes exactly the arcs that cannot lie on a best path: those where
// harmony(src) + marks is less harmonic than harmony(dst).  Arcs with an
// unlabeled endpoint are unreachable and survive untouched; trim disposes
// of them.  State numbering is unchanged.
Machine prune(const Machine& machine, const HarmonyAnnotation& annotation);

struct DeriveResult {
  Machine machine;          // optimal surface forms, pruned and trimmed
  MarkVector harmony;       // harmony of the winners
  std::uint64_t comparisons = 0;
  StateId surface_states = 0;      // candidate machine, after the products
  std::size_t surface_arcs = 0;
  StateId pruned_states = 0;       // final machine
  std::size_t pruned_arcs = 0;
};

// Full derivation: fold the constraint hierarchy (most dominant first)
// into the candidate automaton with augmented products, label, prune,
// trim.  gen must be an automaton; every constraint must be weighted.
// Throws EmptySurfaceError when the candidate set is empty.
DeriveResult derive(const Machine& gen, const std::vector<Machine>& constraints);

// Left-fold of a non-empty hierarchy into one transducer whose degree is
// the sum of the parts; derive(gen, {precompile(cs)}) picks the same
// winners as derive(gen, cs).
Machine precompile(const std::vector<Machine>& constraints);

struct SequentialResult {
  Machine machine;                     // winners as a plain automaton
  std::vector<MarkVector> stage_harmonies;
  std::uint64_t comparisons = 0;
};

// Applies the hierarchy one constraint at a time, feeding each stage's
// stripped winner machine to the next.  Equivalent to the one-shot
// derivation: same winner language, and the stage harmonies concatenate
// to the one-shot harmony vector.
SequentialResult derive_sequential(const Machine& gen,
                                   const std::vector<Machine>& constraints);

}  // namespace otfsm
