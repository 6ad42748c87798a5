// oracle.hh - brute-force reference evaluation and randomized checking
//
// The oracle deliberately avoids the product/label/prune pipeline: it
// enumerates candidate strings, scores each one constraint by constraint
// with the path evaluator, and ranks candidates directly.  Agreement
// between this and derive() is the engine's main correctness evidence.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "otfsm/harmony.hh"
#include "otfsm/machine.hh"

namespace otfsm {

struct LanguageSample {
  std::vector<std::vector<SymbolId>> strings;  // sorted, unique
  bool truncated = false;  // cut off by max_len or max_count
};

// All strings of length <= max_len, up to max_count of them.  truncated
// reports whether the full language goes on beyond what was collected.
LanguageSample enumerate_language(const Machine& machine, std::size_t max_len,
                                  std::size_t max_count = 100000);

struct CandidateRecord {
  std::vector<SymbolId> string;
  MarkVector marks;                  // per-constraint scores, concatenated
  std::vector<MarkList> mark_lists;  // the same scores as mark multisets
};

struct OracleVerdict {
  std::vector<CandidateRecord> candidates;
  std::vector<std::size_t> optima;  // indices of the best candidates
  MarkVector best;                  // their shared score
  bool truncated = false;
};

// Scores every candidate of gen (bounded as in enumerate_language) under
// each constraint and keeps the most harmonic ones.  Throws
// EmptySurfaceError when there is no candidate to score.
OracleVerdict brute_force_optima(const Machine& gen,
                                 const std::vector<Machine>& constraints,
                                 std::size_t max_len,
                                 std::size_t max_count = 100000);

struct EquivalenceReport {
  bool match = false;
  std::string detail;  // human-readable mismatch description, empty on match
  std::vector<std::vector<SymbolId>> engine_strings;
  std::vector<std::vector<SymbolId>> oracle_strings;
  MarkVector engine_harmony;
  MarkVector oracle_harmony;
};

// Runs the engine and the oracle on the same instance and compares winner
// sets and harmony.  gen's language must fit within the bounds.
EquivalenceReport check_equivalence(const Machine& gen,
                                    const std::vector<Machine>& constraints,
                                    std::size_t max_len,
                                    std::size_t max_count = 100000);

struct RandomInstance {
  Machine gen;
  std::vector<Machine> constraints;
  std::size_t max_len = 0;  // tight bound on gen's longest candidate
};

// Deterministic pseudo-random instance: a small acyclic candidate
// automaton and a hierarchy of one to three total constraints over the
// same alphabet.
RandomInstance make_random_instance(std::uint64_t seed);

}  // namespace otfsm
