#include "otfsm/oracle.hh"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "otfsm/errors.hh"
#include "otfsm/optimize.hh"

namespace otfsm {

namespace {

bool is_cyclic(const Machine& m) {
  enum { White, Grey, Black };
  std::vector<int> color(m.num_states(), White);
  // Iterative DFS; (state, next-arc-index) frames.
  std::vector<std::pair<StateId, std::size_t>> stack;
  for (StateId root = 0; root < m.num_states(); ++root) {
    if (color[root] != White) continue;
    color[root] = Grey;
    stack.emplace_back(root, 0);
    while (!stack.empty()) {
      auto& [u, next] = stack.back();
      const auto& out = m.arcs_from(u);
      if (next == out.size()) {
        color[u] = Black;
        stack.pop_back();
        continue;
      }
      StateId v = m.arcs()[out[next++]].dst;
      if (color[v] == Grey) return true;
      if (color[v] == White) {
        color[v] = Grey;
        stack.emplace_back(v, 0);
      }
    }
  }
  return false;
}

// Length of the longest initial-to-final arc path of a trimmed acyclic
// machine.
std::size_t longest_path(const Machine& m) {
  // Topological order by repeated in-degree removal.
  std::vector<std::size_t> indegree(m.num_states(), 0);
  for (const Arc& a : m.arcs()) ++indegree[a.dst];
  std::vector<StateId> order;
  for (StateId s = 0; s < m.num_states(); ++s)
    if (indegree[s] == 0) order.push_back(s);
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::uint32_t ai : m.arcs_from(order[i]))
      if (--indegree[m.arcs()[ai].dst] == 0)
        order.push_back(m.arcs()[ai].dst);

  std::vector<std::size_t> depth(m.num_states(), 0);
  for (StateId u : order)
    for (std::uint32_t ai : m.arcs_from(u)) {
      StateId v = m.arcs()[ai].dst;
      depth[v] = std::max(depth[v], depth[u] + 1);
    }
  return depth[m.final_state()];
}

}  // namespace

LanguageSample enumerate_language(const Machine& machine, std::size_t max_len,
                                  std::size_t max_count) {
  Machine m = trim(machine);
  LanguageSample sample;
  if (!has_accepting_path(m)) return sample;

  if (is_cyclic(m))
    sample.truncated = true;  // trimmed cycle pumps: infinite language
  else if (longest_path(m) > max_len)
    sample.truncated = true;

  // Bounded DFS; labels expand symbol by symbol, a set dedupes the
  // strings of converging paths.
  std::set<std::vector<SymbolId>> seen;
  std::vector<SymbolId> prefix;
  bool overflow = false;
  auto visit = [&](auto&& self, StateId u) -> void {
    if (overflow) return;
    if (u == m.final_state() && !prefix.empty()) {
      seen.insert(prefix);
      if (seen.size() > max_count) {
        overflow = true;
        return;
      }
    }
    if (prefix.size() == max_len) return;
    for (std::uint32_t ai : m.arcs_from(u)) {
      const Arc& arc = m.arcs()[ai];
      for (SymbolId s : arc.label.symbols) {
        prefix.push_back(s);
        self(self, arc.dst);
        prefix.pop_back();
      }
    }
  };
  visit(visit, m.initial());

  if (overflow) {
    sample.truncated = true;
    while (seen.size() > max_count) seen.erase(std::prev(seen.end()));
  }
  sample.strings.assign(seen.begin(), seen.end());
  return sample;
}

OracleVerdict brute_force_optima(const Machine& gen,
                                 const std::vector<Machine>& constraints,
                                 std::size_t max_len, std::size_t max_count) {
  LanguageSample sample = enumerate_language(gen, max_len, max_count);
  if (sample.strings.empty())
    throw EmptySurfaceError("no surface form: the candidate set is empty");

  // One shared mark token per constraint keeps the lists comparable.
  auto mark_alphabet =
      std::make_shared<const MarkAlphabet>(std::vector<std::string>{"-", "*"});

  OracleVerdict verdict;
  verdict.truncated = sample.truncated;
  for (auto& s : sample.strings) {
    CandidateRecord rec;
    std::vector<std::int32_t> coords;
    for (const Machine& c : constraints) {
      MarkVector v = evaluate(c, s);
      for (std::int32_t e : v.entries()) {
        coords.push_back(e);
        rec.mark_lists.emplace_back(
            mark_alphabet, std::vector<MarkId>(static_cast<std::size_t>(-e),
                                               MarkId(1)));
      }
    }
    rec.string = std::move(s);
    rec.marks = MarkVector(std::move(coords));
    verdict.candidates.push_back(std::move(rec));
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i < verdict.candidates.size(); ++i)
    if (mv_compare(verdict.candidates[i].marks,
                   verdict.candidates[best].marks) == Ordering::Greater)
      best = i;
  verdict.best = verdict.candidates[best].marks;
  for (std::size_t i = 0; i < verdict.candidates.size(); ++i)
    if (mv_compare(verdict.candidates[i].marks, verdict.best) ==
        Ordering::Equal)
      verdict.optima.push_back(i);
  return verdict;
}

EquivalenceReport check_equivalence(const Machine& gen,
                                    const std::vector<Machine>& constraints,
                                    std::size_t max_len,
                                    std::size_t max_count) {
  EquivalenceReport report;

  OracleVerdict verdict =
      brute_force_optima(gen, constraints, max_len, max_count);
  for (std::size_t i : verdict.optima)
    report.oracle_strings.push_back(verdict.candidates[i].string);
  report.oracle_harmony = verdict.best;

  DeriveResult engine = derive(gen, constraints);
  LanguageSample winners =
      enumerate_language(engine.machine, max_len, max_count);
  report.engine_strings = winners.strings;
  report.engine_harmony = engine.harmony;

  std::ostringstream detail;
  if (verdict.truncated || winners.truncated) {
    detail << "enumeration truncated; instance too large for the oracle";
  } else if (report.engine_harmony != report.oracle_harmony) {
    detail << "harmony mismatch: engine " << mv_text(report.engine_harmony)
           << " vs oracle " << mv_text(report.oracle_harmony);
  } else if (report.engine_strings != report.oracle_strings) {
    detail << "winner sets differ: engine has " << report.engine_strings.size()
           << " strings, oracle has " << report.oracle_strings.size();
  }
  report.detail = detail.str();
  report.match = report.detail.empty();
  return report;
}

RandomInstance make_random_instance(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto pick = [&rng](std::size_t bound) {
    return static_cast<std::size_t>(rng() % bound);
  };

  static const std::vector<std::string> pool{"a", "b", "c", "d"};
  std::size_t alpha_size = 2 + pick(3);  // 2..4
  auto alphabet = std::make_shared<const Alphabet>(std::vector<std::string>(
      pool.begin(), pool.begin() + alpha_size));
  auto random_label = [&]() {
    std::vector<SymbolId> syms;
    for (SymbolId s = 0; s < alphabet->size(); ++s)
      if (pick(3) == 0) syms.push_back(s);
    if (syms.empty()) syms.push_back(static_cast<SymbolId>(pick(alpha_size)));
    return Label(std::move(syms));
  };

  // Candidate automaton: forward arcs only, so it is acyclic and every
  // state lies on a path to the last state.
  StateId gen_states = static_cast<StateId>(3 + pick(6));  // 3..8
  std::vector<Arc> gen_arcs;
  MarkVector none(std::vector<std::int32_t>{});
  for (StateId s = 0; s + 1 < gen_states; ++s) {
    std::size_t fanout = 1 + pick(3);
    for (std::size_t k = 0; k < fanout; ++k) {
      StateId dst =
          static_cast<StateId>(s + 1 + pick(gen_states - s - 1));
      gen_arcs.push_back(Arc{s, dst, random_label(), none});
    }
  }
  Machine gen(0, alphabet, gen_states, 0,
              static_cast<StateId>(gen_states - 1), std::move(gen_arcs));

  // Constraints: complete deterministic core over 1..3 states with all
  // states accepting, which makes them total; an occasional extra arc
  // adds harmless nondeterminism.
  std::size_t hierarchy = 1 + pick(3);
  std::vector<Machine> constraints;
  for (std::size_t c = 0; c < hierarchy; ++c) {
    StateId core = static_cast<StateId>(1 + pick(3));
    MachineDraft draft;
    draft.degree = 1;
    draft.alphabet = alphabet;
    draft.num_states = core;
    draft.initials = {0};
    for (StateId s = 0; s < core; ++s) draft.finals.push_back(s);
    for (StateId s = 0; s < core; ++s)
      for (SymbolId sym = 0; sym < alphabet->size(); ++sym) {
        StateId dst = static_cast<StateId>(pick(core));
        std::int32_t mark = pick(2) ? -1 : 0;
        draft.arcs.push_back(
            Arc{s, dst, Label::single(sym), MarkVector({mark})});
        if (pick(8) == 0)  // nondeterministic alternative
          draft.arcs.push_back(Arc{s, static_cast<StateId>(pick(core)),
                                   Label::single(sym),
                                   MarkVector({pick(2) ? -1 : 0})});
      }
    constraints.push_back(merge_terminals(draft));
  }

  RandomInstance inst{std::move(gen), std::move(constraints),
                      static_cast<std::size_t>(gen_states - 1)};
  return inst;
}

}  // namespace otfsm
