// Acceptance gate: one pass/fail line per shipping criterion.
// Exit code is the number of failed criteria.
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "otfsm/constraints.hh"
#include "otfsm/errors.hh"
#include "otfsm/harmony.hh"
#include "otfsm/optimize.hh"
#include "otfsm/oracle.hh"
#include "otfsm/product.hh"

using namespace otfsm;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start)
      .count();
}

void report(int index, const std::string& name, bool pass,
            const std::string& detail) {
  std::cout << (pass ? "[PASS] " : "[FAIL] ") << index << " " << name << ": "
            << detail << "\n";
  if (!pass) ++failures;
}

void run(int index, const std::string& name,
         const std::function<std::pair<bool, std::string>()>& body) {
  try {
    auto [pass, detail] = body();
    report(index, name, pass, detail);
  } catch (const std::exception& e) {
    report(index, name, false, std::string("exception: ") + e.what());
  }
}

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

Machine worked_gen() {
  return build_gen_syllabification({"a", "l", "q", "a", "l", "a", "m", "u"},
                                   {"a", "u"});
}

// All I->F path sums of an acyclic machine against a required total.
struct PathAudit {
  std::size_t paths = 0;
  std::size_t violations = 0;
};

PathAudit audit_path_sums(const Machine& m, const MarkVector& total,
                          std::size_t cap = 100000) {
  PathAudit audit;
  auto walk = [&](auto&& self, StateId u, const MarkVector& acc) -> void {
    if (audit.paths >= cap) return;
    if (u == m.final_state()) {
      ++audit.paths;
      if (!(acc == total)) ++audit.violations;
    }
    for (std::uint32_t ai : m.arcs_from(u)) {
      const Arc& arc = m.arcs()[ai];
      self(self, arc.dst, mv_add(acc, arc.marks));
    }
  };
  walk(walk, m.initial(), MarkVector::zeros(m.degree()));
  return audit;
}

// Best path vector per state by exhaustive path walking (acyclic input).
std::vector<std::optional<MarkVector>> brute_best(const Machine& m) {
  std::vector<std::optional<MarkVector>> best(m.num_states());
  auto walk = [&](auto&& self, StateId u, const MarkVector& acc) -> void {
    if (!best[u] || mv_compare(acc, *best[u]) == Ordering::Greater)
      best[u] = acc;
    for (std::uint32_t ai : m.arcs_from(u)) {
      const Arc& arc = m.arcs()[ai];
      self(self, arc.dst, mv_add(acc, arc.marks));
    }
  };
  walk(walk, m.initial(), MarkVector::zeros(m.degree()));
  return best;
}

bool is_acyclic(const Machine& m) {
  std::vector<int> color(m.num_states(), 0);
  auto visit = [&](auto&& self, StateId u) -> bool {
    color[u] = 1;
    for (std::uint32_t ai : m.arcs_from(u)) {
      StateId v = m.arcs()[ai].dst;
      if (color[v] == 1) return false;
      if (color[v] == 0 && !self(self, v)) return false;
    }
    color[u] = 2;
    return true;
  };
  for (StateId s = 0; s < m.num_states(); ++s)
    if (color[s] == 0 && !visit(visit, s)) return false;
  return true;
}

// Small random weighted acyclic machine for the labeling-exactness sweep.
Machine random_weighted_dag(std::mt19937_64& rng) {
  auto ab = std::make_shared<const Alphabet>(
      std::vector<std::string>{"a", "b"});
  std::uniform_int_distribution<StateId> nstates(2, 10);
  StateId n = nstates(rng);
  std::uniform_int_distribution<std::uint32_t> ndeg(1, 2);
  std::uint32_t degree = ndeg(rng);
  std::uniform_int_distribution<int> mark(-2, 0);
  std::uniform_int_distribution<StateId> anydst(0, n - 1);
  std::uniform_int_distribution<int> fanout(1, 3);
  std::uniform_int_distribution<SymbolId> sym(0, 1);
  std::vector<Arc> arcs;
  for (StateId src = 0; src + 1 < n; ++src) {
    int k = fanout(rng);
    for (int i = 0; i < k; ++i) {
      StateId dst = src + 1 + anydst(rng) % (n - src - 1);
      std::vector<std::int32_t> marks(degree);
      for (auto& v : marks) v = mark(rng);
      arcs.push_back(Arc{src, dst, Label::single(sym(rng)), MarkVector(marks)});
    }
  }
  return Machine(degree, ab, n, 0, n - 1, std::move(arcs));
}

MarkList random_list(std::mt19937_64& rng, const MarkAlphabetRef& ma) {
  std::uniform_int_distribution<std::size_t> len(0, 5);
  std::uniform_int_distribution<MarkId> item(
      0, static_cast<MarkId>(ma->size() - 1));
  std::vector<MarkId> items(len(rng));
  for (auto& it : items) it = item(rng);
  return MarkList(ma, std::move(items));
}

std::pair<bool, std::string> criterion_candidates() {
  auto start = Clock::now();
  Machine gen = worked_gen();
  auto sample = enumerate_language(gen, 16);
  double ms = ms_since(start);
  bool has_required = accepts(
      gen, std::vector<std::string>{"N:a", "C:l", "O:q", "N:a", "C:l", "N:a",
                                    "C:m", "N:u"});
  bool has_double_coda = accepts(
      gen, std::vector<std::string>{"N:a", "C:l", "C:q", "N:a", "C:l", "N:a",
                                    "C:m", "N:u"});
  bool pass = !sample.truncated && sample.strings.size() == 64 &&
              has_required && !has_double_coda && ms < 1000.0;
  std::ostringstream detail;
  detail << sample.strings.size() << " candidates, required parse "
         << (has_required ? "present" : "MISSING") << ", double-coda parse "
         << (has_double_coda ? "PRESENT" : "absent") << " (" << ms << " ms)";
  return {pass, detail.str()};
}

std::pair<bool, std::string> criterion_worked_derivation() {
  auto start = Clock::now();
  Machine gen = worked_gen();
  auto ab = gen.alphabet();
  DeriveResult d = derive(gen, {build_ons(ab), build_fill(ab)});
  auto winners = enumerate_language(d.machine, 16);
  double ms = ms_since(start);
  bool unique = winners.strings.size() == 1 && !winners.truncated;
  bool right_string =
      unique && symbol_tokens(*ab, winners.strings[0]) ==
                    std::vector<std::string>{"O:0", "N:a", "C:l", "O:q", "N:a",
                                             "O:l", "N:a", "O:m", "N:u"};
  bool right_harmony = d.harmony == MarkVector({0, -1});
  bool pass = unique && right_string && right_harmony && ms < 1000.0;
  std::ostringstream detail;
  detail << winners.strings.size() << " winner(s), harmony "
         << mv_text(d.harmony) << ", string "
         << (right_string ? "as expected" : "WRONG") << " (" << ms << " ms)";
  return {pass, detail.str()};
}

struct Campaign {
  std::size_t instances = 0;
  std::size_t mismatches = 0;
  PathAudit paths;
  std::size_t budget_violations = 0;
  double ms = 0;
  std::string first_detail;
};

Campaign run_campaign(std::size_t count, std::uint64_t base) {
  Campaign c;
  auto start = Clock::now();
  for (std::size_t i = 0; i < count; ++i) {
    RandomInstance inst = make_random_instance(splitmix(base + i));
    EquivalenceReport eq =
        check_equivalence(inst.gen, inst.constraints, inst.max_len);
    ++c.instances;
    if (!eq.match) {
      ++c.mismatches;
      if (c.first_detail.empty()) {
        std::ostringstream d;
        d << "instance " << i << ": " << eq.detail;
        c.first_detail = d.str();
      }
    }
    DeriveResult d = derive(inst.gen, inst.constraints);
    PathAudit a = audit_path_sums(d.machine, d.harmony);
    c.paths.paths += a.paths;
    c.paths.violations += a.violations;
    double budget =
        10.0 * static_cast<double>(d.surface_arcs) *
        (1.0 + std::log2(static_cast<double>(d.surface_states) + 1.0));
    if (static_cast<double>(d.comparisons) > budget) ++c.budget_violations;
  }
  c.ms = ms_since(start);
  return c;
}

std::pair<bool, std::string> criterion_oracle(const Campaign& c) {
  bool pass = c.instances >= 500 && c.mismatches == 0 && c.ms < 60000.0;
  std::ostringstream detail;
  detail << (c.instances - c.mismatches) << "/" << c.instances
         << " instances match the reference optimizer (" << c.ms << " ms)";
  if (!c.first_detail.empty()) detail << "; first: " << c.first_detail;
  return {pass, detail.str()};
}

std::pair<bool, std::string> criterion_path_sums(const Campaign& c) {
  // the worked example's pruned machine joins the campaign machines
  Machine gen = worked_gen();
  auto ab = gen.alphabet();
  DeriveResult d = derive(gen, {build_ons(ab), build_fill(ab)});
  PathAudit w = audit_path_sums(d.machine, d.harmony);
  std::size_t paths = c.paths.paths + w.paths;
  std::size_t bad = c.paths.violations + w.violations;
  bool pass = paths > 0 && bad == 0;
  std::ostringstream detail;
  detail << paths << " pruned-machine paths audited, " << bad
         << " with a wrong mark sum";
  return {pass, detail.str()};
}

std::pair<bool, std::string> criterion_labeling() {
  std::mt19937_64 rng(20260822);
  std::size_t machines = 0;
  std::size_t state_checks = 0;
  std::size_t errors = 0;
  auto check_machine = [&](const Machine& m) {
    if (m.num_states() > 10 || !is_acyclic(m)) return;
    auto expected = brute_best(m);
    HarmonyAnnotation ann = label_nodes(m);
    ++machines;
    for (StateId s = 0; s < m.num_states(); ++s) {
      ++state_checks;
      if (expected[s].has_value() != ann.at(s).has_value())
        ++errors;
      else if (expected[s] && !(*expected[s] == *ann.at(s)))
        ++errors;
    }
  };
  for (int i = 0; i < 300; ++i) check_machine(random_weighted_dag(rng));
  for (std::uint64_t seed = 0; seed < 120; ++seed) {
    RandomInstance inst = make_random_instance(splitmix(7000 + seed));
    check_machine(trim(inst.gen));
    Machine surface = trim(inst.gen);
    for (const Machine& con : inst.constraints)
      surface = augmented_product(surface, con);
    check_machine(surface);
  }
  bool pass = machines >= 300 && errors == 0;
  std::ostringstream detail;
  detail << machines << " acyclic machines labeled, " << state_checks
         << " per-state values checked, " << errors << " disagreements";
  return {pass, detail.str()};
}

std::pair<bool, std::string> criterion_budget(const Campaign& c) {
  // the worked derivation must respect the same bound
  Machine gen = worked_gen();
  auto ab = gen.alphabet();
  DeriveResult d = derive(gen, {build_ons(ab), build_fill(ab)});
  double budget =
      10.0 * static_cast<double>(d.surface_arcs) *
      (1.0 + std::log2(static_cast<double>(d.surface_states) + 1.0));
  bool worked_ok = static_cast<double>(d.comparisons) <= budget;
  bool pass = worked_ok && c.budget_violations == 0;
  std::ostringstream detail;
  detail << "comparisons within 10*arcs*(1+log2(states+1)) on "
         << (c.instances + 1) << " instances, " << c.budget_violations
         << " violations; worked case " << d.comparisons << " of "
         << budget;
  return {pass, detail.str()};
}

std::pair<bool, std::string> criterion_decomposition() {
  std::mt19937_64 rng(4242);
  std::size_t pairs = 0;
  std::size_t disagreements = 0;
  for (std::size_t words = 3; words <= 4; ++words) {
    std::vector<std::string> tokens;
    for (std::size_t i = 0; i < words; ++i)
      tokens.push_back(std::to_string(i));
    auto ma = std::make_shared<const MarkAlphabet>(tokens);
    for (int i = 0; i < 600; ++i) {
      MarkList a = random_list(rng, ma);
      MarkList b = random_list(rng, ma);
      ++pairs;
      if (list_compare(a, b) != combined_compare(decompose(a), decompose(b)))
        ++disagreements;
    }
  }

  auto ma3 = std::make_shared<const MarkAlphabet>(
      std::vector<std::string>{"0", "1", "2"});
  MarkList m = MarkList::from_tokens(ma3, {"1", "0", "2"});
  MarkList n = MarkList::from_tokens(ma3, {"2", "1", "0", "1", "2"});
  MarkList p = MarkList::from_tokens(ma3, {"0", "1", "2", "2"});
  bool three_way = list_compare(m, p) == Ordering::Greater &&
                   list_compare(p, n) == Ordering::Greater &&
                   list_compare(m, n) == Ordering::Greater &&
                   combined_compare(decompose(m), decompose(p)) ==
                       Ordering::Greater &&
                   combined_compare(decompose(p), decompose(n)) ==
                       Ordering::Greater;

  auto mons = std::make_shared<const MarkAlphabet>(
      std::vector<std::string>{"0", "L"});
  MarkList fully = MarkList::from_tokens(
      mons, {"L", "0", "0", "0", "0", "0", "0", "0"});
  MarkList sparse = MarkList::from_tokens(
      mons, {"L", "0", "0", "L", "0", "L", "0", "L"});
  bool prefers = list_compare(fully, sparse) == Ordering::Greater;

  bool pass = pairs >= 1000 && disagreements == 0 && three_way && prefers;
  std::ostringstream detail;
  detail << pairs << " random pairs, " << disagreements
         << " decomposition disagreements; fixed rankings "
         << (three_way && prefers ? "reproduced" : "WRONG");
  return {pass, detail.str()};
}

std::pair<bool, std::string> criterion_precompilation() {
  std::size_t instances = 0;
  std::size_t mismatches = 0;
  std::string first;
  for (std::uint64_t seed = 0; instances < 250 && seed < 5000; ++seed) {
    RandomInstance inst = make_random_instance(splitmix(90000 + seed));
    if (inst.constraints.size() < 2) continue;
    ++instances;
    DeriveResult direct = derive(inst.gen, inst.constraints);
    DeriveResult via_pre = derive(inst.gen, {precompile(inst.constraints)});
    SequentialResult staged = derive_sequential(inst.gen, inst.constraints);
    MarkVector staged_harmony;
    for (const auto& h : staged.stage_harmonies)
      staged_harmony = mv_concat(staged_harmony, h);
    auto ld = enumerate_language(direct.machine, inst.max_len);
    auto lp = enumerate_language(via_pre.machine, inst.max_len);
    auto ls = enumerate_language(staged.machine, inst.max_len);
    bool ok = !ld.truncated && ld.strings == lp.strings &&
              ld.strings == ls.strings && direct.harmony == via_pre.harmony &&
              direct.harmony == staged_harmony;
    if (!ok) {
      ++mismatches;
      if (first.empty()) first = "seed offset " + std::to_string(seed);
    }
  }
  bool pass = instances >= 250 && mismatches == 0;
  std::ostringstream detail;
  detail << instances
         << " multi-constraint instances: precompiled, staged and "
            "one-shot derivations agree on "
         << (instances - mismatches) << " (" << mismatches << " mismatches";
  if (!first.empty()) detail << ", first at " << first;
  detail << ")";
  return {pass, detail.str()};
}

}  // namespace

int main() {
  Campaign campaign;
  bool campaign_ok = false;
  try {
    campaign = run_campaign(500, 1);
    campaign_ok = true;
  } catch (const std::exception& e) {
    std::cout << "[FAIL] campaign aborted: " << e.what() << "\n";
    failures += 3;  // criteria 3, 4 and 6 depend on it
  }

  run(1, "candidate inventory", criterion_candidates);
  run(2, "worked derivation", criterion_worked_derivation);
  if (campaign_ok) {
    run(3, "reference agreement", [&] { return criterion_oracle(campaign); });
    run(4, "path-sum invariance",
        [&] { return criterion_path_sums(campaign); });
  }
  run(5, "labeling exactness", criterion_labeling);
  if (campaign_ok)
    run(6, "comparison budget", [&] { return criterion_budget(campaign); });
  run(7, "decomposition agreement", criterion_decomposition);
  run(8, "precompilation agreement", criterion_precompilation);

  if (failures == 0)
    std::cout << "all criteria passed\n";
  else
    std::cout << failures << " criteria failed\n";
  return failures;
}
