#include <doctest.h>

#include <cmath>
#include <map>

#include "otfsm/constraints.hh"
#include "otfsm/errors.hh"
#include "otfsm/optimize.hh"
#include "otfsm/oracle.hh"
#include "otfsm/product.hh"

using namespace otfsm;

namespace {

AlphabetRef ab2() {
  return std::make_shared<const Alphabet>(std::vector<std::string>{"a", "b"});
}

// Test-side reference for label_nodes: best vector per state by walking
// every simple-ish path (bounded depth, enough for the small machines
// used here).
std::vector<std::optional<MarkVector>> best_by_walking(const Machine& m,
                                                       std::size_t depth) {
  std::vector<std::optional<MarkVector>> best(m.num_states());
  auto walk = [&](auto&& self, StateId u, const MarkVector& acc,
                  std::size_t left) -> void {
    if (!best[u] || mv_compare(acc, *best[u]) == Ordering::Greater)
      best[u] = acc;
    else if (mv_compare(acc, *best[u]) != Ordering::Greater && left < depth)
      ;  // keep exploring: an equal prefix can still improve a successor
    if (left == 0) return;
    for (std::uint32_t ai : m.arcs_from(u)) {
      const Arc& arc = m.arcs()[ai];
      self(self, arc.dst, mv_add(acc, arc.marks), left - 1);
    }
  };
  walk(walk, m.initial(), MarkVector::zeros(m.degree()), depth);
  return best;
}

}  // namespace

TEST_CASE("labeling a diamond keeps the best branch per state") {
  auto ab = ab2();
  Machine m(1, ab, 4, 0, 3,
            {Arc{0, 1, Label::single(0), MarkVector({-1})},
             Arc{0, 2, Label::single(0), MarkVector({-2})},
             Arc{1, 3, Label::single(1), MarkVector({0})},
             Arc{2, 3, Label::single(1), MarkVector({0})}});
  HarmonyAnnotation ann = label_nodes(m);
  REQUIRE(ann.harmony.size() == 4);
  CHECK(*ann.at(0) == MarkVector({0}));
  CHECK(*ann.at(1) == MarkVector({-1}));
  CHECK(*ann.at(2) == MarkVector({-2}));
  CHECK(*ann.at(3) == MarkVector({-1}));
  CHECK(ann.expansions == 4);
  CHECK(ann.comparisons > 0);
}

TEST_CASE("unreachable states stay unlabeled") {
  auto ab = ab2();
  Machine m(0, ab, 3, 0, 1, {Arc{0, 1, Label::single(0), MarkVector()}});
  HarmonyAnnotation ann = label_nodes(m);
  CHECK(ann.at(0).has_value());
  CHECK(ann.at(1).has_value());
  CHECK(!ann.at(2).has_value());
}

TEST_CASE("labeling is exact on machines with converging paths") {
  // depth-2 grid with deliberately tempting wrong turns
  auto ab = ab2();
  Machine m(2, ab, 6, 0, 5,
            {Arc{0, 1, Label::single(0), MarkVector({0, -5})},
             Arc{0, 2, Label::single(1), MarkVector({-1, 0})},
             Arc{1, 3, Label::single(0), MarkVector({0, 0})},
             Arc{2, 3, Label::single(0), MarkVector({0, 0})},
             Arc{1, 4, Label::single(1), MarkVector({-3, 0})},
             Arc{2, 4, Label::single(1), MarkVector({0, -1})},
             Arc{3, 5, Label::single(0), MarkVector({0, 0})},
             Arc{4, 5, Label::single(0), MarkVector({-1, -1})}});
  auto expected = best_by_walking(m, 5);
  HarmonyAnnotation ann = label_nodes(m);
  for (StateId s = 0; s < m.num_states(); ++s) {
    REQUIRE(expected[s].has_value() == ann.at(s).has_value());
    if (expected[s]) CHECK(*expected[s] == *ann.at(s));
  }
}

TEST_CASE("zero-mark cycles terminate and do not distort harmony") {
  auto ab = ab2();
  Machine m(1, ab, 3, 0, 2,
            {Arc{0, 1, Label::single(0), MarkVector({0})},
             Arc{1, 0, Label::single(1), MarkVector({0})},
             Arc{1, 2, Label::single(0), MarkVector({-1})}});
  HarmonyAnnotation ann = label_nodes(m);
  CHECK(*ann.at(0) == MarkVector({0}));
  CHECK(*ann.at(1) == MarkVector({0}));
  CHECK(*ann.at(2) == MarkVector({-1}));
  CHECK(ann.expansions == 3);

  // negative cycles cannot improve anything either
  Machine neg(1, ab, 2, 0, 1,
              {Arc{0, 0, Label::single(0), MarkVector({-1})},
               Arc{0, 1, Label::single(1), MarkVector({0})}});
  HarmonyAnnotation ann2 = label_nodes(neg);
  CHECK(*ann2.at(0) == MarkVector({0}));
  CHECK(*ann2.at(1) == MarkVector({0}));
}

TEST_CASE("pruning removes exactly the off-best arcs") {
  auto ab = ab2();
  Machine m(1, ab, 4, 0, 3,
            {Arc{0, 1, Label::single(0), MarkVector({-1})},
             Arc{0, 2, Label::single(0), MarkVector({-2})},
             Arc{1, 3, Label::single(1), MarkVector({0})},
             Arc{2, 3, Label::single(1), MarkVector({0})}});
  HarmonyAnnotation ann = label_nodes(m);
  Machine pruned = prune(m, ann);
  // 2->3 sums to -2 against a best of -1 and goes; 0->2 still matches
  // state 2's own harmony, so it stays until trimming strands it
  CHECK(pruned.num_states() == 4);
  REQUIRE(pruned.arcs().size() == 3);
  for (const Arc& arc : pruned.arcs()) CHECK(!(arc.src == 2 && arc.dst == 3));
  Machine best = trim(pruned);
  CHECK(best.num_states() == 3);
  REQUIRE(best.arcs().size() == 2);
  CHECK(best.arcs()[0].marks == MarkVector({-1}));
}

TEST_CASE("arcs at unlabeled endpoints survive pruning for trim to drop") {
  auto ab = ab2();
  Machine m(1, ab, 4, 0, 1,
            {Arc{0, 1, Label::single(0), MarkVector({0})},
             Arc{2, 3, Label::single(1), MarkVector({-3})}});
  HarmonyAnnotation ann = label_nodes(m);
  CHECK(!ann.at(2).has_value());
  Machine pruned = prune(m, ann);
  CHECK(pruned.arcs().size() == 2);
  Machine cleaned = trim(pruned);
  CHECK(cleaned.num_states() == 2);
  CHECK(cleaned.arcs().size() == 1);
}

TEST_CASE("derivation reproduces the worked syllabification") {
  auto gen = build_gen_syllabification({"a", "l", "q", "a", "l", "a", "m", "u"},
                                       {"a", "u"});
  auto ab = gen.alphabet();
  DeriveResult d = derive(gen, {build_ons(ab), build_fill(ab)});
  CHECK(d.harmony == MarkVector({0, -1}));
  auto winners = enumerate_language(d.machine, 16);
  REQUIRE(winners.strings.size() == 1);
  CHECK(symbol_tokens(*ab, winners.strings[0]) ==
        std::vector<std::string>{"O:0", "N:a", "C:l", "O:q", "N:a", "O:l",
                                 "N:a", "O:m", "N:u"});
  // a single nine-symbol winner lives on a ten-state line
  CHECK(d.pruned_states == 10);
  CHECK(d.pruned_arcs == 9);
  CHECK(d.comparisons > 0);

  // reversing the ranking picks the fully parsed candidate instead
  DeriveResult r = derive(gen, {build_fill(ab), build_ons(ab)});
  auto rw = enumerate_language(r.machine, 16);
  REQUIRE(rw.strings.size() == 1);
  CHECK(symbol_tokens(*ab, rw.strings[0]) ==
        std::vector<std::string>{"N:a", "C:l", "O:q", "N:a", "O:l", "N:a",
                                 "O:m", "N:u"});
  CHECK(r.harmony == MarkVector({0, -1}));
}

TEST_CASE("every surviving path carries exactly the optimal harmony") {
  // walk all arc paths of the pruned result and add up the marks
  for (std::uint64_t seed : {11u, 22u, 33u, 44u, 55u}) {
    RandomInstance inst = make_random_instance(seed);
    DeriveResult d = derive(inst.gen, inst.constraints);
    std::size_t paths = 0;
    auto walk = [&](auto&& self, StateId u, const MarkVector& acc) -> void {
      if (u == d.machine.final_state() && acc.degree() == d.harmony.degree() &&
          paths < 100000) {
        CHECK(acc == d.harmony);
        ++paths;
      }
      for (std::uint32_t ai : d.machine.arcs_from(u)) {
        const Arc& arc = d.machine.arcs()[ai];
        self(self, arc.dst, mv_add(acc, arc.marks));
      }
    };
    walk(walk, d.machine.initial(), MarkVector::zeros(d.machine.degree()));
    CHECK(paths > 0);
  }
}

TEST_CASE("derivation never empties a non-empty candidate set") {
  for (std::uint64_t seed : {1u, 2u, 3u, 4u, 5u, 6u, 7u, 8u}) {
    RandomInstance inst = make_random_instance(seed);
    DeriveResult d = derive(inst.gen, inst.constraints);
    CHECK(has_accepting_path(d.machine));
  }
}

TEST_CASE("derive validates degrees and rejects empty candidate sets") {
  auto ab = ab2();
  Machine weighted(1, ab, 2, 0, 1,
                   {Arc{0, 1, Label::single(0), MarkVector({-1})}});
  Machine automaton(0, ab, 2, 0, 1,
                    {Arc{0, 1, Label::single(0), MarkVector()}});
  CHECK_THROWS_AS(derive(weighted, {}), DegreeMismatchError);
  CHECK_THROWS_AS(derive(automaton, {automaton}), DegreeMismatchError);

  Machine empty(0, ab, 2, 0, 1, {});
  CHECK_THROWS_AS(derive(empty, {weighted}), EmptySurfaceError);
  CHECK_THROWS_AS(derive(empty, {}), EmptySurfaceError);
}

TEST_CASE("derivation with no constraints trims and nothing else") {
  auto ab = ab2();
  Machine m(0, ab, 3, 0, 1, {Arc{0, 1, Label::single(0), MarkVector()}});
  DeriveResult d = derive(m, {});
  CHECK(d.harmony.degree() == 0);
  CHECK(same_structure(d.machine, trim(m)));
}

TEST_CASE("comparison effort stays within the arcs-times-log budget") {
  for (std::uint64_t seed = 100; seed < 160; ++seed) {
    RandomInstance inst = make_random_instance(seed);
    DeriveResult d = derive(inst.gen, inst.constraints);
    double budget =
        10.0 * static_cast<double>(d.surface_arcs) *
        (1.0 + std::log2(static_cast<double>(d.surface_states) + 1.0));
    CHECK(static_cast<double>(d.comparisons) <= budget);
  }
}

TEST_CASE("staged derivation matches the one-shot derivation") {
  auto gen = build_gen_syllabification({"a", "l", "q", "a", "l", "a", "m", "u"},
                                       {"a", "u"});
  auto ab = gen.alphabet();
  std::vector<Machine> hierarchy{build_ons(ab), build_fill(ab)};
  DeriveResult batch = derive(gen, hierarchy);
  SequentialResult staged = derive_sequential(gen, hierarchy);

  REQUIRE(staged.stage_harmonies.size() == 2);
  MarkVector joined;
  for (const auto& h : staged.stage_harmonies) joined = mv_concat(joined, h);
  CHECK(joined == batch.harmony);
  CHECK(enumerate_language(staged.machine, 16).strings ==
        enumerate_language(batch.machine, 16).strings);
}

TEST_CASE("precompiled hierarchies pick the same winners") {
  auto gen = build_gen_syllabification({"a", "l", "q", "a", "l", "a", "m", "u"},
                                       {"a", "u"});
  auto ab = gen.alphabet();
  std::vector<Machine> hierarchy{build_ons(ab), build_fill(ab)};
  Machine pre = precompile(hierarchy);
  CHECK(pre.degree() == 2);
  DeriveResult via_pre = derive(gen, {pre});
  DeriveResult direct = derive(gen, hierarchy);
  CHECK(via_pre.harmony == direct.harmony);
  CHECK(enumerate_language(via_pre.machine, 16).strings ==
        enumerate_language(direct.machine, 16).strings);

  // single-constraint precompilation is the constraint itself
  Machine one = precompile({hierarchy[0]});
  CHECK(same_structure(one, hierarchy[0]));
  CHECK_THROWS_AS(precompile({}), InvariantError);
}
