// otfsm - command line front end for the engine
//
// Exit codes: 0 success, 1 domain failure (bad file, bad format, empty
// candidate set, oracle mismatch, ...), 2 usage error.
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "otfsm/constraints.hh"
#include "otfsm/dot.hh"
#include "otfsm/errors.hh"
#include "otfsm/machine_io.hh"
#include "otfsm/optimize.hh"
#include "otfsm/oracle.hh"
#include "otfsm/product.hh"

using nlohmann::json;
using namespace otfsm;

namespace {

std::uint64_t fnv1a(const std::string& data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  std::ostringstream out;
  out << std::hex << v;
  return out.str();
}

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::string joined_tokens(const std::vector<SymbolId>& ids,
                          const Alphabet& alphabet) {
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) out.push_back(' ');
    out += alphabet.token(ids[i]);
  }
  return out;
}

json harmony_json(const MarkVector& v) { return json(v.entries()); }

std::uint64_t default_seed() {
  if (const char* env = std::getenv("OTFSM_SEED"))
    return std::strtoull(env, nullptr, 10);
  return 1;
}

struct CompileArgs {
  std::string input;
  std::string output;
  std::string builtin;
  std::string alphabet_from;
  std::string target;
  std::string edge = "left";
};

int run_compile_constraint(const CompileArgs& a) {
  AlphabetRef alphabet;
  if (!a.alphabet_from.empty())
    alphabet = load_machine_file(a.alphabet_from).alphabet();

  Machine compiled = [&]() -> Machine {
    if (a.builtin.empty()) {
      if (a.input.empty())
        throw FormatError("give a constraint file or --builtin");
      return compile_constraint_file(a.input, alphabet);
    }
    if (!a.input.empty())
      throw FormatError("give either a constraint file or --builtin, not both");
    if (!alphabet)
      throw FormatError("--builtin needs --alphabet-from");
    if (a.builtin == "fill") return build_fill(alphabet);
    if (a.builtin == "ons") return build_ons(alphabet);
    if (a.builtin == "nointervening") {
      if (a.target.empty())
        throw FormatError("--builtin nointervening needs --target");
      Label target = parse_label(a.target, *alphabet);
      Edge edge;
      if (a.edge == "left") edge = Edge::Left;
      else if (a.edge == "right") edge = Edge::Right;
      else throw FormatError("--edge must be left or right");
      return build_nointervening(alphabet, target, edge);
    }
    throw FormatError("unknown builtin '" + a.builtin +
                      "' (try fill, ons, nointervening)");
  }();

  std::string source = a.builtin.empty() ? a.input : "builtin " + a.builtin;
  save_machine_file(a.output, compiled, {"constraint compiled from " + source});
  std::cout << "wrote " << a.output << ": " << compiled.num_states()
            << " states, " << compiled.arcs().size() << " arcs, degree "
            << compiled.degree() << "\n";
  return 0;
}

struct GenArgs {
  std::vector<std::string> segments;
  std::vector<std::string> vowels;
  std::string output;
};

int run_gen_syll(const GenArgs& a) {
  Machine gen = build_gen_syllabification(a.segments, a.vowels);
  std::string seg_line;
  for (const auto& s : a.segments) seg_line += s;
  save_machine_file(
      a.output, gen,
      {"candidate syllabifications of /" + seg_line + "/",
       "syllables are (onset) nucleus (coda); margin slots may be unfilled "
       "(the S:0 symbols)",
       "nuclei are underlying vowels; unfilled codas only before a "
       "consonant or finally"});
  std::cout << "wrote " << a.output << ": " << gen.num_states() << " states, "
            << gen.arcs().size() << " arcs\n";
  return 0;
}

struct ProductArgs {
  std::string left, right, output;
  bool plain = false;
};

int run_product(const ProductArgs& a) {
  Machine left = load_machine_file(a.left);
  Machine right = load_machine_file(a.right);
  Machine result = a.plain ? product(left, right)
                           : augmented_product(left, right);
  save_machine_file(a.output, result,
                    {(a.plain ? std::string("product of ")
                              : std::string("augmented product of ")) +
                     a.left + " and " + a.right});
  std::cout << "wrote " << a.output << ": " << result.num_states()
            << " states, " << result.arcs().size() << " arcs, degree "
            << result.degree() << "\n";
  return 0;
}

struct DeriveArgs {
  std::string gen;
  std::vector<std::string> constraints;
  std::string output;
  std::string report;
  bool pretty = false;
  bool sequential = false;
};

int run_derive(const DeriveArgs& a) {
  Machine gen = load_machine_file(a.gen);
  std::vector<Machine> constraints;
  for (const auto& path : a.constraints)
    constraints.push_back(load_machine_file(path));

  json rep;
  rep["gen"] = a.gen;
  rep["constraints"] = a.constraints;

  Machine result = [&]() -> Machine {
    if (a.sequential) {
      SequentialResult seq = derive_sequential(gen, constraints);
      json stages = json::array();
      for (const auto& h : seq.stage_harmonies)
        stages.push_back(harmony_json(h));
      rep["stage_harmonies"] = stages;
      rep["comparisons"] = seq.comparisons;
      std::cout << "stage harmonies:";
      for (const auto& h : seq.stage_harmonies) std::cout << ' ' << mv_text(h);
      std::cout << "\n";
      return seq.machine;
    }
    DeriveResult d = derive(gen, constraints);
    rep["harmony"] = harmony_json(d.harmony);
    rep["comparisons"] = d.comparisons;
    rep["surface"] = {{"states", d.surface_states}, {"arcs", d.surface_arcs}};
    rep["pruned"] = {{"states", d.pruned_states}, {"arcs", d.pruned_arcs}};
    std::cout << "harmony " << mv_text(d.harmony) << ", " << d.comparisons
              << " comparisons, surface " << d.surface_states << "/"
              << d.surface_arcs << ", pruned " << d.pruned_states << "/"
              << d.pruned_arcs << "\n";
    return d.machine;
  }();

  std::string text = machine_text(result, {"optimal surface forms"});
  rep["machine_fnv"] = hex64(fnv1a(text));
  if (!a.output.empty()) {
    std::ofstream out(a.output);
    if (!out) throw FormatError("cannot open '" + a.output + "' for writing");
    out << text;
    std::cout << "wrote " << a.output << "\n";
  }
  if (!a.report.empty()) {
    std::ofstream out(a.report);
    if (!out) throw FormatError("cannot open '" + a.report + "' for writing");
    out << (a.pretty ? rep.dump(2) : rep.dump()) << "\n";
    std::cout << "wrote " << a.report << "\n";
  }
  return 0;
}

struct EnumerateArgs {
  std::string input;
  std::size_t max_len = 16;
  std::size_t max_count = 100000;
};

int run_enumerate(const EnumerateArgs& a) {
  Machine m = load_machine_file(a.input);
  LanguageSample sample = enumerate_language(m, a.max_len, a.max_count);
  for (const auto& s : sample.strings)
    std::cout << joined_tokens(s, *m.alphabet()) << "\n";
  if (sample.truncated)
    std::cerr << "note: language truncated at length " << a.max_len
              << " / count " << a.max_count << "\n";
  return 0;
}

struct OracleArgs {
  std::string gen;
  std::vector<std::string> constraints;
  std::size_t max_len = 16;
  std::size_t random = 0;
  std::uint64_t seed = default_seed();
};

int run_oracle_check(const OracleArgs& a) {
  if (a.random > 0) {
    std::size_t bad = 0;
    for (std::size_t i = 0; i < a.random; ++i) {
      RandomInstance inst = make_random_instance(splitmix(a.seed + i));
      EquivalenceReport eq =
          check_equivalence(inst.gen, inst.constraints, inst.max_len);
      if (!eq.match) {
        ++bad;
        std::cerr << "instance " << i << " (seed base " << a.seed
                  << "): " << eq.detail << "\n";
      }
    }
    std::cout << (a.random - bad) << "/" << a.random
              << " instances match the oracle\n";
    return bad == 0 ? 0 : 1;
  }
  if (a.gen.empty())
    throw FormatError("give a candidate machine or --random");
  Machine gen = load_machine_file(a.gen);
  std::vector<Machine> constraints;
  for (const auto& path : a.constraints)
    constraints.push_back(load_machine_file(path));
  EquivalenceReport eq = check_equivalence(gen, constraints, a.max_len);
  if (eq.match) {
    std::cout << "match: " << eq.engine_strings.size()
              << " optimal string(s), harmony " << mv_text(eq.engine_harmony)
              << "\n";
    return 0;
  }
  std::cout << "MISMATCH: " << eq.detail << "\n";
  return 1;
}

struct CompareArgs {
  std::vector<std::string> alphabet;
  std::vector<std::string> a;
  std::vector<std::string> b;
  bool show_decomposition = false;
};

int run_compare_marks(const CompareArgs& args) {
  auto alphabet = std::make_shared<const MarkAlphabet>(args.alphabet);
  MarkList a = MarkList::from_tokens(alphabet, args.a);
  MarkList b = MarkList::from_tokens(alphabet, args.b);
  Ordering o = list_compare(a, b);
  const char* rel = o == Ordering::Greater ? ">"
                    : o == Ordering::Less  ? "<"
                                           : "=";
  std::cout << "[" << a.text() << "] " << rel << " [" << b.text() << "]\n";
  if (args.show_decomposition) {
    auto da = decompose(a);
    auto db = decompose(b);
    for (std::size_t i = 0; i < da.size(); ++i)
      std::cout << "  component " << i << ": [" << da[i].text() << "] vs ["
                << db[i].text() << "]\n";
    Ordering c = combined_compare(da, db);
    if (c != o) throw InvariantError("decomposition changed the comparison");
  }
  return 0;
}

struct DotArgs {
  std::string input;
  std::string output;
  std::string name = "machine";
};

int run_export_dot(const DotArgs& a) {
  Machine m = load_machine_file(a.input);
  std::ofstream out(a.output);
  if (!out) throw FormatError("cannot open '" + a.output + "' for writing");
  export_dot(out, m, a.name);
  std::cout << "wrote " << a.output << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-state optimality engine"};
  app.require_subcommand(1);

  CompileArgs compile_args;
  auto* compile = app.add_subcommand(
      "compile-constraint", "compile a constraint document or builtin");
  compile->add_option("input", compile_args.input, "constraint document (.otc)");
  compile->add_option("-o,--output", compile_args.output, "output machine")
      ->required();
  compile->add_option("--builtin", compile_args.builtin,
                      "fill, ons or nointervening");
  compile->add_option("--alphabet-from", compile_args.alphabet_from,
                      "machine file supplying the alphabet");
  compile->add_option("--target", compile_args.target,
                      "nointervening target label");
  compile->add_option("--edge", compile_args.edge,
                      "nointervening edge: left or right");

  GenArgs gen_args;
  auto* gen = app.add_subcommand("gen-syll",
                                 "build a syllabification candidate machine");
  gen->add_option("--segments", gen_args.segments, "underlying segments")
      ->required()
      ->delimiter(',');
  gen->add_option("--vowels", gen_args.vowels, "which segments are vowels")
      ->required()
      ->delimiter(',');
  gen->add_option("-o,--output", gen_args.output, "output machine")->required();

  ProductArgs product_args;
  auto* prod = app.add_subcommand("product", "product of two machines");
  prod->add_option("left", product_args.left, "dominant machine")->required();
  prod->add_option("right", product_args.right, "other machine")->required();
  prod->add_option("-o,--output", product_args.output, "output machine")
      ->required();
  prod->add_flag("--plain", product_args.plain,
                 "unweighted intersection (degree-0 inputs)");

  DeriveArgs derive_args;
  auto* der = app.add_subcommand(
      "derive", "optimal surface forms of a candidate machine");
  der->add_option("gen", derive_args.gen, "candidate machine")->required();
  der->add_option("constraints", derive_args.constraints,
                  "constraint machines, most dominant first");
  der->add_option("-o,--output", derive_args.output, "output machine");
  der->add_option("--report", derive_args.report, "write a JSON run report");
  der->add_flag("--pretty", derive_args.pretty, "indent the JSON report");
  der->add_flag("--sequential", derive_args.sequential,
                "apply constraints one stage at a time");

  EnumerateArgs enum_args;
  auto* enm = app.add_subcommand("enumerate", "list accepted strings");
  enm->add_option("input", enum_args.input, "machine file")->required();
  enm->add_option("--max-len", enum_args.max_len, "maximum string length");
  enm->add_option("--max-count", enum_args.max_count, "maximum string count");

  OracleArgs oracle_args;
  auto* ora = app.add_subcommand(
      "oracle-check", "compare the engine against brute-force evaluation");
  ora->add_option("gen", oracle_args.gen, "candidate machine");
  ora->add_option("constraints", oracle_args.constraints,
                  "constraint machines, most dominant first");
  ora->add_option("--max-len", oracle_args.max_len, "enumeration bound");
  ora->add_option("--random", oracle_args.random,
                  "check this many random instances instead");
  ora->add_option("--seed", oracle_args.seed,
                  "campaign seed (default: OTFSM_SEED or 1)");

  CompareArgs compare_args;
  auto* cmp = app.add_subcommand("compare-marks",
                                 "compare two mark lists by harmony");
  cmp->add_option("--alphabet", compare_args.alphabet,
                  "mark tokens, most harmonic (zero) first")
      ->required()
      ->delimiter(',');
  cmp->add_option("--a", compare_args.a, "first list")->delimiter(',');
  cmp->add_option("--b", compare_args.b, "second list")->delimiter(',');
  cmp->add_flag("--decompose", compare_args.show_decomposition,
                "also compare the binary decompositions");

  DotArgs dot_args;
  auto* dot = app.add_subcommand("export-dot", "render a machine as Graphviz");
  dot->add_option("input", dot_args.input, "machine file")->required();
  dot->add_option("-o,--output", dot_args.output, "output .dot file")
      ->required();
  dot->add_option("--name", dot_args.name, "graph name");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (compile->parsed()) return run_compile_constraint(compile_args);
    if (gen->parsed()) return run_gen_syll(gen_args);
    if (prod->parsed()) return run_product(product_args);
    if (der->parsed()) return run_derive(derive_args);
    if (enm->parsed()) return run_enumerate(enum_args);
    if (ora->parsed()) return run_oracle_check(oracle_args);
    if (cmp->parsed()) return run_compare_marks(compare_args);
    if (dot->parsed()) return run_export_dot(dot_args);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
