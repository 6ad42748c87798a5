#include "otfsm/constraints.hh"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <memory>
#include <set>
#include <sstream>

#include "otfsm/errors.hh"
#include "otfsm/machine_io.hh"

namespace otfsm {

namespace {

// ---------------------------------------------------------------- expressions

struct ExprToken {
  enum Type { LParen, RParen, Pipe, Star, Atom, End } type;
  std::string label_text;
  std::int32_t mark = 0;
};

class ExprLexer {
 public:
  explicit ExprLexer(const std::string& text) : text_(text) { advance(); }

  const ExprToken& peek() const { return current_; }
  ExprToken take() {
    ExprToken t = current_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < text_.size() && std::isspace(
               static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    if (pos_ >= text_.size()) {
      current_ = {ExprToken::End, "", 0};
      return;
    }
    char c = text_[pos_];
    if (c == '(') { current_ = {ExprToken::LParen, "", 0}; ++pos_; return; }
    if (c == ')') { current_ = {ExprToken::RParen, "", 0}; ++pos_; return; }
    if (c == '|') { current_ = {ExprToken::Pipe, "", 0}; ++pos_; return; }
    if (c == '*') { current_ = {ExprToken::Star, "", 0}; ++pos_; return; }
    current_ = {ExprToken::Atom, read_label(), 0};
    if (pos_ < text_.size() && text_[pos_] == '@') {
      ++pos_;
      current_.mark = read_mark();
    }
  }

  std::string read_label() {
    std::size_t start = pos_;
    if (text_[pos_] == '{') {
      std::size_t close = text_.find('}', pos_);
      if (close == std::string::npos)
        throw FormatError("unterminated '{' in expression");
      pos_ = close + 1;
      return text_.substr(start, pos_ - start);
    }
    auto is_plain = [](char ch) {
      return !std::isspace(static_cast<unsigned char>(ch)) && ch != '(' &&
             ch != ')' && ch != '|' && ch != '*' && ch != '@';
    };
    while (pos_ < text_.size() && is_plain(text_[pos_])) ++pos_;
    return text_.substr(start, pos_ - start);
  }

  std::int32_t read_mark() {
    std::size_t start = pos_;
    if (pos_ < text_.size() && text_[pos_] == '-') ++pos_;
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    std::int32_t value = 0;
    auto [ptr, ec] = std::from_chars(text_.data() + start,
                                     text_.data() + pos_, value);
    if (ec != std::errc() || ptr != text_.data() + pos_ || pos_ == start)
      throw FormatError("malformed mark after '@' in expression");
    if (value > 0)
      throw PositiveMarkError("expression marks must be non-positive");
    return value;
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  ExprToken current_;
};

struct ExprNode {
  enum class Kind { Atom, Cat, Alt, Star } kind;
  // Atom payload
  Label label;
  std::int32_t mark = 0;
  // Cat/Alt children, Star child
  std::vector<std::unique_ptr<ExprNode>> children;
};

using ExprPtr = std::unique_ptr<ExprNode>;

class ExprParser {
 public:
  ExprParser(const std::string& text, const Alphabet& alphabet)
      : lexer_(text), alphabet_(alphabet) {}

  ExprPtr parse() {
    ExprPtr e = parse_alt();
    if (lexer_.peek().type != ExprToken::End)
      throw FormatError("unexpected ')' in expression");
    return e;
  }

 private:
  ExprPtr parse_alt() {
    std::vector<ExprPtr> branches;
    branches.push_back(parse_cat());
    while (lexer_.peek().type == ExprToken::Pipe) {
      lexer_.take();
      branches.push_back(parse_cat());
    }
    if (branches.size() == 1) return std::move(branches.front());
    auto node = std::make_unique<ExprNode>();
    node->kind = ExprNode::Kind::Alt;
    node->children = std::move(branches);
    return node;
  }

  ExprPtr parse_cat() {
    std::vector<ExprPtr> items;
    items.push_back(parse_postfix());
    while (lexer_.peek().type == ExprToken::Atom ||
           lexer_.peek().type == ExprToken::LParen)
      items.push_back(parse_postfix());
    if (items.size() == 1) return std::move(items.front());
    auto node = std::make_unique<ExprNode>();
    node->kind = ExprNode::Kind::Cat;
    node->children = std::move(items);
    return node;
  }

  ExprPtr parse_postfix() {
    ExprPtr e = parse_primary();
    while (lexer_.peek().type == ExprToken::Star) {
      lexer_.take();
      auto node = std::make_unique<ExprNode>();
      node->kind = ExprNode::Kind::Star;
      node->children.push_back(std::move(e));
      e = std::move(node);
    }
    return e;
  }

  ExprPtr parse_primary() {
    ExprToken t = lexer_.take();
    if (t.type == ExprToken::Atom) {
      auto node = std::make_unique<ExprNode>();
      node->kind = ExprNode::Kind::Atom;
      node->label = parse_label(t.label_text, alphabet_);
      node->mark = t.mark;
      return node;
    }
    if (t.type == ExprToken::LParen) {
      ExprPtr e = parse_alt();
      if (lexer_.take().type != ExprToken::RParen)
        throw FormatError("missing ')' in expression");
      return e;
    }
    throw FormatError("expected a label or '(' in expression");
  }

  ExprLexer lexer_;
  const Alphabet& alphabet_;
};

// Position sets for the position-automaton construction.
struct ExprFacts {
  bool nullable = false;
  std::vector<std::size_t> first;
  std::vector<std::size_t> last;
};

void merge_into(std::vector<std::size_t>& into,
                const std::vector<std::size_t>& from) {
  into.insert(into.end(), from.begin(), from.end());
}

ExprFacts analyze(const ExprNode& node,
                  std::vector<const ExprNode*>& atoms,
                  std::vector<std::vector<std::size_t>>& follow);

ExprFacts analyze_cat(const ExprNode& node,
                      std::vector<const ExprNode*>& atoms,
                      std::vector<std::vector<std::size_t>>& follow) {
  ExprFacts facts;
  facts.nullable = true;
  std::vector<std::size_t> running_last;
  for (const auto& child : node.children) {
    ExprFacts cf = analyze(*child, atoms, follow);
    for (std::size_t p : running_last) merge_into(follow[p - 1], cf.first);
    if (facts.nullable) merge_into(facts.first, cf.first);
    if (cf.nullable) {
      merge_into(running_last, cf.last);
    } else {
      running_last = cf.last;
    }
    facts.nullable = facts.nullable && cf.nullable;
  }
  facts.last = std::move(running_last);
  return facts;
}

ExprFacts analyze(const ExprNode& node,
                  std::vector<const ExprNode*>& atoms,
                  std::vector<std::vector<std::size_t>>& follow) {
  switch (node.kind) {
    case ExprNode::Kind::Atom: {
      std::size_t p = atoms.size() + 1;
      atoms.push_back(&node);
      follow.emplace_back();
      return {false, {p}, {p}};
    }
    case ExprNode::Kind::Alt: {
      ExprFacts facts;
      for (const auto& child : node.children) {
        ExprFacts cf = analyze(*child, atoms, follow);
        facts.nullable = facts.nullable || cf.nullable;
        merge_into(facts.first, cf.first);
        merge_into(facts.last, cf.last);
      }
      return facts;
    }
    case ExprNode::Kind::Cat:
      return analyze_cat(node, atoms, follow);
    case ExprNode::Kind::Star: {
      ExprFacts facts = analyze(*node.children.front(), atoms, follow);
      facts.nullable = true;
      for (std::size_t p : facts.last) merge_into(follow[p - 1], facts.first);
      return facts;
    }
  }
  throw InvariantError("unreachable expression kind");
}

}  // namespace

Machine compile_expr(const std::string& expr, AlphabetRef alphabet) {
  if (!alphabet) throw InvariantError("expression needs an alphabet");
  ExprParser parser(expr, *alphabet);
  ExprPtr root = parser.parse();

  std::vector<const ExprNode*> atoms;
  std::vector<std::vector<std::size_t>> follow;  // follow[p-1] for position p
  ExprFacts facts = analyze(*root, atoms, follow);
  auto dedupe = [](std::vector<std::size_t>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  };
  dedupe(facts.first);
  dedupe(facts.last);
  for (auto& f : follow) dedupe(f);

  // State 0 is initial; position p is state p.  Arcs into position q carry
  // q's label and mark.  The ε of a nullable expression has no machine
  // form and is dropped.
  MachineDraft draft;
  draft.degree = 1;
  draft.alphabet = alphabet;
  draft.num_states = static_cast<StateId>(atoms.size() + 1);
  draft.initials = {0};
  auto arc_into = [&](StateId src, std::size_t q) {
    const ExprNode* atom = atoms[q - 1];
    draft.arcs.push_back(Arc{src, static_cast<StateId>(q), atom->label,
                             MarkVector({atom->mark})});
  };
  for (std::size_t q : facts.first) arc_into(0, q);
  for (std::size_t p = 1; p <= atoms.size(); ++p)
    for (std::size_t q : follow[p - 1]) arc_into(static_cast<StateId>(p), q);
  for (std::size_t p : facts.last)
    draft.finals.push_back(static_cast<StateId>(p));

  Machine machine = merge_terminals(draft);
  if (!has_accepting_path(machine))
    throw EmptyLanguageError("expression denotes no (non-empty) string");
  return machine;
}

namespace {

// Shared .otc reader: alphabet/class/expr lines, '#' comments.
Machine compile_otc(std::istream& in, AlphabetRef fallback) {
  std::vector<std::string> alphabet_tokens;
  bool saw_alphabet = false;
  std::vector<std::pair<std::string, std::vector<std::string>>> class_defs;
  std::string expr_text;
  bool in_expr = false;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    if (in_expr) {
      expr_text += ' ';
      expr_text += line;
      continue;
    }
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw)) continue;
    auto rest_tokens = [&ls] {
      std::vector<std::string> toks;
      std::string t;
      while (ls >> t) toks.push_back(t);
      return toks;
    };
    if (kw == "alphabet") {
      if (saw_alphabet)
        throw FormatError("line " + std::to_string(line_no) +
                          ": duplicate alphabet line");
      alphabet_tokens = rest_tokens();
      if (alphabet_tokens.empty())
        throw FormatError("line " + std::to_string(line_no) +
                          ": alphabet needs at least one symbol");
      saw_alphabet = true;
    } else if (kw == "class") {
      auto toks = rest_tokens();
      if (toks.size() < 2)
        throw FormatError("line " + std::to_string(line_no) +
                          ": class needs a name and members");
      class_defs.emplace_back(
          toks.front(),
          std::vector<std::string>(toks.begin() + 1, toks.end()));
    } else if (kw == "expr") {
      std::getline(ls, expr_text);  // remainder of this line
      in_expr = true;
    } else {
      throw FormatError("line " + std::to_string(line_no) +
                        ": unknown keyword '" + kw + "'");
    }
  }
  if (!in_expr) throw FormatError("constraint document has no expr line");

  AlphabetRef base;
  if (saw_alphabet) {
    base = std::make_shared<const Alphabet>(alphabet_tokens);
  } else if (fallback) {
    base = std::move(fallback);
  } else {
    throw FormatError(
        "constraint document has no alphabet line and no fallback alphabet "
        "was given");
  }

  if (!class_defs.empty()) {
    std::map<std::string, std::vector<SymbolId>> extra;
    for (const auto& [name, members] : class_defs) {
      std::vector<SymbolId> ids;
      ids.reserve(members.size());
      for (const auto& tok : members) ids.push_back(base->id_of(tok));
      if (!extra.emplace(name, std::move(ids)).second)
        throw FormatError("class '" + name + "' defined twice");
    }
    base = std::make_shared<const Alphabet>(base->with_classes(extra));
  }

  return compile_expr(expr_text, base);
}

}  // namespace

Machine compile_constraint_text(const std::string& text,
                                AlphabetRef fallback) {
  std::istringstream in(text);
  return compile_otc(in, std::move(fallback));
}

Machine compile_constraint_file(const std::string& path,
                                AlphabetRef fallback) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path + "' for reading");
  return compile_otc(in, std::move(fallback));
}

// ------------------------------------------------------------------ builders

Machine build_fill(AlphabetRef alphabet) {
  Label empty(alphabet->class_symbols("EMPTY"));
  Label filled(alphabet->class_symbols("FILLED"));
  MarkVector hit({-1});
  MarkVector pass({0});
  std::vector<Arc> arcs;
  for (StateId src : {StateId(0), StateId(1)}) {
    arcs.push_back(Arc{src, 1, empty, hit});
    arcs.push_back(Arc{src, 1, filled, pass});
  }
  return Machine(1, std::move(alphabet), 2, 0, 1, std::move(arcs));
}

Machine build_ons(AlphabetRef alphabet) {
  Label onset(alphabet->class_symbols("ONSET"));
  Label nucleus(alphabet->class_symbols("NUCLEUS"));
  Label coda(alphabet->class_symbols("CODA"));
  MarkVector hit({-1});
  MarkVector pass({0});

  // 0 = start, 1 = right after an onset slot, 2 = anywhere else.  A
  // nucleus is licensed from state 1 only.
  MachineDraft draft;
  draft.degree = 1;
  draft.alphabet = std::move(alphabet);
  draft.num_states = 3;
  draft.initials = {0};
  draft.finals = {1, 2};
  for (StateId src : {StateId(0), StateId(1), StateId(2)}) {
    draft.arcs.push_back(Arc{src, 1, onset, pass});
    draft.arcs.push_back(Arc{src, 2, nucleus, src == 1 ? pass : hit});
    draft.arcs.push_back(Arc{src, 2, coda, pass});
  }
  return merge_terminals(draft);
}

Machine build_nointervening(AlphabetRef alphabet, const Label& target,
                            Edge edge) {
  if (target.empty())
    throw InvariantError("nointervening target must be non-empty");
  std::vector<SymbolId> others_syms;
  for (SymbolId s = 0; s < alphabet->size(); ++s)
    if (!target.contains(s)) others_syms.push_back(s);
  Label any(alphabet->class_symbols(Alphabet::kWildcard));
  MarkVector hit({-1});
  MarkVector pass({0});

  // States 0,1: strings containing the target, counting the symbols
  // between it and the edge.  State 2: target-free strings, no marks.
  MachineDraft draft;
  draft.degree = 1;
  draft.alphabet = alphabet;
  draft.num_states = 3;
  draft.initials = {0, 2};
  draft.finals = {1, 2};
  if (!others_syms.empty()) {
    Label others(others_syms);
    if (edge == Edge::Left)
      draft.arcs.push_back(Arc{0, 0, others, hit});
    else
      draft.arcs.push_back(Arc{1, 1, others, hit});
    draft.arcs.push_back(Arc{2, 2, others, pass});
  }
  draft.arcs.push_back(Arc{0, 1, target, pass});
  if (edge == Edge::Left)
    draft.arcs.push_back(Arc{1, 1, any, pass});
  else
    draft.arcs.push_back(Arc{0, 0, any, pass});
  return merge_terminals(draft);
}

Machine build_gen_syllabification(const std::vector<std::string>& segments,
                                  const std::vector<std::string>& vowels) {
  if (segments.empty())
    throw InvariantError("syllabification needs at least one segment");
  std::set<std::string> segment_set(segments.begin(), segments.end());
  std::set<std::string> vowel_set(vowels.begin(), vowels.end());
  for (const auto& v : vowels)
    if (!segment_set.count(v))
      throw InvariantError("vowel '" + v + "' is not among the segments");
  if (segment_set.count("0"))
    throw InvariantError("segment token '0' is reserved for unfilled slots");

  // Alphabet: roles for each distinct segment in order of first
  // occurrence, then the unfilled-slot symbols.
  std::vector<std::string> tokens;
  std::set<std::string> seen;
  auto is_vowel = [&](const std::string& s) { return vowel_set.count(s) > 0; };
  for (const auto& s : segments) {
    if (!seen.insert(s).second) continue;
    if (is_vowel(s)) {
      tokens.push_back("N:" + s);
    } else {
      tokens.push_back("O:" + s);
      tokens.push_back("C:" + s);
    }
  }
  tokens.push_back("O:0");
  tokens.push_back("C:0");

  std::map<std::string, std::vector<SymbolId>> classes;
  auto add_to = [&](const std::string& name, SymbolId id) {
    classes[name].push_back(id);
  };
  for (SymbolId id = 0; id < tokens.size(); ++id) {
    const std::string& tok = tokens[id];
    switch (tok[0]) {
      case 'O': add_to("ONSET", id); break;
      case 'N': add_to("NUCLEUS", id); break;
      case 'C': add_to("CODA", id); break;
    }
    if (tok.size() > 2 && tok.compare(2, std::string::npos, "0") == 0)
      add_to("EMPTY", id);
    else
      add_to("FILLED", id);
  }
  auto alphabet =
      std::make_shared<const Alphabet>(std::move(tokens), std::move(classes));

  // States track (position in the segment string, syllable context):
  //   Closed      - between syllables, or after a coda slot
  //   Coda        - after a nucleus; a coda slot may still be added
  //   NeedNucleus - after an onset slot; only a nucleus may follow
  enum Ctx { Closed = 0, Coda = 1, NeedNucleus = 2 };
  const std::size_t n = segments.size();
  auto state = [&](std::size_t i, Ctx c) {
    return static_cast<StateId>(i * 3 + c);
  };
  auto sym = [&](const std::string& role, const std::string& seg) {
    return Label::single(alphabet->id_of(role + ":" + seg));
  };
  MarkVector none(std::vector<std::int32_t>{});

  MachineDraft draft;
  draft.degree = 0;
  draft.alphabet = alphabet;
  draft.num_states = static_cast<StateId>(3 * (n + 1));
  draft.initials = {state(0, Closed)};
  draft.finals = {state(n, Coda), state(n, Closed)};
  auto arc = [&](StateId src, StateId dst, Label l) {
    draft.arcs.push_back(Arc{src, dst, std::move(l), none});
  };
  for (std::size_t i = 0; i <= n; ++i) {
    const bool more = i < n;
    for (Ctx open : {Closed, Coda}) {
      if (more && is_vowel(segments[i])) {
        // Next segment becomes a nucleus, with or without an onset slot.
        arc(state(i, open), state(i + 1, Coda), sym("N", segments[i]));
        arc(state(i, open), state(i, NeedNucleus), sym("O", "0"));
      }
      if (more && !is_vowel(segments[i]) && i + 1 < n &&
          is_vowel(segments[i + 1]))
        arc(state(i, open), state(i + 1, NeedNucleus), sym("O", segments[i]));
    }
    if (more && !is_vowel(segments[i]))
      arc(state(i, Coda), state(i + 1, Closed), sym("C", segments[i]));
    // An unfilled coda closes a syllable only at the right edge or
    // before a consonant.
    if (!more || !is_vowel(segments[i]))
      arc(state(i, Coda), state(i, Closed), sym("C", "0"));
    if (more && is_vowel(segments[i]))
      arc(state(i, NeedNucleus), state(i + 1, Coda), sym("N", segments[i]));
  }
  return trim(merge_terminals(draft));
}

}  // namespace otfsm
