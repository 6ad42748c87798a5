#include "otfsm/machine_io.hh"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "otfsm/errors.hh"

namespace otfsm {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

[[noreturn]] void fail(std::size_t line_no, const std::string& what) {
  throw FormatError("line " + std::to_string(line_no) + ": " + what);
}

std::uint64_t parse_uint(const std::string& tok, std::size_t line_no) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    fail(line_no, "expected a non-negative integer, got '" + tok + "'");
  return value;
}

std::int32_t parse_mark(const std::string& tok, std::size_t line_no) {
  std::int32_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    fail(line_no, "expected an integer mark, got '" + tok + "'");
  return value;
}

}  // namespace

Label parse_label(const std::string& text, const Alphabet& alphabet) {
  if (text.empty()) throw FormatError("empty label");
  if (text.front() == '{') {
    if (text.size() < 3 || text.back() != '}')
      throw FormatError("malformed label set '" + text + "'");
    std::vector<SymbolId> ids;
    std::string body = text.substr(1, text.size() - 2);
    std::size_t pos = 0;
    while (pos <= body.size()) {
      std::size_t comma = body.find(',', pos);
      std::string item = body.substr(
          pos, comma == std::string::npos ? std::string::npos : comma - pos);
      if (item.empty())
        throw FormatError("malformed label set '" + text + "'");
      ids.push_back(alphabet.id_of(item));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    return Label(std::move(ids));
  }
  if (auto id = alphabet.find(text)) return Label::single(*id);
  if (alphabet.has_class(text)) return Label(alphabet.class_symbols(text));
  throw UnknownSymbolError("'" + text +
                           "' names neither a symbol nor a class");
}

Machine load_machine(std::istream& in) {
  std::optional<std::size_t> degree;
  std::vector<std::string> alphabet_tokens;
  bool saw_alphabet = false;
  std::vector<std::pair<std::string, std::vector<std::string>>> class_defs;
  AlphabetRef alphabet;  // built lazily once arcs begin

  // File ids may be sparse; they are mapped to dense ids in numeric order
  // once the whole document is read, so files that already use 0..n-1
  // keep their numbering exactly.
  std::map<std::uint64_t, StateId> id_map;
  auto state_of = [&id_map](std::uint64_t file_id) {
    id_map.try_emplace(file_id, 0);
    return file_id;
  };

  std::vector<std::uint64_t> initials;
  std::vector<std::uint64_t> finals;
  struct RawArc {
    std::uint64_t src;
    std::uint64_t dst;
    Label label;
    MarkVector marks;
  };
  std::vector<RawArc> arcs;

  auto resolve_alphabet = [&](std::size_t line_no) -> const Alphabet& {
    if (!alphabet) {
      if (!saw_alphabet) fail(line_no, "arc before alphabet line");
      auto symbol_id = [&](const std::string& tok) -> SymbolId {
        auto it =
            std::find(alphabet_tokens.begin(), alphabet_tokens.end(), tok);
        if (it == alphabet_tokens.end())
          fail(line_no, "class member '" + tok + "' is not in the alphabet");
        return static_cast<SymbolId>(it - alphabet_tokens.begin());
      };
      std::map<std::string, std::vector<SymbolId>> classes;
      for (auto& [name, members] : class_defs) {
        std::vector<SymbolId> ids;
        ids.reserve(members.size());
        for (const auto& tok : members) ids.push_back(symbol_id(tok));
        if (!classes.emplace(name, std::move(ids)).second)
          fail(line_no, "class '" + name + "' defined twice");
      }
      try {
        alphabet =
            std::make_shared<const Alphabet>(alphabet_tokens, std::move(classes));
      } catch (const Error& e) {
        fail(line_no, e.what());
      }
    }
    return *alphabet;
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    auto toks = tokenize(line);
    if (toks.empty()) continue;
    const std::string& kw = toks[0];

    if (kw == "degree") {
      if (degree) fail(line_no, "duplicate degree line");
      if (toks.size() != 2) fail(line_no, "degree takes one value");
      degree = static_cast<std::size_t>(parse_uint(toks[1], line_no));
    } else if (kw == "alphabet") {
      if (saw_alphabet) fail(line_no, "duplicate alphabet line");
      if (toks.size() < 2) fail(line_no, "alphabet needs at least one symbol");
      alphabet_tokens.assign(toks.begin() + 1, toks.end());
      saw_alphabet = true;
    } else if (kw == "class") {
      if (alphabet) fail(line_no, "class line after first arc");
      if (toks.size() < 3) fail(line_no, "class needs a name and members");
      class_defs.emplace_back(
          toks[1], std::vector<std::string>(toks.begin() + 2, toks.end()));
    } else if (kw == "initial") {
      if (toks.size() != 2) fail(line_no, "initial takes one state id");
      initials.push_back(state_of(parse_uint(toks[1], line_no)));
    } else if (kw == "final") {
      if (toks.size() != 2) fail(line_no, "final takes one state id");
      finals.push_back(state_of(parse_uint(toks[1], line_no)));
    } else if (kw == "arc") {
      if (!degree) fail(line_no, "arc before degree line");
      if (toks.size() != 4 + *degree)
        fail(line_no, "arc needs src, dst, label and " +
                          std::to_string(*degree) + " mark(s)");
      const Alphabet& ab = resolve_alphabet(line_no);
      std::uint64_t src = state_of(parse_uint(toks[1], line_no));
      std::uint64_t dst = state_of(parse_uint(toks[2], line_no));
      Label label = [&] {
        try {
          return parse_label(toks[3], ab);
        } catch (const FormatError& e) {
          fail(line_no, e.what());
        }
      }();
      std::vector<std::int32_t> marks(*degree);
      for (std::size_t i = 0; i < *degree; ++i)
        marks[i] = parse_mark(toks[4 + i], line_no);
      arcs.push_back(
          RawArc{src, dst, std::move(label), MarkVector(std::move(marks))});
    } else {
      fail(line_no, "unknown keyword '" + kw + "'");
    }
  }

  if (!degree) throw FormatError("missing degree line");
  if (!saw_alphabet) throw FormatError("missing alphabet line");
  if (initials.empty()) throw FormatError("missing initial line");
  if (finals.empty()) throw FormatError("missing final line");
  resolve_alphabet(line_no);  // machines without arcs still need it

  StateId next_id = 0;
  for (auto& [file_id, dense] : id_map) dense = next_id++;
  auto dense_of = [&id_map](std::uint64_t file_id) {
    return id_map.at(file_id);
  };

  std::sort(initials.begin(), initials.end());
  initials.erase(std::unique(initials.begin(), initials.end()),
                 initials.end());
  std::sort(finals.begin(), finals.end());
  finals.erase(std::unique(finals.begin(), finals.end()), finals.end());

  MachineDraft draft;
  draft.degree = static_cast<std::uint32_t>(*degree);
  draft.alphabet = alphabet;
  draft.num_states = static_cast<StateId>(id_map.size());
  for (std::uint64_t s : initials) draft.initials.push_back(dense_of(s));
  for (std::uint64_t s : finals) draft.finals.push_back(dense_of(s));
  for (RawArc& a : arcs)
    draft.arcs.push_back(Arc{dense_of(a.src), dense_of(a.dst),
                             std::move(a.label), std::move(a.marks)});
  return merge_terminals(draft);
}

Machine load_machine_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path + "' for reading");
  return load_machine(in);
}

void save_machine(std::ostream& out, const Machine& machine,
                  const std::vector<std::string>& header_comments) {
  for (const auto& c : header_comments) out << "# " << c << "\n";
  const Alphabet& ab = *machine.alphabet();
  out << "degree " << machine.degree() << "\n";
  out << "alphabet";
  for (const auto& tok : ab.tokens()) out << ' ' << tok;
  out << "\n";
  for (const auto& [name, members] : ab.classes()) {
    if (name == Alphabet::kWildcard) continue;
    out << "class " << name;
    for (SymbolId s : members) out << ' ' << ab.token(s);
    out << "\n";
  }
  out << "initial " << machine.initial() << "\n";
  out << "final " << machine.final_state() << "\n";
  for (const Arc& a : machine.arcs()) {
    out << "arc " << a.src << ' ' << a.dst << ' '
        << label_text(a.label, ab);
    for (std::int32_t m : a.marks.entries()) out << ' ' << m;
    out << "\n";
  }
}

void save_machine_file(const std::string& path, const Machine& machine,
                       const std::vector<std::string>& header_comments) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot open '" + path + "' for writing");
  save_machine(out, machine, header_comments);
  if (!out) throw FormatError("write to '" + path + "' failed");
}

std::string machine_text(const Machine& machine,
                         const std::vector<std::string>& header_comments) {
  std::ostringstream out;
  save_machine(out, machine, header_comments);
  return out.str();
}

}  // namespace otfsm
