// alphabet.cc
#include "otfsm/alphabet.hh"

#include <algorithm>

#include "otfsm/errors.hh"

namespace otfsm {

Alphabet::Alphabet(std::vector<std::string> symbols,
                   std::map<std::string, std::vector<SymbolId>> classes)
    : symbols_(std::move(symbols)), classes_(std::move(classes)) {
  for (SymbolId i = 0; i < symbols_.size(); ++i) {
    const std::string& tok = symbols_[i];
    if (tok.empty()) throw InvariantError("alphabet symbol token is empty");
    if (tok.find_first_of(" \t\r\n") != std::string::npos)
      throw InvariantError("alphabet symbol contains whitespace: '" + tok + "'");
    if (!index_.emplace(tok, i).second)
      throw InvariantError("duplicate alphabet symbol: '" + tok + "'");
  }
  for (auto& [name, members] : classes_) {
    if (members.empty())
      throw InvariantError("class '" + name + "' is empty");
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    for (SymbolId s : members)
      if (s >= symbols_.size())
        throw InvariantError("class '" + name + "' references unknown symbol id");
  }
  // The wildcard class always exists and covers the whole alphabet.
  std::vector<SymbolId> all(symbols_.size());
  for (SymbolId i = 0; i < symbols_.size(); ++i) all[i] = i;
  auto it = classes_.find(kWildcard);
  if (it == classes_.end()) {
    classes_.emplace(kWildcard, std::move(all));
  } else if (it->second != all) {
    throw InvariantError("class 'ANY' must cover the whole alphabet");
  }
}

bool Alphabet::has(const std::string& token) const {
  return index_.count(token) != 0;
}

SymbolId Alphabet::id_of(const std::string& token) const {
  auto it = index_.find(token);
  if (it == index_.end())
    throw UnknownSymbolError("symbol '" + token + "' is not in the alphabet");
  return it->second;
}

std::optional<SymbolId> Alphabet::find(const std::string& token) const {
  auto it = index_.find(token);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool Alphabet::has_class(const std::string& name) const {
  return classes_.count(name) != 0;
}

const std::vector<SymbolId>& Alphabet::class_symbols(
    const std::string& name) const {
  auto it = classes_.find(name);
  if (it == classes_.end())
    throw UnknownClassError("class '" + name + "' is not defined");
  return it->second;
}

Alphabet Alphabet::with_classes(
    const std::map<std::string, std::vector<SymbolId>>& extra) const {
  auto merged = classes_;
  for (const auto& [name, members] : extra) merged[name] = members;
  return Alphabet(symbols_, std::move(merged));
}

Label::Label(std::vector<SymbolId> syms) : symbols(std::move(syms)) {
  std::sort(symbols.begin(), symbols.end());
  symbols.erase(std::unique(symbols.begin(), symbols.end()), symbols.end());
}

bool Label::contains(SymbolId s) const {
  return std::binary_search(symbols.begin(), symbols.end(), s);
}

Label intersect(const Label& a, const Label& b) {
  Label out;
  std::set_intersection(a.symbols.begin(), a.symbols.end(), b.symbols.begin(),
                        b.symbols.end(), std::back_inserter(out.symbols));
  return out;
}

std::string label_text(const Label& label, const Alphabet& alphabet) {
  if (label.size() == 1) return alphabet.token(label.symbols[0]);
  std::string out = "{";
  for (std::size_t i = 0; i < label.symbols.size(); ++i) {
    if (i) out += ',';
    out += alphabet.token(label.symbols[i]);
  }
  out += '}';
  return out;
}

}  // namespace otfsm
