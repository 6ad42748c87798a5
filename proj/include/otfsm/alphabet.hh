// alphabet.hh - symbol alphabets, symbol classes and arc labels
#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace otfsm {

using SymbolId = std::uint32_t;

// Finite ordered set of symbol tokens plus named classes (subsets).
// Immutable after construction; share via AlphabetRef.  The wildcard
// class kWildcard is always defined and covers every symbol.
class Alphabet {
 public:
  static constexpr const char* kWildcard = "ANY";

  explicit Alphabet(std::vector<std::string> symbols,
                    std::map<std::string, std::vector<SymbolId>> classes = {});

  std::size_t size() const { return symbols_.size(); }
  const std::string& token(SymbolId id) const { return symbols_.at(id); }
  const std::vector<std::string>& tokens() const { return symbols_; }

  bool has(const std::string& token) const;
  // Throws UnknownSymbolError for tokens outside the alphabet.
  SymbolId id_of(const std::string& token) const;
  std::optional<SymbolId> find(const std::string& token) const;

  bool has_class(const std::string& name) const;
  // Symbols of a class, sorted by id.  Throws UnknownClassError.
  const std::vector<SymbolId>& class_symbols(const std::string& name) const;
  const std::map<std::string, std::vector<SymbolId>>& classes() const {
    return classes_;
  }

  // Same symbol sequence; classes may differ.  This is the compatibility
  // notion used by products and shared-alphabet preconditions.
  bool same_symbols(const Alphabet& other) const {
    return symbols_ == other.symbols_;
  }

  // Copy of this alphabet with extra class definitions merged in.
  Alphabet with_classes(
      const std::map<std::string, std::vector<SymbolId>>& extra) const;

 private:
  std::vector<std::string> symbols_;
  std::map<std::string, SymbolId> index_;
  std::map<std::string, std::vector<SymbolId>> classes_;
};

using AlphabetRef = std::shared_ptr<const Alphabet>;

// Non-empty set of symbols carried by one arc, kept sorted and unique.
struct Label {
  std::vector<SymbolId> symbols;

  Label() = default;
  explicit Label(std::vector<SymbolId> syms);
  static Label single(SymbolId s) { return Label({s}); }

  bool empty() const { return symbols.empty(); }
  std::size_t size() const { return symbols.size(); }
  bool contains(SymbolId s) const;

  bool operator==(const Label&) const = default;
};

Label intersect(const Label& a, const Label& b);

// Render a label in the text-format syntax: bare token or {t1,t2,...}.
std::string label_text(const Label& label, const Alphabet& alphabet);

}  // namespace otfsm
