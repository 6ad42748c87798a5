// harmony.hh - sorted-mark-list harmony: the general (possibly non-binary)
// comparison that the oracle ranks candidates with, plus the decomposition
// of a many-mark constraint into an ordered family of binary ones.
#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "otfsm/marks.hh"

namespace otfsm {

using MarkId = std::uint32_t;

// Totally ordered finite set of mark tokens, most harmonic first.
// Index 0 is always the zero mark: maximally harmonic, shared by all
// constraints, and the value padding is done with.
class MarkAlphabet {
 public:
  explicit MarkAlphabet(std::vector<std::string> marks);

  std::size_t size() const { return marks_.size(); }
  const std::string& token(MarkId id) const { return marks_.at(id); }
  const std::string& zero() const { return marks_.front(); }
  MarkId id_of(const std::string& token) const;  // throws UnknownSymbolError

  bool operator==(const MarkAlphabet& other) const {
    return marks_ == other.marks_;
  }

 private:
  std::vector<std::string> marks_;
};

using MarkAlphabetRef = std::shared_ptr<const MarkAlphabet>;

// Finite sequence of marks a constraint assigned to one candidate.
// Order of items is immaterial to comparison (sorting canonicalizes).
class MarkList {
 public:
  MarkList(MarkAlphabetRef alphabet, std::vector<MarkId> items);
  static MarkList from_tokens(const MarkAlphabetRef& alphabet,
                              const std::vector<std::string>& tokens);

  const MarkAlphabetRef& alphabet() const { return alphabet_; }
  const std::vector<MarkId>& items() const { return items_; }
  std::size_t size() const { return items_.size(); }

  std::string text() const;  // tokens joined by spaces

 private:
  MarkAlphabetRef alphabet_;
  std::vector<MarkId> items_;
};

// Sorted comparison: both lists are sorted into increasing harmony (least
// harmonic mark first), the shorter is padded with the zero mark, and the
// first position where they differ decides.  Greater means `a` is the more
// harmonic.  Throws AlphabetMismatchError unless both lists share a mark
// alphabet.
Ordering list_compare(const MarkList& a, const MarkList& b);

// Keeps only occurrences of the given non-zero mark, replaces everything
// else with the zero mark, and re-sorts.  Length is preserved.
MarkList filter_marks(const MarkList& l, MarkId mark);

// Splits a list over an N-mark alphabet into N-1 binary lists, one per
// non-zero mark, most disharmonic mark first.  Ranking candidates by the
// components in that order reproduces the single-list ranking.
std::vector<MarkList> decompose(const MarkList& l);

// Lexicographic combination of component comparisons, dominant component
// first; the counterpart of decompose() on the comparison side.
Ordering combined_compare(const std::vector<MarkList>& a,
                          const std::vector<MarkList>& b);

}  // namespace otfsm
