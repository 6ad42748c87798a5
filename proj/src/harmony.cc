// harmony.cc
#include "otfsm/harmony.hh"

#include <algorithm>

#include "otfsm/errors.hh"

namespace otfsm {

MarkAlphabet::MarkAlphabet(std::vector<std::string> marks)
    : marks_(std::move(marks)) {
  if (marks_.empty())
    throw InvariantError("mark alphabet needs at least the zero mark");
  for (std::size_t i = 0; i < marks_.size(); ++i)
    for (std::size_t j = i + 1; j < marks_.size(); ++j)
      if (marks_[i] == marks_[j])
        throw InvariantError("duplicate mark token: '" + marks_[i] + "'");
}

MarkId MarkAlphabet::id_of(const std::string& token) const {
  for (MarkId i = 0; i < marks_.size(); ++i)
    if (marks_[i] == token) return i;
  throw UnknownSymbolError("mark '" + token + "' is not in the mark alphabet");
}

MarkList::MarkList(MarkAlphabetRef alphabet, std::vector<MarkId> items)
    : alphabet_(std::move(alphabet)), items_(std::move(items)) {
  if (!alphabet_) throw InvariantError("mark list needs a mark alphabet");
  for (MarkId m : items_)
    if (m >= alphabet_->size())
      throw InvariantError("mark id out of range for its alphabet");
}

MarkList MarkList::from_tokens(const MarkAlphabetRef& alphabet,
                               const std::vector<std::string>& tokens) {
  std::vector<MarkId> items;
  items.reserve(tokens.size());
  for (const auto& t : tokens) items.push_back(alphabet->id_of(t));
  return MarkList(alphabet, std::move(items));
}

std::string MarkList::text() const {
  std::string out;
  for (std::size_t i = 0; i < items_.size(); ++i) {
    if (i) out += ' ';
    out += alphabet_->token(items_[i]);
  }
  return out;
}

namespace {

void require_same_alphabet(const MarkList& a, const MarkList& b) {
  if (!(*a.alphabet() == *b.alphabet()))
    throw AlphabetMismatchError(
        "mark lists over different mark alphabets are not comparable");
}

// Items sorted into increasing harmony: highest mark id (least harmonic)
// first, zero marks last.
std::vector<MarkId> sorted_ascending_harmony(const MarkList& l) {
  std::vector<MarkId> items = l.items();
  std::sort(items.begin(), items.end(), std::greater<MarkId>());
  return items;
}

}  // namespace

Ordering list_compare(const MarkList& a, const MarkList& b) {
  require_same_alphabet(a, b);
  std::vector<MarkId> sa = sorted_ascending_harmony(a);
  std::vector<MarkId> sb = sorted_ascending_harmony(b);
  std::size_t n = std::max(sa.size(), sb.size());
  for (std::size_t i = 0; i < n; ++i) {
    MarkId ma = i < sa.size() ? sa[i] : 0;  // pad with the zero mark
    MarkId mb = i < sb.size() ? sb[i] : 0;
    if (ma < mb) return Ordering::Greater;  // lower id = more harmonic
    if (ma > mb) return Ordering::Less;
  }
  return Ordering::Equal;
}

MarkList filter_marks(const MarkList& l, MarkId mark) {
  if (mark == 0 || mark >= l.alphabet()->size())
    throw InvariantError("filter mark must be a non-zero mark of the alphabet");
  std::vector<MarkId> items;
  items.reserve(l.size());
  for (MarkId m : l.items()) items.push_back(m == mark ? mark : 0);
  std::sort(items.begin(), items.end(), std::greater<MarkId>());
  return MarkList(l.alphabet(), std::move(items));
}

std::vector<MarkList> decompose(const MarkList& l) {
  std::size_t n = l.alphabet()->size();
  if (n < 2)
    throw InvariantError("decomposition needs an alphabet of at least 2 marks");
  std::vector<MarkList> out;
  out.reserve(n - 1);
  for (MarkId m = static_cast<MarkId>(n - 1); m >= 1; --m)
    out.push_back(filter_marks(l, m));
  return out;
}

Ordering combined_compare(const std::vector<MarkList>& a,
                          const std::vector<MarkList>& b) {
  if (a.size() != b.size())
    throw DegreeMismatchError("component sequences differ in length");
  for (std::size_t i = 0; i < a.size(); ++i) {
    Ordering o = list_compare(a[i], b[i]);
    if (o != Ordering::Equal) return o;
  }
  return Ordering::Equal;
}

}  // namespace otfsm
