// marks.hh - fixed-degree harmony vectors and their arithmetic
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace otfsm {

// Result of a harmony comparison: which side is the more harmonic.
enum class Ordering { Less, Equal, Greater };

// Counts harmony comparisons.  label_nodes() threads one of these through
// every comparison it performs so the complexity budget is observable.
struct CompareCounter {
  std::uint64_t count = 0;
};

// One harmony coordinate per constraint, most dominant first.  Entries are
// non-positive: -(number of violations).  Degree-0 vectors (no constraints)
// are legal and compare equal to each other.
class MarkVector {
 public:
  MarkVector() = default;
  explicit MarkVector(std::vector<std::int32_t> entries)
      : entries_(std::move(entries)) {}
  static MarkVector zeros(std::size_t degree) {
    return MarkVector(std::vector<std::int32_t>(degree, 0));
  }

  std::size_t degree() const { return entries_.size(); }
  std::int32_t operator[](std::size_t i) const { return entries_[i]; }
  const std::vector<std::int32_t>& entries() const { return entries_; }

  bool operator==(const MarkVector&) const = default;

 private:
  std::vector<std::int32_t> entries_;
};

// Lexicographic harmony comparison, first coordinate most significant.
// Greater means `a` is the more harmonic.  Throws DegreeMismatchError.
Ordering mv_compare(const MarkVector& a, const MarkVector& b,
                    CompareCounter* counter = nullptr);

// Componentwise sum.  Throws DegreeMismatchError.
MarkVector mv_add(const MarkVector& a, const MarkVector& b);

// a's coordinates followed by b's; degree adds.  Not commutative.
MarkVector mv_concat(const MarkVector& a, const MarkVector& b);

// Renders as "(m1,m2,...)"; degree 0 renders as "()".
std::string mv_text(const MarkVector& v);

}  // namespace otfsm
