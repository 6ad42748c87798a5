// marks.cc
#include "otfsm/marks.hh"

#include "otfsm/errors.hh"

namespace otfsm {

Ordering mv_compare(const MarkVector& a, const MarkVector& b,
                    CompareCounter* counter) {
  if (a.degree() != b.degree())
    throw DegreeMismatchError("cannot compare vectors of degree " +
                              std::to_string(a.degree()) + " and " +
                              std::to_string(b.degree()));
  if (counter) ++counter->count;
  for (std::size_t i = 0; i < a.degree(); ++i) {
    if (a[i] > b[i]) return Ordering::Greater;
    if (a[i] < b[i]) return Ordering::Less;
  }
  return Ordering::Equal;
}

MarkVector mv_add(const MarkVector& a, const MarkVector& b) {
  if (a.degree() != b.degree())
    throw DegreeMismatchError("cannot add vectors of degree " +
                              std::to_string(a.degree()) + " and " +
                              std::to_string(b.degree()));
  std::vector<std::int32_t> out(a.degree());
  for (std::size_t i = 0; i < a.degree(); ++i) out[i] = a[i] + b[i];
  return MarkVector(std::move(out));
}

MarkVector mv_concat(const MarkVector& a, const MarkVector& b) {
  std::vector<std::int32_t> out;
  out.reserve(a.degree() + b.degree());
  out.insert(out.end(), a.entries().begin(), a.entries().end());
  out.insert(out.end(), b.entries().begin(), b.entries().end());
  return MarkVector(std::move(out));
}

std::string mv_text(const MarkVector& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.degree(); ++i) {
    if (i) out += ',';
    out += std::to_string(v[i]);
  }
  out += ')';
  return out;
}

}  // namespace otfsm
