// product.hh - machine products over a shared symbol alphabet
#pragma once

#include "otfsm/machine.hh"

namespace otfsm {

// Intersection of two automata (both degree 0).  Throws
// DegreeMismatchError on weighted inputs and AlphabetMismatchError when
// the symbol sequences differ.  The result reuses a's alphabet object
// and is trimmed.
Machine product(const Machine& a, const Machine& b);

// Weighted product in which a dominates: arcs pair up on non-empty label
// intersections and the mark vectors concatenate, a's coordinates first.
// Degree of the result is the sum of the input degrees.  Not commutative.
// Throws AlphabetMismatchError when the symbol sequences differ.  The
// result reuses a's alphabet object and is trimmed.
Machine augmented_product(const Machine& a, const Machine& b);

}  // namespace otfsm
