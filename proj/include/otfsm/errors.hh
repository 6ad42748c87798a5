// errors.hh - exception types shared across the library
#pragma once

#include <stdexcept>
#include <string>

namespace otfsm {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Two operands do not share a symbol alphabet (or mark alphabet).
struct AlphabetMismatchError : Error {
  using Error::Error;
};

// Mark vectors of different degree where equal degree is required.
struct DegreeMismatchError : Error {
  using Error::Error;
};

// An input token is not a symbol of the machine's alphabet.
struct UnknownSymbolError : Error {
  using Error::Error;
};

// A label names a class (or symbol) the alphabet does not define.
struct UnknownClassError : Error {
  using Error::Error;
};

// evaluate() was asked for a string the machine does not accept.
struct NotAcceptedError : Error {
  using Error::Error;
};

// A mark entry > 0; best-path labeling is only correct for non-positive marks.
struct PositiveMarkError : Error {
  using Error::Error;
};

// Enumeration hit its length bound before exhausting the language.
struct TruncationError : Error {
  using Error::Error;
};

// A derivation product has no path from initial to final state.
struct EmptySurfaceError : Error {
  using Error::Error;
};

// A constraint expression denotes no (non-empty) strings.
struct EmptyLanguageError : Error {
  using Error::Error;
};

// Malformed machine or constraint text.
struct FormatError : Error {
  using Error::Error;
};

// A structural invariant of a machine is violated.
struct InvariantError : Error {
  using Error::Error;
};

}  // namespace otfsm
