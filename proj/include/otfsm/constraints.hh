// constraints.hh - constraint compilation: expression syntax and builders
//
// Expression syntax (weighted regular expressions over the alphabet):
//
//   expr    := alt
//   alt     := cat ('|' cat)*
//   cat     := postfix+
//   postfix := primary '*'*
//   primary := atom | '(' alt ')'
//   atom    := LABEL | LABEL@MARK
//
// LABEL is a symbol token, a class name, or {s1,s2,...}; MARK is a
// non-positive integer (default 0).  Whitespace separates atoms.  The
// machine model has no empty string, so a nullable expression loses ε.
//
// Constraint files (.otc) wrap an expression with its alphabet:
//
//   # comment lines anywhere
//   alphabet s1 s2 ...        (optional when a fallback alphabet is given)
//   class NAME s1 s2 ...      (zero or more)
//   expr REGEX...             (runs to end of file)
#pragma once

#include <string>
#include <vector>

#include "otfsm/machine.hh"

namespace otfsm {

// Compiles an expression to a degree-1 machine via position automata
// (one state per atom occurrence, plus initial; no epsilon arcs).
Machine compile_expr(const std::string& expr, AlphabetRef alphabet);

// Compiles an .otc document.  `fallback` supplies the alphabet when the
// document has no alphabet line; class lines extend either alphabet.
Machine compile_constraint_text(const std::string& text,
                                AlphabetRef fallback = nullptr);
Machine compile_constraint_file(const std::string& path,
                                AlphabetRef fallback = nullptr);

// One mark per unfilled slot.  Needs the EMPTY and FILLED classes.
Machine build_fill(AlphabetRef alphabet);

// One mark per nucleus that is not right after an onset slot.  Needs the
// ONSET, NUCLEUS and CODA classes, which must partition the alphabet.
Machine build_ons(AlphabetRef alphabet);

enum class Edge { Left, Right };

// One mark per symbol between the named edge and the nearest occurrence
// of `target` (the leftmost for Edge::Left, the rightmost for
// Edge::Right).  Strings without the target incur no marks.
Machine build_nointervening(AlphabetRef alphabet, const Label& target,
                            Edge edge);

// Candidate automaton for syllabifying `segments` in order: syllables
// are onset-nucleus-coda with optional onset and coda slots, nuclei are
// underlying vowels, margins are single underlying consonants, and the
// onset or coda slot of a syllable may be structurally present but
// unfilled (the "S:0" symbols).  Unfilled codas are licensed only before
// a consonant or at the right edge, and there are no unfilled nuclei.
// The alphabet is derived from the segments: N:v per vowel, O:c and C:c
// per consonant, plus O:0 and C:0, with classes ONSET, NUCLEUS, CODA,
// EMPTY and FILLED.
Machine build_gen_syllabification(const std::vector<std::string>& segments,
                                  const std::vector<std::string>& vowels);

}  // namespace otfsm
