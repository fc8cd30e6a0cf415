// SPDX-License-Identifier: MIT
#pragma once

#include <cstddef>
#include <vector>

#include "glp/interp.hpp"
#include "glp/levelmap.hpp"
#include "glp/program.hpp"
#include "glp/report.hpp"

namespace glp {

// Universe and effort bounds for level comparisons.
struct CompareEnv {
  Signature sig;
  int depth = 3;                    // staged enumeration up to this depth
  std::size_t instance_cap = 20000; // per-stage ground instance cap
  std::size_t case_cap = 64;        // guard case-split cap (symbolic path)
  std::size_t row_cap = 4000;       // inequality row cap (symbolic path)
  bool symbolic = true;             // false: go straight to enumeration
  bool crosscheck = false;          // re-verify symbolic proofs by
                                    // enumeration; contradiction throws

  CompareEnv() = default;
  explicit CompareEnv(Signature s) : sig(std::move(s)) {}
};

// Decides whether |head| > |body[i]| (strict) resp. >= holds for every
// ground instance of the clause over the signature's Herbrand universe
// whose guard holds.  The guard is the designated prefix of the body
// (indices in guard_prefix, defaulting to 0..i-1 when an interpretation is
// given and to the empty prefix otherwise); atom literals in it are judged
// by *guard, constraints by the free equality theory.  Head and body
// literal may be measured by different level maps.
//
// The symbolic path turns both levels into linear forms over spine
// measures, translates guard facts into structural knowledge and linear
// rows, and proves the difference by Fourier-Motzkin elimination; success
// is ProvedSymbolic.  Otherwise ground instances are checked at staged
// universe depths: a violation yields Refuted with a replayable witness,
// exhaustion yields VerifiedToBound.  Annotation gaps yield Invalid.
// Throws ResourceError only when not even the first stage fits the caps.
CheckReport compare_levels(const LevelMapSpec& head_spec,
                           const LevelMapSpec& body_spec,
                           const Clause& clause, std::size_t i, bool strict,
                           const InterpretationSpec* guard,
                           const CompareEnv& env,
                           const std::vector<std::size_t>* guard_prefix =
                               nullptr);

CheckReport compare_levels(const LevelMapSpec& spec, const Clause& clause,
                           std::size_t i, bool strict,
                           const InterpretationSpec* guard,
                           const CompareEnv& env);

// True when every ground instance of the clause whose body holds in I also
// has its head in I.  The body conditions are case-split into facts and
// linear rows, and the head condition is derived from them per case.
// Sound, incomplete.  Throws AnnotationError when I lacks a condition for
// a relation of the clause.
bool models_clause_symbolic(const InterpretationSpec& I, const Clause& c,
                            const CompareEnv& env);

}  // namespace glp
