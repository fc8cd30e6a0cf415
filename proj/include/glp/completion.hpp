// SPDX-License-Identifier: MIT
#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "glp/interp.hpp"
#include "glp/program.hpp"
#include "glp/prover.hpp"
#include "glp/report.hpp"

namespace glp {

// One clause of p, rewritten for the completed definition: fresh head
// parameters constrained by equalities against the original head arguments,
// the clause body, and the clause's own variables as local existentials.
struct CompletedDisjunct {
  int clause_id = 0;
  std::vector<std::pair<Term, Term>> equalities;  // param = head argument
  std::vector<Literal> body;
  std::vector<std::string> locals;
};

// p(X1..Xk) <-> D1 | ... | Dn.  A relation without clauses completes to
// the empty disjunction, i.e. to false.
struct CompletedDefinition {
  Rel relation;
  std::vector<std::string> params;
  std::vector<CompletedDisjunct> disjuncts;

  std::string str() const;
};

CompletedDefinition completed_definition(const Program& p, const Rel& r);

// The least set containing every relation that occurs under negation,
// closed under: head in the set => all body atom relations in the set.
std::set<Rel> neg_set(const Program& p);

// Clauses whose head relation lies in neg_set(p).
Program minus_program(const Program& p);

// Clauses whose head relation lies in s.
Program restrict(const Program& p, const std::set<Rel>& s);

// Checks that I is a model of the completed definitions of the relations
// of s that occur in the program, in two directions:
//   (<-) every clause of the restriction is true in I, clause-wise, which
//        may succeed symbolically (see check_clause_models);
//   (->) every atom in I's extension of such a relation, with arguments
//        from a staged universe slice, is derivable from some disjunct of
//        its completed definition, local existentials ranging one depth
//        deeper when that fits the caps.
// A relation with no clauses completes to false, so any true atom of it
// refutes.  A (->) failure is only a refutation when it is independent of
// the slice (no disjunct unifies, or every unifying disjunct has a ground
// false body); failures that might vanish with deeper locals leave the
// stage undecided and are reported in the log instead.  Throws
// ResourceError only when not even the first stage fits the caps.
CheckReport check_completion_model(const Program& p,
                                   const InterpretationSpec& I,
                                   const std::set<Rel>& s,
                                   const CompareEnv& env);

}  // namespace glp
