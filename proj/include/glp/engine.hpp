// SPDX-License-Identifier: MIT
#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "glp/constraints.hpp"
#include "glp/program.hpp"

namespace glp {

// How negated atoms are resolved: constructive negation derives answer
// constraints from a fully explored subsidiary tree; negation as failure
// only handles ground negated atoms and flounders otherwise.
enum class SolveMode { ConstructiveNegation, NegationAsFailure };

// A node of the derivation: the remaining literals under a satisfiable
// constraint store.  Primitive inequalities are delayed, so literals in
// front of the first selectable one are always primitive inequalities.
struct Goal {
  std::vector<Literal> literals;
  ConstraintStore store;
};

struct Selection {
  bool all_primitive = false;
  std::size_t index = 0;
};

// Smallest index whose literal is not a primitive inequality relative to
// the goal's store; all_primitive when every literal is one (the goal then
// succeeds with the delayed inequalities folded into the answer).
Selection select_literal(const Goal& g, const SolverEnv& env);

// One element of the outcome stream.  Answer stores are satisfiable and
// projected onto the query's free variables.  Failure is emitted once, and
// only when the whole tree was explored without a single answer.  Flounder,
// BudgetExceeded and ResourceLimit truncate the stream.
struct Outcome {
  enum class Kind { Answer, Failure, Flounder, BudgetExceeded, ResourceLimit };
  Kind kind = Kind::Failure;
  ConstraintStore store;    // Answer
  Atom selected;            // Flounder: the negated atom that was selected
  std::size_t steps = 0;    // BudgetExceeded: steps consumed
  std::string detail;       // ResourceLimit

  static Outcome answer(ConstraintStore s);
  static Outcome failure();
  static Outcome flounder(Atom a);
  static Outcome budget_exceeded(std::size_t steps);
  static Outcome resource_limit(std::string detail);

  std::string str() const;
};

struct SolveOptions {
  SolveMode mode = SolveMode::ConstructiveNegation;
  std::size_t budget = 1'000'000;  // shared by main and subsidiary trees
  std::size_t max_answers = static_cast<std::size_t>(-1);
  std::size_t max_disjuncts = 256;  // negation splitting cap
};

// Solver environment a query is answered in: the program signature extended
// with every symbol of the query, where query atoms are folded in as terms.
// Their relation symbols therefore count as function symbols, deliberately
// leaving the universe open (infinite) for any query with a non-nullary
// relation.  Answer stores returned by solve are satisfiable over exactly
// this environment; use it when comparing stores for equivalence.
SolverEnv env_for_query(const std::vector<Literal>& query, const Program& p);

// Depth-first left-to-right exploration of the derivation tree of `query`
// under the Prolog selection rule generalized to delay primitive
// inequalities.  Subsidiary trees for negated atoms are expanded by
// deterministic round-robin over their frontier, drawing from the same
// budget, so an infinite subsidiary derivation surfaces as BudgetExceeded.
std::vector<Outcome> solve(const std::vector<Literal>& query,
                           const Program& p, const SolveOptions& opts = {});

// True iff solve yields an answer for the ground atom.  Budget or resource
// exhaustion is an error, never false.
bool prove_ground(const Atom& a, const Program& p,
                  std::size_t budget = 1'000'000);

}  // namespace glp
