// SPDX-License-Identifier: MIT
#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "glp/herbrand.hpp"
#include "glp/program.hpp"
#include "glp/term.hpp"

namespace glp {

// Possibly quantified disequation: forall univ (lhs != rhs).  Free variables
// are those of lhs/rhs not listed in univ.
struct Ineq {
  Term lhs, rhs;
  std::vector<std::string> univ;

  // Normalizes univ to the quantified names actually occurring, deduplicated.
  static Ineq of(Term l, Term r, std::vector<std::string> u = {});
  static Ineq from_literal(const Literal& l);
  Literal as_literal() const;

  Ineq apply(const Substitution& s) const;  // univ names are shielded
  void collect_free_variables(std::vector<std::string>& out) const;
  std::vector<std::string> free_variables() const;
  std::string str() const;
};

enum class IneqClass { Valid, Unsatisfiable, Primitive };

// Signature-independent classification: Valid iff the two sides have no
// unifier at all; Unsatisfiable iff they unify binding only quantified
// variables (so every grounding of the free side can be met); Primitive
// otherwise.
IneqClass classify_ineq(const Ineq& q);

// Solver context: the signature fixes the ground universe the constraints
// are interpreted over, the caps bound the satisfiability search.
struct SolverEnv {
  Signature sig;
  int shape_depth = 12;          // functor splits per search path
  std::size_t node_cap = 200000;  // total search nodes

  explicit SolverEnv(Signature s = {}) : sig(std::move(s)) {}
};

// Conjunction of a solved-form substitution and primitive inequalities,
// or the distinguished unsatisfiable store.
class ConstraintStore {
public:
  ConstraintStore() = default;
  static ConstraintStore unsat_store();

  bool unsat() const { return unsat_; }
  bool trivial() const { return !unsat_ && eqs_.empty() && ineqs_.empty(); }
  const Substitution& equalities() const { return eqs_; }
  const std::vector<Ineq>& inequalities() const { return ineqs_; }

  Term apply(const Term& t) const { return eqs_.apply(t); }

  // Parseable rendering: "X = a, X \= b" / "true" / "false".
  std::string str() const;

private:
  Substitution eqs_;
  std::vector<Ineq> ineqs_;
  bool unsat_ = false;

  friend ConstraintStore add_equality(const ConstraintStore&, const Term&,
                                      const Term&, const SolverEnv&);
  friend ConstraintStore add_inequality(const ConstraintStore&, Ineq,
                                        const SolverEnv&);
};

// All mutators return a new store; Unsat is absorbing and every returned
// store is satisfiable over the environment's universe or Unsat.
ConstraintStore add_equality(const ConstraintStore& store, const Term& s,
                             const Term& t, const SolverEnv& env);
ConstraintStore add_inequality(const ConstraintStore& store, Ineq q,
                               const SolverEnv& env);
ConstraintStore conjoin(const ConstraintStore& a, const ConstraintStore& b,
                        const SolverEnv& env);

// Satisfiability over the ground universe of env.sig (a signature without
// constants is read as having one fresh constant).  Exact on function-free
// signatures; with functors the shape search may throw ResourceError when
// env caps are hit, never returning a wrong verdict.
bool satisfiable(const ConstraintStore& store, const SolverEnv& env);

// A ground assignment for the store's free variables witnessing
// satisfiability, or nullopt when unsatisfiable.
std::optional<std::map<std::string, Term>> find_solution(
    const ConstraintStore& store, const SolverEnv& env);

// entails(store, c) iff every solution of the store satisfies c.
// c must be an Eq or Ineq literal.
bool entails(const ConstraintStore& store, const Literal& c,
             const SolverEnv& env);

// Existential projection onto `vars`: bindings of other variables are
// dropped, inequalities not connected to the kept variables are removed,
// and inequality components that only constrain projected-away variables
// are simplified out where the free-equality theory allows.
ConstraintStore project(const ConstraintStore& store,
                        const std::vector<std::string>& vars,
                        const SolverEnv& env);

// Disjunction of satisfiable stores; empty list denotes false.
struct AnswerFormula {
  std::vector<ConstraintStore> disjuncts;
};

// Chan's negation step: given the computed answers for atom a (each store
// projected onto a's variables), returns stores whose disjunction is
// equivalent to the negation of the existentially closed answer disjunction.
// No answers yields the single empty store.  Throws ResourceError if the
// result would exceed max_disjuncts or an answer cannot be normalized.
AnswerFormula negate_answers(const Atom& a,
                             const std::vector<ConstraintStore>& answers,
                             const SolverEnv& env, std::size_t& fresh_counter,
                             std::size_t max_disjuncts = 256);

// Brute-force evaluation used by tests as an oracle.  Universal variables
// in inequalities range over `univ.terms`.
bool satisfied_by(const ConstraintStore& store,
                  const std::map<std::string, Term>& assignment,
                  const HerbrandSlice& univ);

// All assignments of `vars` over the slice satisfying the store.
std::vector<std::map<std::string, Term>> ground_solutions(
    const ConstraintStore& store, const std::vector<std::string>& vars,
    const HerbrandSlice& slice);

}  // namespace glp
