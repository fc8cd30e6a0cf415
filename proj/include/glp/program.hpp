// SPDX-License-Identifier: MIT
#pragma once

#include <set>
#include <string>
#include <vector>

#include "glp/term.hpp"

namespace glp {

// Relation identifier: name plus arity.
struct Rel {
  std::string name;
  std::size_t arity = 0;
  auto operator<=>(const Rel&) const = default;
  std::string str() const { return name + "/" + std::to_string(arity); }
};

struct Atom {
  std::string rel;
  TermVec args;

  Rel rel_id() const { return Rel{rel, args.size()}; }
  Term as_term() const { return Term::compound(rel, args); }
  static Atom from_term(const Term& t) { return Atom{t.name(), t.args()}; }

  bool ground() const;
  Atom apply(const Substitution& s) const;
  void collect_variables(std::vector<std::string>& out) const;
  bool operator==(const Atom& o) const;
  std::string str() const;
};

// Body literal: positive atom, negated atom, equality, or inequality.
// An inequality may carry universally quantified variables (`univ`), as in
// forall([L], A \= move(a,L)); plain s \= t has empty `univ`.
struct Literal {
  enum class Kind { Pos, Neg, Eq, Ineq };
  Kind kind = Kind::Pos;
  Atom atom;            // Pos, Neg
  Term lhs, rhs;        // Eq, Ineq
  std::vector<std::string> univ;  // Ineq only

  static Literal pos(Atom a) { return {Kind::Pos, std::move(a), {}, {}, {}}; }
  static Literal neg(Atom a) { return {Kind::Neg, std::move(a), {}, {}, {}}; }
  static Literal eq(Term l, Term r) {
    return {Kind::Eq, {}, std::move(l), std::move(r), {}};
  }
  static Literal ineq(Term l, Term r, std::vector<std::string> univ = {}) {
    return {Kind::Ineq, {}, std::move(l), std::move(r), std::move(univ)};
  }

  bool is_atomlit() const { return kind == Kind::Pos || kind == Kind::Neg; }
  bool is_constraint() const { return !is_atomlit(); }

  // Free variables (universally quantified ones excluded).
  void collect_variables(std::vector<std::string>& out) const;

  // Bindings for `univ` names are dropped; callers keep universal variables
  // fresh so capture cannot occur.
  Literal apply(const Substitution& s) const;

  bool operator==(const Literal& o) const;
  std::string str() const;
};

struct Clause {
  int id = 0;
  Atom head;
  std::vector<Literal> body;

  void collect_variables(std::vector<std::string>& out) const;
  std::vector<std::string> variables() const;
  Clause apply(const Substitution& s) const;
  std::string str() const;  // "head :- b1,...,bn." / "head." (no id)
};

Clause rename_apart(const Clause& c, std::size_t& counter);
bool alpha_equal(const Clause& a, const Clause& b);

// Function symbols occurring in a program or query (constants = arity 0).
struct Signature {
  std::set<Rel> functions;

  std::vector<Rel> constants() const;
  bool has_constants() const;
  void merge(const Signature& o);
};

struct Program {
  std::vector<Clause> clauses;

  std::set<Rel> defined_relations() const;  // relations with a clause head
  std::set<Rel> relations() const;          // all relations occurring
  std::vector<const Clause*> clauses_for(const Rel& r) const;
  const Clause* clause_by_id(int id) const;
  Signature signature() const;
  std::string str() const;  // parseable listing
};

bool alpha_equal(const Program& a, const Program& b);  // clausewise, in order

void collect_signature(const Term& t, Signature& sig);

}  // namespace glp
