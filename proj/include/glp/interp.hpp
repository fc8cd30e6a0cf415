// SPDX-License-Identifier: MIT
#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "glp/herbrand.hpp"
#include "glp/levelmap.hpp"
#include "glp/program.hpp"

namespace glp {

// Condition over the arguments of a ground atom:
//   all | none | elem(argI, argJ) | in_set(argI, @Set) | same(argI, argJ)
//   | is_list(argI) | e <op> e | and(c,...) | or(c,...) | not(c)
// Comparisons use plain integer arithmetic over level expressions
// (no truncation), so len(arg1) - len(arg2) may be negative.
struct Cond {
  enum class Kind { All, None, Elem, InSet, Same, IsList, Cmp, And, Or, Not };
  enum class Op { Eq, Lt, Le, Gt, Ge };

  Kind kind = Kind::All;
  std::size_t arg = 0, arg2 = 0;  // 1-based argument positions
  std::string set_name;
  Op op = Op::Eq;
  std::vector<LevelExpr> cmp;  // Cmp: lhs, rhs
  std::vector<Cond> children;  // And/Or: >= 1, Not: 1

  static Cond all();
  static Cond none();
  static Cond elem(std::size_t arg, std::size_t arg2);
  static Cond in_set(std::size_t arg, std::string set);
  static Cond same(std::size_t arg, std::size_t arg2);
  static Cond is_list(std::size_t arg);
  static Cond compare(LevelExpr lhs, Op op, LevelExpr rhs);
  static Cond conj(std::vector<Cond> cs);
  static Cond disj(std::vector<Cond> cs);
  static Cond negate(Cond c);

  std::string str() const;
};

// Herbrand interpretation given by one condition per relation.  Truth of a
// ground atom is decidable; relations without a condition are outside the
// spec and asking about them is an error (AnnotationError).
struct InterpretationSpec {
  std::map<Rel, Cond> conds;
  std::map<std::string, std::vector<Term>> sets;

  bool total_on(const std::set<Rel>& rels) const;
  const Cond& cond_for(const Rel& r) const;  // throws AnnotationError

  bool holds(const Atom& ground_atom) const;
  // Neg: complement of the atom.  Ground constraints get their one
  // interpretation-independent truth value.
  bool holds(const Literal& ground_lit) const;
};

bool holds_all(const InterpretationSpec& I, const std::vector<Literal>& lits);

// Enumerates the ground atoms of `rel` that are true in I and whose
// arguments lie in `slice`.  Sparse conditions (none, elem, in_set, same,
// is_list, and conjunctions/disjunctions built from them) avoid scanning
// slice^arity; otherwise candidates come from the full odometer.  Stops and
// returns false when fn returns false.  Throws ResourceError when more than
// `cap` candidate tuples would be generated.
bool enumerate_extension(const InterpretationSpec& I, const Rel& rel,
                         const HerbrandSlice& slice, std::size_t cap,
                         const std::function<bool(const Atom&)>& fn);

}  // namespace glp
