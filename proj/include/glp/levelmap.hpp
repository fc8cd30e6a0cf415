// SPDX-License-Identifier: MIT
#pragma once

#include <map>
#include <string>
#include <vector>

#include "glp/program.hpp"
#include "glp/term.hpp"

namespace glp {

// Level expression over the arguments of an atom:
//   nat | len(argI) | set_count(argI, @Set) | pair_count(argI, argJ)
//   | e + e | e - e (truncated at 0) | n * e
//   | cases(argI) { f/k -> e; ...; default -> e }
// Measures read cons spines: len counts spine cells, set_count counts the
// distinct spine elements lying in a named ground set, pair_count counts the
// distinct spine elements x of argI with a two-element list [x,_] in argJ.
struct LevelExpr {
  enum class Kind { Nat, Len, SetCount, PairCount, Add, Sub, Mul, Cases };
  Kind kind = Kind::Nat;
  long value = 0;                  // Nat value, Mul coefficient
  std::size_t arg = 0, arg2 = 0;   // 1-based argument positions
  std::string set_name;            // SetCount
  std::vector<LevelExpr> children; // Add/Sub: 2, Mul: 1,
                                   // Cases: branches then default
  std::vector<Rel> case_functors;  // Cases: aligned with children[0..n-2]

  static LevelExpr nat(long v);
  static LevelExpr len(std::size_t arg);
  static LevelExpr set_count(std::size_t arg, std::string set);
  static LevelExpr pair_count(std::size_t arg, std::size_t arg2);
  static LevelExpr add(LevelExpr a, LevelExpr b);
  static LevelExpr sub(LevelExpr a, LevelExpr b);
  static LevelExpr mul(long n, LevelExpr e);

  std::string str() const;
};

// Level mapping: one expression per relation, plus the named ground-term
// sets the expressions may reference.  Negated atoms take the atom's value.
struct LevelMapSpec {
  std::map<Rel, LevelExpr> exprs;
  std::map<std::string, std::vector<Term>> sets;

  bool total_on(const std::set<Rel>& rels) const;
  const LevelExpr& expr_for(const Rel& r) const;  // throws AnnotationError
};

// Spine helpers shared by measures, conditions and the symbolic prover.
long spine_len(const Term& t);
std::vector<Term> spine_elements(const Term& t);
bool is_proper_list(const Term& t);
bool spine_determined(const Term& t);  // spine shape fixed under instantiation

// Evaluates a level expression on ground argument terms.
// truncate chooses natural (level) or plain integer (condition) arithmetic.
long eval_expr(const LevelExpr& e, const TermVec& args,
               const std::map<std::string, std::vector<Term>>& sets,
               bool truncate = true);

// Level of a ground Pos/Neg literal.  Throws AnnotationError when the
// relation has no expression; std::invalid_argument on constraints.
long eval_level(const LevelMapSpec& spec, const Literal& lit);
long eval_level(const LevelMapSpec& spec, const Atom& ground_atom);

// True iff the expression's value on `args` is the same for every grounding
// of the remaining variables.  Conservative, never wrongly true.
bool rigid_expr(const LevelExpr& e, const TermVec& args);

// True iff the literal's level is the same for every grounding of its
// remaining variables after applying `fixed`: each measure reached by the
// expression must depend only on determined structure.  Constraints are
// trivially rigid.  Conservative, never wrongly true.
bool is_rigid(const LevelMapSpec& spec, const Literal& lit,
              const Substitution& fixed = {});

}  // namespace glp
