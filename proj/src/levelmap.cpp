// SPDX-License-Identifier: MIT
#include "glp/levelmap.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "glp/errors.hpp"

namespace glp {

LevelExpr LevelExpr::nat(long v) {
  LevelExpr e;
  e.kind = Kind::Nat;
  e.value = v;
  return e;
}

LevelExpr LevelExpr::len(std::size_t arg) {
  LevelExpr e;
  e.kind = Kind::Len;
  e.arg = arg;
  return e;
}

LevelExpr LevelExpr::set_count(std::size_t arg, std::string set) {
  LevelExpr e;
  e.kind = Kind::SetCount;
  e.arg = arg;
  e.set_name = std::move(set);
  return e;
}

LevelExpr LevelExpr::pair_count(std::size_t arg, std::size_t arg2) {
  LevelExpr e;
  e.kind = Kind::PairCount;
  e.arg = arg;
  e.arg2 = arg2;
  return e;
}

LevelExpr LevelExpr::add(LevelExpr a, LevelExpr b) {
  LevelExpr e;
  e.kind = Kind::Add;
  e.children.push_back(std::move(a));
  e.children.push_back(std::move(b));
  return e;
}

LevelExpr LevelExpr::sub(LevelExpr a, LevelExpr b) {
  LevelExpr e;
  e.kind = Kind::Sub;
  e.children.push_back(std::move(a));
  e.children.push_back(std::move(b));
  return e;
}

LevelExpr LevelExpr::mul(long n, LevelExpr e0) {
  LevelExpr e;
  e.kind = Kind::Mul;
  e.value = n;
  e.children.push_back(std::move(e0));
  return e;
}

namespace {

std::string argref(std::size_t i) { return "arg" + std::to_string(i); }

// Parenthesize the right operand of +/- when it is itself a sum, so the
// printed form reparses to the same tree under left association.
std::string str_operand(const LevelExpr& e, bool parens_sums) {
  bool sum = e.kind == LevelExpr::Kind::Add || e.kind == LevelExpr::Kind::Sub;
  if (sum && parens_sums) return "(" + e.str() + ")";
  return e.str();
}

}  // namespace

std::string LevelExpr::str() const {
  switch (kind) {
    case Kind::Nat:
      return std::to_string(value);
    case Kind::Len:
      return "len(" + argref(arg) + ")";
    case Kind::SetCount:
      return "set_count(" + argref(arg) + ", @" + set_name + ")";
    case Kind::PairCount:
      return "pair_count(" + argref(arg) + ", " + argref(arg2) + ")";
    case Kind::Add:
      return children[0].str() + " + " + str_operand(children[1], true);
    case Kind::Sub:
      return children[0].str() + " - " + str_operand(children[1], true);
    case Kind::Mul:
      return std::to_string(value) + "*" + str_operand(children[0], true);
    case Kind::Cases: {
      std::string s = "cases(" + argref(arg) + ") { ";
      for (std::size_t i = 0; i < case_functors.size(); ++i) {
        s += case_functors[i].name + "/" +
             std::to_string(case_functors[i].arity) + " -> " +
             children[i].str() + "; ";
      }
      s += "default -> " + children.back().str() + " }";
      return s;
    }
  }
  return "?";
}

bool LevelMapSpec::total_on(const std::set<Rel>& rels) const {
  return std::all_of(rels.begin(), rels.end(),
                     [&](const Rel& r) { return exprs.count(r) > 0; });
}

const LevelExpr& LevelMapSpec::expr_for(const Rel& r) const {
  auto it = exprs.find(r);
  if (it == exprs.end())
    throw AnnotationError("no level expression for " + r.name + "/" +
                          std::to_string(r.arity));
  return it->second;
}

long spine_len(const Term& t) {
  long n = 0;
  Term cur = t;
  while (cur.is_cons()) {
    ++n;
    cur = cur.arg(1);
  }
  return n;
}

std::vector<Term> spine_elements(const Term& t) { return t.uncons().first; }

bool is_proper_list(const Term& t) { return t.uncons().second.is_nil(); }

bool spine_determined(const Term& t) {
  return !t.uncons().second.is_variable();
}

namespace {

const Term& checked_arg(const TermVec& args, std::size_t i) {
  if (i == 0 || i > args.size())
    throw AnnotationError("argument index arg" + std::to_string(i) +
                          " out of range for arity " +
                          std::to_string(args.size()));
  return args[i - 1];
}

const std::vector<Term>& lookup_set(
    const std::map<std::string, std::vector<Term>>& sets,
    const std::string& name) {
  auto it = sets.find(name);
  if (it == sets.end()) throw AnnotationError("unknown set @" + name);
  return it->second;
}

const LevelExpr& select_case(const LevelExpr& e, const Term& t) {
  if (!t.is_variable()) {
    for (std::size_t i = 0; i < e.case_functors.size(); ++i) {
      if (e.case_functors[i].name == t.name() &&
          e.case_functors[i].arity == t.arity())
        return e.children[i];
    }
  }
  return e.children.back();
}

}  // namespace

long eval_expr(const LevelExpr& e, const TermVec& args,
               const std::map<std::string, std::vector<Term>>& sets,
               bool truncate) {
  switch (e.kind) {
    case LevelExpr::Kind::Nat:
      return e.value;
    case LevelExpr::Kind::Len:
      return spine_len(checked_arg(args, e.arg));
    case LevelExpr::Kind::SetCount: {
      const auto& members = lookup_set(sets, e.set_name);
      std::set<Term> seen;
      long n = 0;
      for (const Term& x : spine_elements(checked_arg(args, e.arg))) {
        if (!seen.insert(x).second) continue;
        if (std::find(members.begin(), members.end(), x) != members.end())
          ++n;
      }
      return n;
    }
    case LevelExpr::Kind::PairCount: {
      // Distinct elements x of argI with a two-element list [x,_] in argJ.
      std::set<Term> firsts;
      for (const Term& edge : spine_elements(checked_arg(args, e.arg2))) {
        if (edge.is_cons() && edge.arg(1).is_cons() &&
            edge.arg(1).arg(1).is_nil())
          firsts.insert(edge.arg(0));
      }
      std::set<Term> seen;
      long n = 0;
      for (const Term& x : spine_elements(checked_arg(args, e.arg))) {
        if (!seen.insert(x).second) continue;
        if (firsts.count(x)) ++n;
      }
      return n;
    }
    case LevelExpr::Kind::Add:
      return eval_expr(e.children[0], args, sets, truncate) +
             eval_expr(e.children[1], args, sets, truncate);
    case LevelExpr::Kind::Sub: {
      long a = eval_expr(e.children[0], args, sets, truncate);
      long b = eval_expr(e.children[1], args, sets, truncate);
      return truncate ? std::max(0L, a - b) : a - b;
    }
    case LevelExpr::Kind::Mul:
      return e.value * eval_expr(e.children[0], args, sets, truncate);
    case LevelExpr::Kind::Cases:
      return eval_expr(select_case(e, checked_arg(args, e.arg)), args, sets,
                       truncate);
  }
  return 0;
}

long eval_level(const LevelMapSpec& spec, const Atom& ground_atom) {
  return eval_expr(spec.expr_for(ground_atom.rel_id()), ground_atom.args,
                   spec.sets, true);
}

long eval_level(const LevelMapSpec& spec, const Literal& lit) {
  if (lit.is_constraint())
    throw std::invalid_argument("constraints have no level");
  return eval_level(spec, lit.atom);
}

namespace {

bool ground_spine(const Term& t) {
  if (!spine_determined(t)) return false;
  for (const Term& x : spine_elements(t))
    if (!x.ground()) return false;
  return true;
}

}  // namespace

bool rigid_expr(const LevelExpr& e, const TermVec& args) {
  switch (e.kind) {
    case LevelExpr::Kind::Nat:
      return true;
    case LevelExpr::Kind::Len:
      return spine_determined(checked_arg(args, e.arg));
    case LevelExpr::Kind::SetCount:
      return ground_spine(checked_arg(args, e.arg));
    case LevelExpr::Kind::PairCount:
      return ground_spine(checked_arg(args, e.arg)) &&
             ground_spine(checked_arg(args, e.arg2));
    case LevelExpr::Kind::Add:
    case LevelExpr::Kind::Sub:
      return rigid_expr(e.children[0], args) && rigid_expr(e.children[1], args);
    case LevelExpr::Kind::Mul:
      return rigid_expr(e.children[0], args);
    case LevelExpr::Kind::Cases: {
      const Term& t = checked_arg(args, e.arg);
      if (t.is_variable()) return false;
      return rigid_expr(select_case(e, t), args);
    }
  }
  return false;
}

bool is_rigid(const LevelMapSpec& spec, const Literal& lit,
              const Substitution& fixed) {
  if (lit.is_constraint()) return true;
  const LevelExpr& e = spec.expr_for(lit.atom.rel_id());
  TermVec args;
  args.reserve(lit.atom.args.size());
  for (const Term& t : lit.atom.args) args.push_back(fixed.apply(t));
  return rigid_expr(e, args);
}

}  // namespace glp
