// SPDX-License-Identifier: MIT
#include "glp/interp.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>

#include "glp/constraints.hpp"
#include "glp/errors.hpp"

namespace glp {

Cond Cond::all() { return {}; }

Cond Cond::none() {
  Cond c;
  c.kind = Kind::None;
  return c;
}

Cond Cond::elem(std::size_t arg, std::size_t arg2) {
  Cond c;
  c.kind = Kind::Elem;
  c.arg = arg;
  c.arg2 = arg2;
  return c;
}

Cond Cond::in_set(std::size_t arg, std::string set) {
  Cond c;
  c.kind = Kind::InSet;
  c.arg = arg;
  c.set_name = std::move(set);
  return c;
}

Cond Cond::same(std::size_t arg, std::size_t arg2) {
  Cond c;
  c.kind = Kind::Same;
  c.arg = arg;
  c.arg2 = arg2;
  return c;
}

Cond Cond::is_list(std::size_t arg) {
  Cond c;
  c.kind = Kind::IsList;
  c.arg = arg;
  return c;
}

Cond Cond::compare(LevelExpr lhs, Op op, LevelExpr rhs) {
  Cond c;
  c.kind = Kind::Cmp;
  c.op = op;
  c.cmp.push_back(std::move(lhs));
  c.cmp.push_back(std::move(rhs));
  return c;
}

Cond Cond::conj(std::vector<Cond> cs) {
  Cond c;
  c.kind = Kind::And;
  c.children = std::move(cs);
  return c;
}

Cond Cond::disj(std::vector<Cond> cs) {
  Cond c;
  c.kind = Kind::Or;
  c.children = std::move(cs);
  return c;
}

Cond Cond::negate(Cond inner) {
  Cond c;
  c.kind = Kind::Not;
  c.children.push_back(std::move(inner));
  return c;
}

namespace {

std::string argref(std::size_t i) { return "arg" + std::to_string(i); }

std::string op_str(Cond::Op op) {
  switch (op) {
    case Cond::Op::Eq: return "=";
    case Cond::Op::Lt: return "<";
    case Cond::Op::Le: return "<=";
    case Cond::Op::Gt: return ">";
    case Cond::Op::Ge: return ">=";
  }
  return "?";
}

std::string join_children(const std::vector<Cond>& cs) {
  std::string s;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (i) s += ", ";
    s += cs[i].str();
  }
  return s;
}

}  // namespace

std::string Cond::str() const {
  switch (kind) {
    case Kind::All:
      return "all";
    case Kind::None:
      return "none";
    case Kind::Elem:
      return "elem(" + argref(arg) + ", " + argref(arg2) + ")";
    case Kind::InSet:
      return "in_set(" + argref(arg) + ", @" + set_name + ")";
    case Kind::Same:
      return "same(" + argref(arg) + ", " + argref(arg2) + ")";
    case Kind::IsList:
      return "is_list(" + argref(arg) + ")";
    case Kind::Cmp:
      return cmp[0].str() + " " + op_str(op) + " " + cmp[1].str();
    case Kind::And:
      return "and(" + join_children(children) + ")";
    case Kind::Or:
      return "or(" + join_children(children) + ")";
    case Kind::Not:
      return "not(" + children[0].str() + ")";
  }
  return "?";
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

bool eval_cond(const Cond& c, const TermVec& args,
               const std::map<std::string, std::vector<Term>>& sets) {
  switch (c.kind) {
    case Cond::Kind::All:
      return true;
    case Cond::Kind::None:
      return false;
    case Cond::Kind::Elem: {
      const Term& x = checked_arg(args, c.arg);
      for (const Term& y : spine_elements(checked_arg(args, c.arg2)))
        if (x == y) return true;
      return false;
    }
    case Cond::Kind::InSet: {
      const auto& members = lookup_set(sets, c.set_name);
      const Term& x = checked_arg(args, c.arg);
      return std::find(members.begin(), members.end(), x) != members.end();
    }
    case Cond::Kind::Same:
      return checked_arg(args, c.arg) == checked_arg(args, c.arg2);
    case Cond::Kind::IsList:
      return is_proper_list(checked_arg(args, c.arg));
    case Cond::Kind::Cmp: {
      long a = eval_expr(c.cmp[0], args, sets, false);
      long b = eval_expr(c.cmp[1], args, sets, false);
      switch (c.op) {
        case Cond::Op::Eq: return a == b;
        case Cond::Op::Lt: return a < b;
        case Cond::Op::Le: return a <= b;
        case Cond::Op::Gt: return a > b;
        case Cond::Op::Ge: return a >= b;
      }
      return false;
    }
    case Cond::Kind::And:
      for (const Cond& ch : c.children)
        if (!eval_cond(ch, args, sets)) return false;
      return true;
    case Cond::Kind::Or:
      for (const Cond& ch : c.children)
        if (eval_cond(ch, args, sets)) return true;
      return false;
    case Cond::Kind::Not:
      return !eval_cond(c.children[0], args, sets);
  }
  return false;
}

}  // namespace

bool InterpretationSpec::total_on(const std::set<Rel>& rels) const {
  return std::all_of(rels.begin(), rels.end(),
                     [&](const Rel& r) { return conds.count(r) > 0; });
}

const Cond& InterpretationSpec::cond_for(const Rel& r) const {
  auto it = conds.find(r);
  if (it == conds.end())
    throw AnnotationError("no interpretation condition for " + r.str());
  return it->second;
}

bool InterpretationSpec::holds(const Atom& ground_atom) const {
  return eval_cond(cond_for(ground_atom.rel_id()), ground_atom.args, sets);
}

bool InterpretationSpec::holds(const Literal& ground_lit) const {
  switch (ground_lit.kind) {
    case Literal::Kind::Pos:
      return holds(ground_lit.atom);
    case Literal::Kind::Neg:
      return !holds(ground_lit.atom);
    case Literal::Kind::Eq:
      return ground_lit.lhs == ground_lit.rhs;
    case Literal::Kind::Ineq: {
      // Closed inequalities are decided by the free equality theory.
      switch (classify_ineq(Ineq::from_literal(ground_lit))) {
        case IneqClass::Valid:
          return true;
        case IneqClass::Unsatisfiable:
          return false;
        case IneqClass::Primitive:
          throw std::invalid_argument("constraint is not ground: " +
                                      ground_lit.str());
      }
    }
  }
  return false;
}

bool holds_all(const InterpretationSpec& I, const std::vector<Literal>& lits) {
  return std::all_of(lits.begin(), lits.end(),
                     [&](const Literal& l) { return I.holds(l); });
}

namespace {

using Fixed = std::map<std::size_t, Term>;  // 1-based position -> value

// Emits every tuple obtained by fixing some positions and cycling the rest
// over the slice.  Counts against cap.
void gen_tuples(const Fixed& fixed, std::size_t arity,
                const HerbrandSlice& slice, std::size_t cap,
                std::size_t& counter, std::set<TermVec>& out) {
  std::vector<std::size_t> free_pos;
  for (std::size_t p = 1; p <= arity; ++p)
    if (!fixed.count(p)) free_pos.push_back(p);
  if (!free_pos.empty() && slice.terms.empty()) return;

  std::vector<std::size_t> idx(free_pos.size(), 0);
  while (true) {
    if (++counter > cap)
      throw ResourceError("extension enumeration exceeds cap of " +
                          std::to_string(cap) + " candidates");
    TermVec tuple(arity);
    for (const auto& [p, t] : fixed) tuple[p - 1] = t;
    for (std::size_t k = 0; k < free_pos.size(); ++k)
      tuple[free_pos[k] - 1] = slice.terms[idx[k]];
    out.insert(std::move(tuple));

    std::size_t k = free_pos.size();
    while (k > 0) {
      if (++idx[k - 1] < slice.terms.size()) break;
      idx[k - 1] = 0;
      --k;
    }
    if (k == 0) break;
  }
}

void check_pos(std::size_t p, std::size_t arity) {
  if (p == 0 || p > arity)
    throw AnnotationError("argument index arg" + std::to_string(p) +
                          " out of range for arity " + std::to_string(arity));
}

// Candidate tuples when the condition has exploitable structure: a superset
// of the extension restricted to the slice, still filtered by the full
// condition afterwards.  nullopt means no structure to exploit.
std::optional<std::set<TermVec>> sparse_candidates(
    const Cond& c, std::size_t arity, const HerbrandSlice& slice,
    const std::set<Term>& slice_set,
    const std::map<std::string, std::vector<Term>>& sets, std::size_t cap,
    std::size_t& counter) {
  std::set<TermVec> out;
  switch (c.kind) {
    case Cond::Kind::None:
      return out;
    case Cond::Kind::Elem: {
      check_pos(c.arg, arity);
      check_pos(c.arg2, arity);
      for (const Term& y : slice.terms) {
        std::set<Term> elems;
        for (const Term& x : spine_elements(y)) {
          if (!elems.insert(x).second) continue;
          gen_tuples({{c.arg, x}, {c.arg2, y}}, arity, slice, cap, counter,
                     out);
        }
      }
      return out;
    }
    case Cond::Kind::InSet: {
      check_pos(c.arg, arity);
      for (const Term& x : lookup_set(sets, c.set_name)) {
        if (!slice_set.count(x)) continue;
        gen_tuples({{c.arg, x}}, arity, slice, cap, counter, out);
      }
      return out;
    }
    case Cond::Kind::Same: {
      check_pos(c.arg, arity);
      check_pos(c.arg2, arity);
      for (const Term& x : slice.terms)
        gen_tuples({{c.arg, x}, {c.arg2, x}}, arity, slice, cap, counter, out);
      return out;
    }
    case Cond::Kind::IsList: {
      check_pos(c.arg, arity);
      for (const Term& x : slice.terms) {
        if (!is_proper_list(x)) continue;
        gen_tuples({{c.arg, x}}, arity, slice, cap, counter, out);
      }
      return out;
    }
    case Cond::Kind::And:
      for (const Cond& ch : c.children) {
        auto cand = sparse_candidates(ch, arity, slice, slice_set, sets, cap,
                                      counter);
        if (cand) return cand;
      }
      return std::nullopt;
    case Cond::Kind::Or: {
      for (const Cond& ch : c.children) {
        auto cand = sparse_candidates(ch, arity, slice, slice_set, sets, cap,
                                      counter);
        if (!cand) return std::nullopt;
        out.insert(cand->begin(), cand->end());
      }
      return out;
    }
    case Cond::Kind::All:
    case Cond::Kind::Cmp:
    case Cond::Kind::Not:
      return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace

bool enumerate_extension(const InterpretationSpec& I, const Rel& rel,
                         const HerbrandSlice& slice, std::size_t cap,
                         const std::function<bool(const Atom&)>& fn) {
  const Cond& c = I.cond_for(rel);
  std::size_t counter = 0;
  std::set<Term> slice_set(slice.terms.begin(), slice.terms.end());
  auto cands =
      sparse_candidates(c, rel.arity, slice, slice_set, I.sets, cap, counter);
  if (cands) {
    for (const TermVec& tuple : *cands) {
      Atom a{rel.name, tuple};
      if (!eval_cond(c, a.args, I.sets)) continue;
      if (!fn(a)) return false;
    }
    return true;
  }
  std::set<TermVec> out;
  gen_tuples({}, rel.arity, slice, cap, counter, out);
  for (const TermVec& tuple : out) {
    Atom a{rel.name, tuple};
    if (!eval_cond(c, a.args, I.sets)) continue;
    if (!fn(a)) return false;
  }
  return true;
}

}  // namespace glp
