// SPDX-License-Identifier: MIT
#include "glp/modelcheck.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <utility>

#include "glp/constraints.hpp"
#include "glp/errors.hpp"
#include "glp/herbrand.hpp"

namespace glp {
namespace {

using Sets = std::map<std::string, std::vector<Term>>;

Truth t_not(Truth t) {
  if (t == Truth::True) return Truth::False;
  if (t == Truth::False) return Truth::True;
  return Truth::Unknown;
}

bool term_in(const std::vector<Term>& v, const Term& t) {
  return std::find(v.begin(), v.end(), t) != v.end();
}

const Term& arg_at(const TermVec& args, std::size_t i) {
  if (i == 0 || i > args.size())
    throw AnnotationError("argument index arg" + std::to_string(i) +
                          " out of range for arity " +
                          std::to_string(args.size()));
  return args[i - 1];
}

const std::vector<Term>& set_members(const Sets& sets,
                                     const std::string& name) {
  auto it = sets.find(name);
  if (it == sets.end()) throw AnnotationError("unknown set @" + name);
  return it->second;
}

// Truth is only certain when it survives every further instantiation, so
// the result is monotone: once True/False it stays that way under
// substitution.
Truth cond_truth(const Cond& c, const TermVec& args, const Sets& sets) {
  switch (c.kind) {
    case Cond::Kind::All:
      return Truth::True;
    case Cond::Kind::None:
      return Truth::False;
    case Cond::Kind::Elem: {
      const Term& x = arg_at(args, c.arg);
      auto [elems, tail] = arg_at(args, c.arg2).uncons();
      if (term_in(elems, x)) return Truth::True;
      if (tail.is_variable()) return Truth::Unknown;  // spine may grow
      for (const Term& e : elems)
        if (unify(x, e)) return Truth::Unknown;
      return Truth::False;
    }
    case Cond::Kind::InSet: {
      const auto& members = set_members(sets, c.set_name);
      const Term& x = arg_at(args, c.arg);
      if (x.ground())
        return term_in(members, x) ? Truth::True : Truth::False;
      for (const Term& m : members)
        if (unify(x, m)) return Truth::Unknown;
      return Truth::False;
    }
    case Cond::Kind::Same: {
      const Term& x = arg_at(args, c.arg);
      const Term& y = arg_at(args, c.arg2);
      if (x == y) return Truth::True;
      return unify(x, y) ? Truth::Unknown : Truth::False;
    }
    case Cond::Kind::IsList: {
      const Term tail = arg_at(args, c.arg).uncons().second;
      if (tail.is_nil()) return Truth::True;
      return tail.is_variable() ? Truth::Unknown : Truth::False;
    }
    case Cond::Kind::Cmp: {
      if (!rigid_expr(c.cmp[0], args) || !rigid_expr(c.cmp[1], args))
        return Truth::Unknown;
      long a = eval_expr(c.cmp[0], args, sets, false);
      long b = eval_expr(c.cmp[1], args, sets, false);
      bool ok = false;
      switch (c.op) {
        case Cond::Op::Eq: ok = a == b; break;
        case Cond::Op::Lt: ok = a < b; break;
        case Cond::Op::Le: ok = a <= b; break;
        case Cond::Op::Gt: ok = a > b; break;
        case Cond::Op::Ge: ok = a >= b; break;
      }
      return ok ? Truth::True : Truth::False;
    }
    case Cond::Kind::And: {
      Truth r = Truth::True;
      for (const Cond& ch : c.children) {
        Truth t = cond_truth(ch, args, sets);
        if (t == Truth::False) return Truth::False;
        if (t == Truth::Unknown) r = Truth::Unknown;
      }
      return r;
    }
    case Cond::Kind::Or: {
      Truth r = Truth::False;
      for (const Cond& ch : c.children) {
        Truth t = cond_truth(ch, args, sets);
        if (t == Truth::True) return Truth::True;
        if (t == Truth::Unknown) r = Truth::Unknown;
      }
      return r;
    }
    case Cond::Kind::Not:
      return t_not(cond_truth(c.children[0], args, sets));
  }
  return Truth::Unknown;
}

Truth literal_truth(const InterpretationSpec& I, const Literal& l) {
  switch (l.kind) {
    case Literal::Kind::Pos:
      return atom_truth(I, l.atom);
    case Literal::Kind::Neg:
      return t_not(atom_truth(I, l.atom));
    case Literal::Kind::Eq:
      if (l.lhs == l.rhs) return Truth::True;
      return unify(l.lhs, l.rhs) ? Truth::Unknown : Truth::False;
    case Literal::Kind::Ineq:
      switch (classify_ineq(Ineq::from_literal(l))) {
        case IneqClass::Valid: return Truth::True;
        case IneqClass::Unsatisfiable: return Truth::False;
        case IneqClass::Primitive: return Truth::Unknown;
      }
  }
  return Truth::Unknown;
}

// Bindings under which a literal can still hold.  `subs` covers every
// grounding over the current slice that satisfies the literal (possibly
// more); used_slice records whether the slice was consulted, i.e. whether
// the coverage claim is depth-relative.
struct Supports {
  std::vector<Substitution> subs;
  bool used_slice = false;
};

// One counterexample search over a fixed universe slice.  Directed: solves
// equalities by unification, expands body atoms whose condition enumerates
// its solutions, prunes branches whose head is certainly true or whose
// body is certainly false, and only then falls back to the odometer over
// whatever variables remain.  A run that never consults the slice has
// covered every depth at once.
class Search {
 public:
  Search(const InterpretationSpec& I, const HerbrandSlice& slice,
         std::size_t cap)
      : I_(I), slice_(slice), cap_(cap) {}

  bool used_slice = false;
  std::optional<Witness> bad;

  // False iff a violation was found (recorded in `bad`).
  bool run(const Clause& c) {
    std::vector<std::size_t> pending;
    for (std::size_t j = 0; j < c.body.size(); ++j)
      if (c.body[j].kind == Literal::Kind::Pos ||
          c.body[j].kind == Literal::Kind::Eq)
        pending.push_back(j);
    return step(c, Substitution{}, pending);
  }

 private:
  const InterpretationSpec& I_;
  const HerbrandSlice& slice_;
  std::size_t cap_;
  std::size_t work_ = 0;

  void bump() {
    if (++work_ > cap_)
      throw ResourceError("model check exceeded instance cap of " +
                          std::to_string(cap_));
  }

  bool step(const Clause& c, const Substitution& sigma,
            const std::vector<std::size_t>& pending) {
    if (atom_truth(I_, c.head.apply(sigma)) == Truth::True) return true;

    std::vector<std::size_t> live;
    for (std::size_t j = 0; j < c.body.size(); ++j) {
      Truth t = literal_truth(I_, c.body[j].apply(sigma));
      if (t == Truth::False) return true;  // body can no longer hold
      if (t == Truth::Unknown && term_in_idx(pending, j)) live.push_back(j);
    }

    // Prefer generators that bind variables structurally; slice scans only
    // when nothing else enumerates.
    for (bool allow_slice : {false, true}) {
      for (std::size_t j : live) {
        auto s = literal_supports(c.body[j].apply(sigma), allow_slice);
        if (!s) continue;
        if (s->used_slice) used_slice = true;
        std::vector<std::size_t> rest;
        for (std::size_t k : live)
          if (k != j) rest.push_back(k);
        for (const Substitution& u : s->subs) {
          bump();
          if (!step(c, sigma.compose(u), rest)) return false;
        }
        return true;
      }
    }
    return finish(c.apply(sigma));
  }

  // Exhaustive tail: leftover variables range over the slice, the fully
  // ground instance is judged directly.
  bool finish(const Clause& inst) {
    const std::vector<std::string> vars = inst.variables();
    if (!vars.empty()) used_slice = true;
    std::vector<std::size_t> idx(vars.size(), 0);
    bool more = true;
    while (more) {
      bump();
      Substitution b;
      for (std::size_t k = 0; k < vars.size(); ++k)
        b.bind(vars[k], slice_.terms[idx[k]]);
      const Clause g = inst.apply(b);
      bool body_true = true;
      for (const Literal& l : g.body)
        if (!I_.holds(l)) {
          body_true = false;
          break;
        }
      if (body_true && !I_.holds(g.head)) {
        Witness w;
        w.instance = g;
        w.obligation = "model";
        w.detail = "body holds but head " + g.head.str() +
                   " is outside the interpretation";
        bad = std::move(w);
        return false;
      }
      std::size_t k = vars.size();
      while (k > 0) {
        if (++idx[k - 1] < slice_.size()) break;
        idx[k - 1] = 0;
        --k;
      }
      if (k == 0) more = false;
    }
    return true;
  }

  static bool term_in_idx(const std::vector<std::size_t>& v, std::size_t j) {
    return std::find(v.begin(), v.end(), j) != v.end();
  }

  std::optional<Supports> literal_supports(const Literal& l,
                                           bool allow_slice) {
    if (l.kind == Literal::Kind::Eq) {
      Supports s;
      if (auto u = unify(l.lhs, l.rhs)) s.subs.push_back(std::move(*u));
      return s;
    }
    if (l.kind != Literal::Kind::Pos) return std::nullopt;
    if (l.atom.ground()) {
      Supports s;
      if (I_.holds(l.atom)) s.subs.emplace_back();
      return s;
    }
    return cond_supports(I_.cond_for(l.atom.rel_id()), l.atom.args,
                         allow_slice);
  }

  std::optional<Supports> cond_supports(const Cond& c, const TermVec& args,
                                        bool allow_slice) {
    switch (c.kind) {
      case Cond::Kind::None:
        return Supports{};
      case Cond::Kind::Elem: {
        const Term& x = arg_at(args, c.arg);
        auto [elems, tail] = arg_at(args, c.arg2).uncons();
        if (tail.is_variable() && !allow_slice) return std::nullopt;
        Supports s;
        for (const Term& e : elems) {
          bump();
          if (auto u = unify(x, e)) s.subs.push_back(std::move(*u));
        }
        if (tail.is_variable()) {
          s.used_slice = true;
          for (const Term& z : slice_.terms) {
            bump();
            auto u0 = unify(tail, z);
            if (!u0) continue;
            for (const Term& e : spine_elements(z)) {
              bump();
              if (auto w = unify(u0->apply(x), e))
                s.subs.push_back(u0->compose(*w));
            }
          }
        }
        return s;
      }
      case Cond::Kind::InSet: {
        const Term& x = arg_at(args, c.arg);
        Supports s;
        for (const Term& m : set_members(I_.sets, c.set_name)) {
          bump();
          if (auto u = unify(x, m)) s.subs.push_back(std::move(*u));
        }
        return s;
      }
      case Cond::Kind::Same: {
        Supports s;
        if (auto u = unify(arg_at(args, c.arg), arg_at(args, c.arg2)))
          s.subs.push_back(std::move(*u));
        return s;
      }
      case Cond::Kind::IsList: {
        const Term tail = arg_at(args, c.arg).uncons().second;
        Supports s;
        if (tail.is_nil()) {
          s.subs.emplace_back();
          return s;
        }
        if (!tail.is_variable()) return s;  // can never end in nil
        if (!allow_slice) return std::nullopt;
        s.used_slice = true;
        for (const Term& z : slice_.terms) {
          bump();
          if (!is_proper_list(z)) continue;
          if (auto u = unify(tail, z)) s.subs.push_back(std::move(*u));
        }
        return s;
      }
      case Cond::Kind::And:
        for (const Cond& ch : c.children)
          if (auto s = cond_supports(ch, args, allow_slice)) return s;
        return std::nullopt;
      case Cond::Kind::Or: {
        Supports s;
        for (const Cond& ch : c.children) {
          auto cs = cond_supports(ch, args, allow_slice);
          if (!cs) return std::nullopt;
          s.used_slice |= cs->used_slice;
          for (Substitution& u : cs->subs) s.subs.push_back(std::move(u));
        }
        return s;
      }
      case Cond::Kind::All:
      case Cond::Kind::Cmp:
      case Cond::Kind::Not:
        return std::nullopt;
    }
    return std::nullopt;
  }
};

CheckReport staged_search(const Clause& c, const InterpretationSpec& I,
                          const CompareEnv& env) {
  int verified = 0;
  for (int d = 1; d <= env.depth; ++d) {
    HerbrandSlice slice;
    try {
      slice = build_slice(env.sig, d, env.instance_cap);
    } catch (const ResourceError&) {
      if (verified == 0) throw;
      break;
    }
    Search search(I, slice, env.instance_cap);
    bool completed;
    try {
      completed = search.run(c);
    } catch (const ResourceError&) {
      if (verified == 0) throw;
      break;
    }
    if (!completed) return CheckReport::refuted(std::move(*search.bad));
    if (!search.used_slice) return CheckReport::proved();
    verified = d;
  }
  return CheckReport::bounded(verified);
}

}  // namespace

Truth atom_truth(const InterpretationSpec& I, const Atom& a) {
  return cond_truth(I.cond_for(a.rel_id()), a.args, I.sets);
}

CheckReport check_clause_models(const Clause& c, const InterpretationSpec& I,
                                const CompareEnv& env) {
  try {
    if (env.symbolic && models_clause_symbolic(I, c, env)) {
      if (env.crosscheck) {
        CheckReport ground = staged_search(c, I, env);
        if (ground.status == CheckStatus::Refuted)
          throw std::logic_error(
              "internal inconsistency: symbolic model proof contradicted "
              "by ground instance " + ground.witness->instance.str());
      }
      return CheckReport::proved();
    }
  } catch (const AnnotationError& e) {
    return CheckReport::invalid(e.what());
  }
  try {
    return staged_search(c, I, env);
  } catch (const AnnotationError& e) {
    return CheckReport::invalid(e.what());
  }
}

CheckReport check_models(const Program& p, const InterpretationSpec& I,
                         const CompareEnv& env) {
  CheckReport report;
  for (const Clause& c : p.clauses)
    report.absorb(check_clause_models(c, I, env), c.id, "model");
  return report;
}

}  // namespace glp
