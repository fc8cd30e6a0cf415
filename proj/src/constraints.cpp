// SPDX-License-Identifier: MIT
#include "glp/constraints.hpp"

#include <algorithm>
#include <set>

#include "glp/errors.hpp"

namespace glp {

namespace {

void insert_all(std::set<std::string>& into, const Term& t) {
  for (auto& v : t.variables()) into.insert(v);
}

std::vector<Term> universe_constants(const Signature& sig) {
  std::vector<Term> cs;
  for (const auto& r : sig.constants()) cs.push_back(Term::constant(r.name));
  if (cs.empty()) cs.push_back(implicit_constant(sig));
  return cs;
}

bool universe_is_infinite(const Signature& sig) {
  for (const auto& f : sig.functions)
    if (f.arity > 0) return true;
  return false;
}

std::size_t universe_floor(const Signature& sig) {
  if (universe_is_infinite(sig)) return 2;  // "at least two" is all we need
  return universe_constants(sig).size();
}

}  // namespace

Ineq Ineq::of(Term l, Term r, std::vector<std::string> u) {
  std::set<std::string> occurring;
  insert_all(occurring, l);
  insert_all(occurring, r);
  std::vector<std::string> univ;
  for (auto& v : u)
    if (occurring.count(v) &&
        std::find(univ.begin(), univ.end(), v) == univ.end())
      univ.push_back(std::move(v));
  return Ineq{std::move(l), std::move(r), std::move(univ)};
}

Ineq Ineq::from_literal(const Literal& l) { return of(l.lhs, l.rhs, l.univ); }

Literal Ineq::as_literal() const { return Literal::ineq(lhs, rhs, univ); }

Ineq Ineq::apply(const Substitution& s) const {
  // Quantified names are shielded; they are also renamed if a binding image
  // would otherwise be captured.
  std::set<std::string> incoming;
  for (const auto& [v, img] : s) {
    if (std::find(univ.begin(), univ.end(), v) != univ.end()) continue;
    insert_all(incoming, img);
  }
  Term l = lhs, r = rhs;
  std::vector<std::string> u = univ;
  bool capture = false;
  for (const auto& v : u)
    if (incoming.count(v)) capture = true;
  if (capture) {
    std::set<std::string> taken = incoming;
    insert_all(taken, l);
    insert_all(taken, r);
    Substitution rename;
    for (auto& v : u) {
      if (!incoming.count(v)) continue;
      for (int i = 0;; ++i) {
        std::string cand = "_Q" + std::to_string(i);
        if (!taken.count(cand)) {
          taken.insert(cand);
          rename.bind(v, Term::variable(cand));
          v = cand;
          break;
        }
      }
    }
    l = rename.apply(l);
    r = rename.apply(r);
  }
  Substitution filtered;
  for (const auto& [v, img] : s)
    if (std::find(u.begin(), u.end(), v) == u.end()) filtered.bind(v, img);
  return of(filtered.apply(l), filtered.apply(r), std::move(u));
}

void Ineq::collect_free_variables(std::vector<std::string>& out) const {
  for (const Term* t : {&lhs, &rhs})
    for (auto& v : t->variables())
      if (std::find(univ.begin(), univ.end(), v) == univ.end() &&
          std::find(out.begin(), out.end(), v) == out.end())
        out.push_back(v);
}

std::vector<std::string> Ineq::free_variables() const {
  std::vector<std::string> out;
  collect_free_variables(out);
  return out;
}

std::string Ineq::str() const { return as_literal().str(); }

IneqClass classify_ineq(const Ineq& q) {
  if (!unify(q.lhs, q.rhs)) return IneqClass::Valid;
  Substitution sk;
  int i = 0;
  for (const auto& v : q.free_variables())
    sk.bind(v, Term::constant("$sk" + std::to_string(i++)));
  if (unify(sk.apply(q.lhs), sk.apply(q.rhs))) return IneqClass::Unsatisfiable;
  return IneqClass::Primitive;
}

ConstraintStore ConstraintStore::unsat_store() {
  ConstraintStore s;
  s.unsat_ = true;
  return s;
}

std::string ConstraintStore::str() const {
  if (unsat_) return "false";
  std::string out;
  for (const auto& [v, t] : eqs_.resolved()) {
    if (!out.empty()) out += ", ";
    out += v + " = " + t.str();
  }
  for (const auto& q : ineqs_) {
    if (!out.empty()) out += ", ";
    out += q.str();
  }
  return out.empty() ? "true" : out;
}

namespace {

// Renames quantified variables to canonical _Q names free in the store.
Ineq canonical_univ(const Ineq& q, const std::set<std::string>& taken0) {
  if (q.univ.empty()) return q;
  std::set<std::string> taken = taken0;
  for (const Term* t : {&q.lhs, &q.rhs}) insert_all(taken, *t);
  Substitution rename;
  std::vector<std::string> fresh;
  int i = 0;
  for (const auto& v : q.univ) {
    std::string cand;
    do cand = "_Q" + std::to_string(i++);
    while (taken.count(cand));
    taken.insert(cand);
    rename.bind(v, Term::variable(cand));
    fresh.push_back(cand);
  }
  return Ineq::of(rename.apply(q.lhs), rename.apply(q.rhs), std::move(fresh));
}

std::set<std::string> store_var_names(const ConstraintStore& s) {
  std::set<std::string> names;
  for (const auto& [v, t] : s.equalities()) {
    names.insert(v);
    insert_all(names, t);
  }
  for (const auto& q : s.inequalities()) {
    for (auto& v : q.free_variables()) names.insert(v);
    for (auto& v : q.univ) names.insert(v);
  }
  return names;
}

bool same_ineq(const Ineq& a, const Ineq& b) {
  return a.lhs == b.lhs && a.rhs == b.rhs && a.univ == b.univ;
}

enum class Tri { Sat, Unsat, Exhausted };

Tri sat_search(const std::vector<Ineq>& live, int depth, const SolverEnv& env,
               std::size_t& nodes, std::size_t& fresh, Substitution& path) {
  if (live.empty()) return Tri::Sat;
  std::vector<std::string> fv = live.front().free_variables();
  if (fv.empty()) return Tri::Unsat;  // closed primitive cannot occur
  const std::string v = fv.front();

  bool exhausted = false;
  // result: Sat / Unsat (this shape fails) / Exhausted (undecided)
  auto try_shape = [&](const Term& shape, int next_depth) -> Tri {
    if (++nodes > env.node_cap)
      throw ResourceError("constraint satisfiability search exceeded " +
                          std::to_string(env.node_cap) + " nodes");
    Substitution sigma;
    sigma.bind(v, shape);
    std::vector<Ineq> next;
    for (const auto& q : live) {
      Ineq q2 = q.apply(sigma);
      switch (classify_ineq(q2)) {
        case IneqClass::Valid:
          break;
        case IneqClass::Unsatisfiable:
          return Tri::Unsat;
        case IneqClass::Primitive:
          next.push_back(std::move(q2));
      }
    }
    Tri r = sat_search(next, next_depth, env, nodes, fresh, path);
    if (r == Tri::Sat) path.bind(v, shape);
    return r;
  };

  for (const auto& c : universe_constants(env.sig)) {
    Tri r = try_shape(c, depth);
    if (r == Tri::Sat) return r;
    if (r == Tri::Exhausted) exhausted = true;
  }
  for (const auto& f : env.sig.functions) {
    if (f.arity == 0) continue;
    if (depth == 0) {
      exhausted = true;
      continue;
    }
    TermVec args;
    for (std::size_t i = 0; i < f.arity; ++i)
      args.push_back(Term::variable("_S" + std::to_string(fresh++)));
    Tri r = try_shape(Term::compound(f.name, args), depth - 1);
    if (r == Tri::Sat) return r;
    if (r == Tri::Exhausted) exhausted = true;
  }
  return exhausted ? Tri::Exhausted : Tri::Unsat;
}

Term ground_default(const Term& t, const Term& filler) {
  if (t.ground()) return t;
  if (t.is_variable()) return filler;
  TermVec args;
  for (const auto& a : t.args()) args.push_back(ground_default(a, filler));
  return Term::compound(t.name(), args);
}

}  // namespace

bool satisfiable(const ConstraintStore& store, const SolverEnv& env) {
  if (store.unsat()) return false;
  if (store.inequalities().empty()) return true;
  std::size_t nodes = 0, fresh = 0;
  Substitution path;
  Tri r = sat_search(store.inequalities(), env.shape_depth, env, nodes, fresh,
                     path);
  if (r == Tri::Exhausted)
    throw ResourceError(
        "constraint satisfiability undecided at shape depth " +
        std::to_string(env.shape_depth) + ": " + store.str());
  return r == Tri::Sat;
}

std::optional<std::map<std::string, Term>> find_solution(
    const ConstraintStore& store, const SolverEnv& env) {
  if (store.unsat()) return std::nullopt;
  std::size_t nodes = 0, fresh = 0;
  Substitution path;
  if (!store.inequalities().empty()) {
    Tri r = sat_search(store.inequalities(), env.shape_depth, env, nodes,
                       fresh, path);
    if (r == Tri::Exhausted)
      throw ResourceError("constraint satisfiability undecided at shape depth " +
                          std::to_string(env.shape_depth));
    if (r == Tri::Unsat) return std::nullopt;
  }
  Term filler = universe_constants(env.sig).front();
  std::map<std::string, Term> sol;
  // Parameters first: inequality variables and binding-image variables.
  std::set<std::string> params;
  for (const auto& q : store.inequalities())
    for (auto& v : q.free_variables()) params.insert(v);
  for (const auto& [v, t] : store.equalities().resolved())
    insert_all(params, t);
  for (const auto& v : params)
    sol[v] = ground_default(path.apply(Term::variable(v)), filler);
  Substitution ground;
  for (const auto& [v, t] : sol) ground.bind(v, t);
  // Determined variables follow from their images.
  for (const auto& [v, t] : store.equalities().resolved())
    sol[v] = ground_default(ground.apply(t), filler);
  return sol;
}

ConstraintStore add_equality(const ConstraintStore& store, const Term& s,
                             const Term& t, const SolverEnv& env) {
  if (store.unsat()) return store;
  auto mgu = unify(store.apply(s), store.apply(t));
  if (!mgu) return ConstraintStore::unsat_store();
  if (mgu->empty()) return store;
  ConstraintStore out;
  out.eqs_ = store.equalities().compose(*mgu);
  for (const auto& q : store.inequalities()) {
    Ineq q2 = q.apply(*mgu);
    switch (classify_ineq(q2)) {
      case IneqClass::Valid:
        break;
      case IneqClass::Unsatisfiable:
        return ConstraintStore::unsat_store();
      case IneqClass::Primitive:
        out.ineqs_.push_back(std::move(q2));
    }
  }
  if (!satisfiable(out, env)) return ConstraintStore::unsat_store();
  return out;
}

ConstraintStore add_inequality(const ConstraintStore& store, Ineq q,
                               const SolverEnv& env) {
  if (store.unsat()) return store;
  Ineq q2 = canonical_univ(q.apply(store.equalities()), store_var_names(store));
  switch (classify_ineq(q2)) {
    case IneqClass::Valid:
      return store;
    case IneqClass::Unsatisfiable:
      return ConstraintStore::unsat_store();
    case IneqClass::Primitive:
      break;
  }
  for (const auto& have : store.inequalities())
    if (same_ineq(have, q2)) return store;
  ConstraintStore out = store;
  out.ineqs_.push_back(std::move(q2));
  if (!satisfiable(out, env)) return ConstraintStore::unsat_store();
  return out;
}

ConstraintStore conjoin(const ConstraintStore& a, const ConstraintStore& b,
                        const SolverEnv& env) {
  if (a.unsat()) return a;
  ConstraintStore out = a;
  for (const auto& [v, t] : b.equalities()) {
    out = add_equality(out, Term::variable(v), t, env);
    if (out.unsat()) return out;
  }
  for (const auto& q : b.inequalities()) {
    out = add_inequality(out, q, env);
    if (out.unsat()) return out;
  }
  return out;
}

bool entails(const ConstraintStore& store, const Literal& c,
             const SolverEnv& env) {
  if (store.unsat()) return true;
  if (c.kind == Literal::Kind::Eq)
    return add_inequality(store, Ineq::of(c.lhs, c.rhs), env).unsat();
  if (c.kind != Literal::Kind::Ineq)
    throw std::invalid_argument("entails expects an Eq or Ineq literal");
  // not c = exists univ (lhs = rhs), with the quantified names made fresh
  Ineq q = Ineq::from_literal(c);
  std::set<std::string> taken = store_var_names(store);
  Ineq fresh = canonical_univ(q, taken);
  return add_equality(store, fresh.lhs, fresh.rhs, env).unsat();
}

namespace {

// Disagreement pairs of s and t: s != t holds iff some pair differs.
void decompose_pairs(const Term& s, const Term& t,
                     std::vector<std::pair<Term, Term>>& out) {
  if (s == t) return;
  if (s.is_compound() && t.is_compound() && s.name() == t.name() &&
      s.arity() == t.arity()) {
    for (std::size_t i = 0; i < s.arity(); ++i)
      out.push_back({s.arg(i), t.arg(i)});
    return;
  }
  out.push_back({s, t});
}

bool mentions(const Term& t, const std::string& v) {
  auto vs = t.variables();
  return std::find(vs.begin(), vs.end(), v) != vs.end();
}

// Simplifies exists-quantification of `v` out of a quantifier-free ineq,
// exploiting that s != t decomposes into a disjunction of component
// disequations.  Returns nullopt when the whole ineq becomes true.
std::optional<Ineq> simplify_exists_var(const Ineq& q, const std::string& v,
                                        std::size_t universe_floor) {
  std::vector<std::pair<Term, Term>> pairs;
  decompose_pairs(q.lhs, q.rhs, pairs);
  std::vector<std::pair<Term, Term>> residual;
  for (auto& [l, r] : pairs) {
    bool in_l = mentions(l, v), in_r = mentions(r, v);
    if (!in_l && !in_r) {
      residual.push_back({l, r});
      continue;
    }
    if (in_l && in_r) {
      // A disagreement pair with v on both sides has mismatched heads or an
      // occur-check failure, so it is valid (always true) or nothing we can
      // eliminate v from.
      if (classify_ineq(Ineq::of(l, r)) == IneqClass::Valid)
        return std::nullopt;
      return q;  // give up, keep as is
    }
    // v on exactly one side: the component ranges over >= |U| values as v
    // varies, so exists v makes it true whenever the universe has >= 2
    // elements; in a one-element universe it is false and drops out.
    if (universe_floor >= 2) return std::nullopt;
  }
  if (residual.empty()) {
    // every component is false: the ineq is unsatisfiable
    Term dummy = Term::constant("$false");
    return Ineq::of(dummy, dummy);
  }
  if (residual.size() == 1)
    return Ineq::of(residual[0].first, residual[0].second);
  TermVec ls, rs;
  for (auto& [l, r] : residual) {
    ls.push_back(l);
    rs.push_back(r);
  }
  return Ineq::of(Term::tuple(ls), Term::tuple(rs));
}

}  // namespace

ConstraintStore project(const ConstraintStore& store,
                        const std::vector<std::string>& vars,
                        const SolverEnv& env) {
  if (store.unsat()) return store;
  std::set<std::string> keep(vars.begin(), vars.end());
  ConstraintStore out;
  std::set<std::string> seed = keep;
  for (const auto& v : vars) {
    if (!store.equalities().contains(v)) continue;
    Term img = store.apply(Term::variable(v));
    if (img.is_variable() && img.name() == v) continue;
    out = add_equality(out, Term::variable(v), img, env);
    insert_all(seed, img);
  }

  std::vector<Ineq> live = store.inequalities();

  // Occurrence counts of free variables across inequalities.
  auto occurrences = [&](const std::string& v) {
    int n = 0;
    for (const auto& q : live)
      for (auto& w : q.free_variables())
        if (w == v) ++n;
    return n;
  };

  // Simplify away dangling existential variables where sound: quantifier
  // free ineq, variable private to it.
  std::size_t floor = universe_floor(env.sig);
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < live.size(); ++i) {
      if (!live[i].univ.empty()) continue;
      for (const auto& v : live[i].free_variables()) {
        if (seed.count(v) || occurrences(v) != 1) continue;
        auto simpler = simplify_exists_var(live[i], v, floor);
        if (!simpler) {
          live.erase(live.begin() + static_cast<std::ptrdiff_t>(i));
          --i;
          changed = true;
          break;
        }
        if (!same_ineq(*simpler, live[i])) {
          if (classify_ineq(*simpler) == IneqClass::Unsatisfiable)
            return ConstraintStore::unsat_store();
          live[i] = *simpler;
          changed = true;
          break;
        }
      }
    }
  }

  // Keep inequalities connected (through shared variables) to the kept set.
  std::set<std::string> reach = seed;
  std::vector<bool> kept(live.size(), false);
  for (bool grew = true; grew;) {
    grew = false;
    for (std::size_t i = 0; i < live.size(); ++i) {
      if (kept[i]) continue;
      bool touches = false;
      for (auto& v : live[i].free_variables())
        if (reach.count(v)) touches = true;
      if (!touches) continue;
      kept[i] = true;
      grew = true;
      for (auto& v : live[i].free_variables()) reach.insert(v);
    }
  }
  for (std::size_t i = 0; i < live.size(); ++i)
    if (kept[i]) out = add_inequality(out, live[i], env);
  return out;
}

AnswerFormula negate_answers(const Atom& a,
                             const std::vector<ConstraintStore>& answers,
                             const SolverEnv& env, std::size_t& fresh_counter,
                             std::size_t max_disjuncts) {
  std::vector<std::string> xs;
  a.collect_variables(xs);
  std::set<std::string> xset(xs.begin(), xs.end());

  std::vector<ConstraintStore> result;
  result.push_back(ConstraintStore{});  // true

  for (const ConstraintStore& raw : answers) {
    ConstraintStore answer = project(raw, xs, env);
    if (answer.unsat()) continue;  // false answer negates to true

    // Rename every non-query variable fresh.
    std::set<std::string> others = store_var_names(answer);
    Substitution rename;
    for (const auto& v : others)
      if (!xset.count(v))
        rename.bind(v, Term::variable("_R" + std::to_string(fresh_counter++)));
    std::vector<std::pair<std::string, Term>> pairs;
    std::set<std::string> image_vars;
    for (const auto& [v, t] : answer.equalities().resolved()) {
      if (!xset.count(v)) continue;
      Term img = rename.apply(t);
      pairs.push_back({v, img});
      insert_all(image_vars, img);
    }
    std::vector<Ineq> cs;
    for (const auto& q : answer.inequalities()) cs.push_back(q.apply(rename));

    if (pairs.empty() && cs.empty()) return AnswerFormula{{}};  // not true

    for (const auto& q : cs)
      for (const auto& v : q.free_variables())
        if (!xset.count(v) && !image_vars.count(v))
          throw ResourceError(
              "cannot normalize negation: answer constraint " + q.str() +
              " has a local existential variable");

    std::vector<ConstraintStore> negated;
    if (!pairs.empty()) {
      TermVec ls, rs;
      for (auto& [v, t] : pairs) {
        ls.push_back(Term::variable(v));
        rs.push_back(t);
      }
      Term l = ls.size() == 1 ? ls[0] : Term::tuple(ls);
      Term r = rs.size() == 1 ? rs[0] : Term::tuple(rs);
      std::vector<std::string> univ(image_vars.begin(), image_vars.end());
      ConstraintStore d0 =
          add_inequality(ConstraintStore{}, Ineq::of(l, r, univ), env);
      if (!d0.unsat()) negated.push_back(std::move(d0));
    }
    ConstraintStore base;
    for (auto& [v, t] : pairs) {
      base = add_equality(base, Term::variable(v), t, env);
      if (base.unsat()) break;  // cannot happen: solved form
    }
    for (std::size_t j = 0; j < cs.size() && !base.unsat(); ++j) {
      // base holds c_1..c_{j-1}; add the negation of c_j
      Ineq cj = canonical_univ(cs[j], store_var_names(base));
      ConstraintStore d = add_equality(base, cj.lhs, cj.rhs, env);
      if (!d.unsat()) negated.push_back(std::move(d));
      base = add_inequality(base, cs[j], env);
    }

    std::vector<ConstraintStore> product;
    for (const auto& acc : result)
      for (const auto& d : negated) {
        ConstraintStore c = conjoin(acc, d, env);
        if (c.unsat()) continue;
        if (product.size() >= max_disjuncts)
          throw ResourceError("negated answer formula exceeds " +
                              std::to_string(max_disjuncts) + " disjuncts");
        product.push_back(std::move(c));
      }
    result = std::move(product);
    if (result.empty()) break;
  }
  return AnswerFormula{std::move(result)};
}

bool satisfied_by(const ConstraintStore& store,
                  const std::map<std::string, Term>& assignment,
                  const HerbrandSlice& univ) {
  if (store.unsat()) return false;
  Substitution sigma;
  for (const auto& [v, t] : assignment) sigma.bind(v, t);
  for (const auto& [v, t] : store.equalities().resolved()) {
    Term lv = sigma.apply(Term::variable(v));
    Term rv = sigma.apply(t);
    if (!lv.ground() || !rv.ground())
      throw std::invalid_argument("assignment does not cover equality " + v);
    if (lv != rv) return false;
  }
  for (const auto& q : store.inequalities()) {
    Ineq g = q.apply(sigma);
    std::vector<std::string> rest = g.free_variables();
    if (!rest.empty())
      throw std::invalid_argument("assignment does not cover " + q.str());
    // forall univ over the slice: no instantiation may equate the sides
    std::vector<std::string> us = g.univ;
    if (us.empty()) {
      if (g.lhs == g.rhs) return false;
      continue;
    }
    std::vector<std::size_t> idx(us.size(), 0);
    bool violated = false;
    for (;;) {
      Substitution inst;  // raw apply: quantified names instantiated
      for (std::size_t i = 0; i < us.size(); ++i)
        inst.bind(us[i], univ.terms[idx[i]]);
      if (inst.apply(g.lhs) == inst.apply(g.rhs)) {
        violated = true;
        break;
      }
      std::size_t k = idx.size();
      while (k > 0) {
        if (++idx[k - 1] < univ.size()) break;
        idx[k - 1] = 0;
        --k;
      }
      if (k == 0) break;
    }
    if (violated) return false;
  }
  return true;
}

std::vector<std::map<std::string, Term>> ground_solutions(
    const ConstraintStore& store, const std::vector<std::string>& vars,
    const HerbrandSlice& slice) {
  // Extra store variables not listed by the caller are treated
  // existentially: an assignment counts if some completion satisfies.
  std::set<std::string> needed;
  for (const auto& [v, t] : store.equalities().resolved()) {
    needed.insert(v);
    insert_all(needed, t);
  }
  for (const auto& q : store.inequalities())
    for (auto& v : q.free_variables()) needed.insert(v);
  std::vector<std::string> extras;
  for (const auto& v : needed)
    if (std::find(vars.begin(), vars.end(), v) == vars.end())
      extras.push_back(v);

  std::vector<std::map<std::string, Term>> out;
  std::vector<std::size_t> idx(vars.size(), 0);
  if (slice.empty()) return out;
  for (;;) {
    std::map<std::string, Term> asg;
    for (std::size_t i = 0; i < vars.size(); ++i)
      asg[vars[i]] = slice.terms[idx[i]];
    bool ok = false;
    if (extras.empty()) {
      ok = satisfied_by(store, asg, slice);
    } else {
      std::vector<std::size_t> jdx(extras.size(), 0);
      for (;;) {
        std::map<std::string, Term> full = asg;
        for (std::size_t i = 0; i < extras.size(); ++i)
          full[extras[i]] = slice.terms[jdx[i]];
        if (satisfied_by(store, full, slice)) {
          ok = true;
          break;
        }
        std::size_t k = jdx.size();
        while (k > 0) {
          if (++jdx[k - 1] < slice.size()) break;
          jdx[k - 1] = 0;
          --k;
        }
        if (k == 0) break;
      }
    }
    if (ok) out.push_back(std::move(asg));
    std::size_t k = idx.size();
    while (k > 0) {
      if (++idx[k - 1] < slice.size()) break;
      idx[k - 1] = 0;
      --k;
    }
    if (k == 0) break;
  }
  return out;
}

}  // namespace glp
