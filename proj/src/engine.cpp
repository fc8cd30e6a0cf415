// SPDX-License-Identifier: MIT
#include "glp/engine.hpp"

#include <algorithm>
#include <deque>
#include <utility>

#include "glp/errors.hpp"

namespace glp {

std::string Outcome::str() const {
  switch (kind) {
    case Kind::Answer: return "answer: " + store.str();
    case Kind::Failure: return "failure";
    case Kind::Flounder: return "flounder: \\+ " + selected.str();
    case Kind::BudgetExceeded:
      return "budget_exceeded: " + std::to_string(steps);
    case Kind::ResourceLimit: return "resource_limit: " + detail;
  }
  return "?";
}

Outcome Outcome::answer(ConstraintStore s) {
  Outcome o;
  o.kind = Kind::Answer;
  o.store = std::move(s);
  return o;
}
Outcome Outcome::failure() { return {}; }
Outcome Outcome::flounder(Atom a) {
  Outcome o;
  o.kind = Kind::Flounder;
  o.selected = std::move(a);
  return o;
}
Outcome Outcome::budget_exceeded(std::size_t steps) {
  Outcome o;
  o.kind = Kind::BudgetExceeded;
  o.steps = steps;
  return o;
}
Outcome Outcome::resource_limit(std::string detail) {
  Outcome o;
  o.kind = Kind::ResourceLimit;
  o.detail = std::move(detail);
  return o;
}

namespace {

bool primitive_under(const Literal& l, const ConstraintStore& store) {
  if (l.kind != Literal::Kind::Ineq) return false;
  return classify_ineq(Ineq::from_literal(l.apply(store.equalities()))) ==
         IneqClass::Primitive;
}

std::vector<std::string> atom_variables(const Atom& a) {
  std::vector<std::string> vars;
  a.collect_variables(vars);
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  return vars;
}

// Terminal events unwind the whole derivation, subsidiary trees included.
struct BudgetHit {
  std::size_t steps;
};
struct FlounderHit {
  Atom selected;
};

class Engine {
 public:
  Engine(const Program& p, const SolverEnv& env, const SolveOptions& opts)
      : p_(p), env_(env), opts_(opts), left_(opts.budget) {}

  // Emits answers in depth-first order; returns false when max_answers
  // truncated the stream.
  template <typename Emit>
  bool run(const Goal& start, const std::vector<std::string>& proj, Emit emit);

 private:
  struct Expansion {
    std::optional<ConstraintStore> answer;
    std::vector<Goal> children;  // left-to-right
  };

  void charge() {
    if (left_ == 0) throw BudgetHit{opts_.budget};
    --left_;
  }

  // Keeps stores small on long derivations: variables not in the remaining
  // literals (or the answer projection) never recur, so they are projected
  // away as soon as a child goal is formed.
  Goal child(std::vector<Literal> literals, ConstraintStore store,
             const std::vector<std::string>& proj) {
    std::vector<std::string> live = proj;
    for (const Literal& l : literals) l.collect_variables(live);
    return Goal{std::move(literals), project(store, live, env_)};
  }

  Expansion expand(const Goal& g, const std::vector<std::string>& proj);
  std::vector<ConstraintStore> subsidiary(const Goal& start,
                                          const std::vector<std::string>& proj,
                                          bool stop_on_first);

  const Program& p_;
  const SolverEnv& env_;
  const SolveOptions& opts_;
  std::size_t left_;
  std::size_t fresh_ = 0;
};

Engine::Expansion Engine::expand(const Goal& g,
                                 const std::vector<std::string>& proj) {
  Selection sel = select_literal(g, env_);
  Expansion out;

  if (sel.all_primitive) {
    ConstraintStore store = g.store;
    for (const Literal& l : g.literals) {
      charge();
      store = add_inequality(store, Ineq::from_literal(l), env_);
    }
    if (!store.unsat()) out.answer = project(store, proj, env_);
    return out;
  }

  const Literal& lit = g.literals[sel.index];
  std::vector<Literal> rest;
  rest.reserve(g.literals.size() - 1);
  rest.insert(rest.end(), g.literals.begin(), g.literals.begin() + sel.index);
  rest.insert(rest.end(), g.literals.begin() + sel.index + 1,
              g.literals.end());

  switch (lit.kind) {
    case Literal::Kind::Eq: {
      charge();
      ConstraintStore st = add_equality(g.store, lit.lhs, lit.rhs, env_);
      if (!st.unsat()) out.children.push_back(child(rest, std::move(st), proj));
      return out;
    }
    case Literal::Kind::Ineq: {
      charge();
      ConstraintStore st =
          add_inequality(g.store, Ineq::from_literal(lit), env_);
      if (!st.unsat()) out.children.push_back(child(rest, std::move(st), proj));
      return out;
    }
    case Literal::Kind::Pos: {
      std::vector<const Clause*> candidates = p_.clauses_for(lit.atom.rel_id());
      if (candidates.empty()) {
        charge();
        return out;
      }
      for (const Clause* c : candidates) {
        charge();
        Clause rc = rename_apart(*c, fresh_);
        ConstraintStore st = add_equality(g.store, lit.atom.as_term(),
                                          rc.head.as_term(), env_);
        if (st.unsat()) continue;
        std::vector<Literal> next;
        next.reserve(rc.body.size() + rest.size());
        next.insert(next.end(), rest.begin(), rest.begin() + sel.index);
        next.insert(next.end(), rc.body.begin(), rc.body.end());
        next.insert(next.end(), rest.begin() + sel.index, rest.end());
        out.children.push_back(child(std::move(next), std::move(st), proj));
      }
      return out;
    }
    case Literal::Kind::Neg: {
      Atom sub_atom = lit.atom.apply(g.store.equalities());
      if (opts_.mode == SolveMode::NegationAsFailure) {
        if (!sub_atom.ground()) throw FlounderHit{sub_atom};
        charge();
        Goal start{{Literal::pos(sub_atom)}, ConstraintStore{}};
        std::vector<ConstraintStore> hits =
            subsidiary(start, {}, /*stop_on_first=*/true);
        if (hits.empty()) out.children.push_back(Goal{rest, g.store});
        return out;
      }
      charge();
      std::vector<std::string> sub_vars = atom_variables(sub_atom);
      Goal start{{Literal::pos(sub_atom)}, project(g.store, sub_vars, env_)};
      std::vector<ConstraintStore> answers =
          subsidiary(start, sub_vars, /*stop_on_first=*/false);
      AnswerFormula negated = negate_answers(sub_atom, answers, env_, fresh_,
                                             opts_.max_disjuncts);
      for (const ConstraintStore& d : negated.disjuncts) {
        ConstraintStore st = conjoin(g.store, d, env_);
        if (!st.unsat()) out.children.push_back(child(rest, std::move(st), proj));
      }
      return out;
    }
  }
  return out;
}

std::vector<ConstraintStore> Engine::subsidiary(
    const Goal& start, const std::vector<std::string>& proj,
    bool stop_on_first) {
  std::vector<ConstraintStore> answers;
  std::deque<Goal> frontier{start};
  while (!frontier.empty()) {
    Goal g = std::move(frontier.front());
    frontier.pop_front();
    Expansion e = expand(g, proj);
    if (e.answer) {
      answers.push_back(std::move(*e.answer));
      if (stop_on_first) return answers;
    }
    for (Goal& child : e.children) frontier.push_back(std::move(child));
  }
  return answers;
}

template <typename Emit>
bool Engine::run(const Goal& start, const std::vector<std::string>& proj,
                 Emit emit) {
  std::vector<Goal> stack{start};
  while (!stack.empty()) {
    Goal g = std::move(stack.back());
    stack.pop_back();
    Expansion e = expand(g, proj);
    if (e.answer && !emit(std::move(*e.answer))) return false;
    for (auto it = e.children.rbegin(); it != e.children.rend(); ++it)
      stack.push_back(std::move(*it));
  }
  return true;
}

}  // namespace

SolverEnv env_for_query(const std::vector<Literal>& query, const Program& p) {
  Signature sig = p.signature();
  for (const Literal& l : query) {
    if (l.is_atomlit()) {
      // Query atoms contribute as terms, so their relation symbols enter the
      // signature as function symbols.  Any functor of positive arity makes
      // the universe infinite, which keeps complement answers such as
      // X \= a, X \= b satisfiable even over a program whose own constants
      // are exactly a and b: the store is read over the open universe the
      // query ranges over, not the closed set of program constants.
      collect_signature(l.atom.as_term(), sig);
    } else {
      collect_signature(l.lhs, sig);
      collect_signature(l.rhs, sig);
    }
  }
  return SolverEnv(std::move(sig));
}

Selection select_literal(const Goal& g, const SolverEnv&) {
  for (std::size_t i = 0; i < g.literals.size(); ++i)
    if (!primitive_under(g.literals[i], g.store)) return Selection{false, i};
  return Selection{true, 0};
}

std::vector<Outcome> solve(const std::vector<Literal>& query, const Program& p,
                           const SolveOptions& opts) {
  SolverEnv env = env_for_query(query, p);
  std::vector<std::string> proj;
  for (const Literal& l : query) l.collect_variables(proj);
  std::sort(proj.begin(), proj.end());
  proj.erase(std::unique(proj.begin(), proj.end()), proj.end());

  std::vector<Outcome> stream;
  Engine engine(p, env, opts);
  bool complete = true;
  try {
    complete = engine.run(Goal{query, ConstraintStore{}}, proj,
                          [&](ConstraintStore store) {
                            stream.push_back(Outcome::answer(std::move(store)));
                            return stream.size() < opts.max_answers;
                          });
  } catch (const BudgetHit& hit) {
    stream.push_back(Outcome::budget_exceeded(hit.steps));
    return stream;
  } catch (const FlounderHit& hit) {
    stream.push_back(Outcome::flounder(hit.selected));
    return stream;
  } catch (const ResourceError& e) {
    stream.push_back(Outcome::resource_limit(e.what()));
    return stream;
  }
  if (complete && stream.empty()) stream.push_back(Outcome::failure());
  return stream;
}

bool prove_ground(const Atom& a, const Program& p, std::size_t budget) {
  if (!a.ground()) throw ResourceError("prove_ground needs a ground atom");
  SolveOptions opts;
  opts.budget = budget;
  opts.max_answers = 1;
  std::vector<Outcome> stream = solve({Literal::pos(a)}, p, opts);
  for (const Outcome& o : stream) {
    switch (o.kind) {
      case Outcome::Kind::Answer: return true;
      case Outcome::Kind::Failure: return false;
      case Outcome::Kind::Flounder:
        throw ResourceError("query floundered: " + o.selected.str());
      case Outcome::Kind::BudgetExceeded:
        throw ResourceError("budget exceeded proving " + a.str());
      case Outcome::Kind::ResourceLimit:
        throw ResourceError(o.detail);
    }
  }
  return false;
}

}  // namespace glp
