// SPDX-License-Identifier: MIT
#include "glp/completion.hpp"

#include <algorithm>
#include <functional>
#include <optional>

#include "glp/errors.hpp"
#include "glp/herbrand.hpp"
#include "glp/modelcheck.hpp"

namespace glp {

namespace {

// vars^k tuples from the slice; false return means fn stopped the scan.
bool each_tuple(std::size_t k, const HerbrandSlice& slice,
                const std::function<bool(const TermVec&)>& fn) {
  if (slice.empty() && k > 0) return true;
  TermVec tuple(k, slice.empty() ? Term::constant("a") : slice.terms[0]);
  std::vector<std::size_t> idx(k, 0);
  while (true) {
    if (!fn(tuple)) return false;
    std::size_t i = k;
    while (i > 0) {
      if (++idx[i - 1] < slice.size()) {
        tuple[i - 1] = slice.terms[idx[i - 1]];
        break;
      }
      idx[i - 1] = 0;
      tuple[i - 1] = slice.terms[0];
      --i;
    }
    if (i == 0) return true;
  }
}

enum class Derived { Yes, No, Undecided };

// Derivability of `ga` from the completed definition, local existentials
// ranging over `locals`.  No is universe-independent: every disjunct died
// by unification or by a ground false body part.  Undecided means some
// disjunct survived to a local search that exhausted the slice, so deeper
// locals might still support the atom.
Derived derive_rhs(const CompletedDefinition& def, const Atom& ga,
                   const InterpretationSpec& I, const HerbrandSlice& locals,
                   std::size_t cap, std::size_t& work) {
  bool undecided = false;
  for (const CompletedDisjunct& d : def.disjuncts) {
    // Solving the parameter equalities against ground arguments is exactly
    // unification of the original head arguments with them.
    TermVec head_args;
    for (const auto& [param, arg] : d.equalities) head_args.push_back(arg);
    auto mgu = unify_all(head_args, ga.args);
    if (!mgu) continue;

    std::vector<Literal> body;
    for (const Literal& l : d.body) body.push_back(l.apply(*mgu));
    std::vector<std::string> open;
    for (const Literal& l : body) l.collect_variables(open);
    std::sort(open.begin(), open.end());
    open.erase(std::unique(open.begin(), open.end()), open.end());

    if (open.empty()) {
      if (holds_all(I, body)) return Derived::Yes;
      continue;
    }

    // A ground body part that is already false kills the disjunct exactly,
    // no matter what the locals become.
    bool dead = false;
    for (const Literal& l : body) {
      std::vector<std::string> lv;
      l.collect_variables(lv);
      if (lv.empty() && !I.holds(l)) {
        dead = true;
        break;
      }
    }
    if (dead) continue;

    bool found = false;
    each_tuple(open.size(), locals, [&](const TermVec& tuple) {
      if (++work > cap)
        throw ResourceError("completed definition of " + ga.rel_id().str() +
                            " needs more than " + std::to_string(cap) +
                            " ground tuples");
      Substitution rho;
      for (std::size_t i = 0; i < open.size(); ++i)
        rho.bind(open[i], tuple[i]);
      std::vector<Literal> ground;
      for (const Literal& l : body) ground.push_back(l.apply(rho));
      if (holds_all(I, ground)) {
        found = true;
        return false;
      }
      return true;
    });
    if (found) return Derived::Yes;
    undecided = true;
  }
  return undecided ? Derived::Undecided : Derived::No;
}

}  // namespace

std::string CompletedDefinition::str() const {
  std::string out = relation.name + "(";
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (i) out += ", ";
    out += params[i];
  }
  out += ") <-> ";
  if (disjuncts.empty()) return out + "false";
  for (std::size_t i = 0; i < disjuncts.size(); ++i) {
    if (i) out += " | ";
    const CompletedDisjunct& d = disjuncts[i];
    out += "(";
    bool first = true;
    for (const auto& [param, arg] : d.equalities) {
      if (!first) out += ", ";
      first = false;
      out += param.str() + " = " + arg.str();
    }
    for (const Literal& l : d.body) {
      if (!first) out += ", ";
      first = false;
      out += l.str();
    }
    out += ")";
  }
  return out;
}

CompletedDefinition completed_definition(const Program& p, const Rel& r) {
  CompletedDefinition def;
  def.relation = r;
  for (std::size_t i = 1; i <= r.arity; ++i)
    def.params.push_back("X" + std::to_string(i));

  std::size_t counter = 0;
  for (const Clause* c : p.clauses_for(r)) {
    Clause fresh = rename_apart(*c, counter);
    CompletedDisjunct d;
    d.clause_id = fresh.id;
    for (std::size_t i = 0; i < r.arity; ++i)
      d.equalities.emplace_back(Term::variable(def.params[i]),
                                fresh.head.args[i]);
    d.body = fresh.body;
    d.locals = fresh.variables();
    def.disjuncts.push_back(std::move(d));
  }
  return def;
}

std::set<Rel> neg_set(const Program& p) {
  std::set<Rel> s;
  for (const Clause& c : p.clauses)
    for (const Literal& l : c.body)
      if (l.kind == Literal::Kind::Neg) s.insert(l.atom.rel_id());

  bool changed = true;
  while (changed) {
    changed = false;
    for (const Clause& c : p.clauses) {
      if (!s.count(c.head.rel_id())) continue;
      for (const Literal& l : c.body)
        if (l.is_atomlit() && s.insert(l.atom.rel_id()).second) changed = true;
    }
  }
  return s;
}

Program minus_program(const Program& p) { return restrict(p, neg_set(p)); }

Program restrict(const Program& p, const std::set<Rel>& s) {
  Program out;
  for (const Clause& c : p.clauses)
    if (s.count(c.head.rel_id())) out.clauses.push_back(c);
  return out;
}

CheckReport check_completion_model(const Program& p,
                                   const InterpretationSpec& I,
                                   const std::set<Rel>& s,
                                   const CompareEnv& env) {
  const Program minus = restrict(p, s);

  CheckReport report;
  for (const Clause& c : minus.clauses)
    report.absorb(check_clause_models(c, I, env), c.id, "comp-clause");
  if (report.status == CheckStatus::Refuted ||
      report.status == CheckStatus::Invalid)
    return report;

  // The completed definitions speak about every relation of s that occurs
  // in the program; one without clauses completes to false, so its
  // extension has to be empty.  A relation of s that never occurs at all
  // is unconstrained.
  const std::set<Rel> occurring = p.relations();
  std::map<Rel, CompletedDefinition> defs;
  for (const Rel& r : s)
    if (occurring.count(r)) defs.emplace(r, completed_definition(minus, r));
  if (defs.empty()) return report;

  int verified = 0;
  std::string undecided_note;
  try {
    for (int d = 1; d <= env.depth; ++d) {
      HerbrandSlice atoms_slice;
      try {
        atoms_slice = build_slice(env.sig, d, env.instance_cap);
      } catch (const ResourceError&) {
        if (verified == 0) throw;
        break;
      }
      HerbrandSlice locals_slice;
      try {
        locals_slice = build_slice(env.sig, d + 1, env.instance_cap);
      } catch (const ResourceError&) {
        locals_slice = atoms_slice;
      }

      std::size_t work = 0;
      std::optional<Witness> bad;
      std::string undecided;
      bool out_of_room = false;
      try {
        for (const auto& [r, def] : defs) {
          enumerate_extension(
              I, r, atoms_slice, env.instance_cap, [&](const Atom& ga) {
                switch (derive_rhs(def, ga, I, locals_slice,
                                   env.instance_cap, work)) {
                  case Derived::Yes:
                    return true;
                  case Derived::No: {
                    Witness w;
                    w.instance = Clause{0, ga, {}};
                    w.obligation = "completion";
                    w.detail = ga.str() +
                               " is true in the interpretation but its "
                               "completed definition cannot derive it";
                    bad = std::move(w);
                    return false;
                  }
                  case Derived::Undecided:
                    if (undecided.empty())
                      undecided = ga.str() +
                                  " has no supporting disjunct with locals "
                                  "to depth " +
                                  std::to_string(locals_slice.depth);
                    return true;
                }
                return true;
              });
          if (bad) break;
        }
      } catch (const ResourceError&) {
        if (verified == 0) throw;
        out_of_room = true;
      }
      if (out_of_room) break;
      if (bad) {
        report.absorb(CheckReport::refuted(std::move(*bad)), 0, "completion");
        return report;
      }
      if (undecided.empty()) {
        verified = d;
        undecided_note.clear();
      } else {
        undecided_note = undecided;
      }
    }
  } catch (const AnnotationError& e) {
    report.absorb(CheckReport::invalid(e.what()), 0, "completion");
    return report;
  }

  CheckReport onlyif = CheckReport::bounded(verified);
  if (!undecided_note.empty())
    onlyif.note(0, "completion", CheckStatus::VerifiedToBound,
                undecided_note);
  report.absorb(onlyif, 0, "completion");
  return report;
}

}  // namespace glp
