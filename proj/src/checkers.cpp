// SPDX-License-Identifier: MIT
#include "glp/checkers.hpp"

#include <optional>

#include "glp/completion.hpp"
#include "glp/decompose.hpp"
#include "glp/errors.hpp"
#include "glp/modelcheck.hpp"

namespace glp {

namespace {

Program complement(const Program& p, const Program& r) {
  std::set<int> drop;
  for (const Clause& c : r.clauses) drop.insert(c.id);
  Program out;
  for (const Clause& c : p.clauses)
    if (!drop.count(c.id)) out.clauses.push_back(c);
  return out;
}

struct ExtendsViolation {
  Clause clause;
  Rel rel;
};

// First clause of `host` mentioning a relation defined in `definer`.
std::optional<ExtendsViolation> extends_violation(const Program& definer,
                                                  const Program& host) {
  const std::set<Rel> defined = definer.defined_relations();
  for (const Clause& c : host.clauses) {
    if (defined.count(c.head.rel_id()))
      return ExtendsViolation{c, c.head.rel_id()};
    for (const Literal& l : c.body)
      if (l.is_atomlit() && defined.count(l.atom.rel_id()))
        return ExtendsViolation{c, l.atom.rel_id()};
  }
  return std::nullopt;
}

std::optional<Witness> extends_witness(const Program& upper,
                                       const Program& lower) {
  if (auto v = extends_violation(upper, lower))
    return Witness{v->clause, "extends",
                   "relation " + v->rel.str() +
                       " is defined in the upper layer but occurs here"};
  return std::nullopt;
}

// Mirrors weakly_extends step by step, reporting the first broken
// requirement.  Every relation of s is defined in `upper` (callers check).
std::optional<Witness> weak_extends_witness(const Program& upper,
                                            const Program& lower,
                                            const std::set<Rel>& s) {
  std::set<int> s_ids;
  Program shared, rest;
  for (const Clause& c : upper.clauses) {
    if (s.count(c.head.rel_id())) {
      s_ids.insert(c.id);
      shared.clauses.push_back(c);
    } else {
      rest.clauses.push_back(c);
    }
  }
  if (auto v = extends_violation(rest, shared))
    return Witness{v->clause, "weakly_extends",
                   "relation " + v->rel.str() +
                       " is defined above the shared layer but occurs in it"};
  if (auto v = extends_violation(lower, shared))
    return Witness{v->clause, "weakly_extends",
                   "relation " + v->rel.str() +
                       " is defined in the lower layer but occurs in the "
                       "shared one"};

  Program lower_erased;
  for (const Clause& c : lower.clauses) {
    Clause kept{c.id, c.head, {}};
    for (const Literal& l : c.body)
      if (!(l.is_atomlit() && s.count(l.atom.rel_id())))
        kept.body.push_back(l);
    lower_erased.clauses.push_back(std::move(kept));
  }
  if (auto v = extends_violation(diff(upper, shared), lower_erased))
    return Witness{v->clause, "weakly_extends",
                   "relation " + v->rel.str() +
                       " still ties the layers together once the shared "
                       "relations are erased"};
  return std::nullopt;
}

InterpretationSpec union_specs(InterpretationSpec a,
                               const InterpretationSpec& b) {
  for (const auto& [r, c] : b.conds) {
    auto it = a.conds.find(r);
    if (it == a.conds.end())
      a.conds.emplace(r, c);
    else
      it->second = Cond::disj({it->second, c});
  }
  for (const auto& [name, terms] : b.sets) a.sets.emplace(name, terms);
  return a;
}

// Atoms of relations without a condition are simply absent from the union
// of the collected models, i.e. false; saying so keeps guard evaluation
// total.
InterpretationSpec complete_with_false(InterpretationSpec I,
                                       const Program& p) {
  for (const Rel& r : p.relations())
    if (!I.conds.count(r)) I.conds.emplace(r, Cond::none());
  return I;
}

// Def 4.1 both halves: the model obligation on the clauses and the
// completion obligation on the negative slice.
CheckReport specialized_model(const Program& p, const InterpretationSpec& I,
                              const CompareEnv& env) {
  CheckReport out;
  out.absorb(check_models(p, I, env));
  out.absorb(check_completion_model(p, I, neg_set(p), env));
  return out;
}

void decrease_obligations(CheckReport& out, const Program& p,
                          const LevelMapSpec& level,
                          const InterpretationSpec* guard,
                          const CompareEnv& env) {
  for (const Clause& c : p.clauses)
    for (std::size_t i = 0; i < c.body.size(); ++i) {
      if (c.body[i].is_constraint()) continue;
      out.absorb(compare_levels(level, c, i, true, guard, env), c.id,
                 "decrease");
    }
}

// Conditions 2-4 shared by up- and weak-up-acceptability; the layering
// requirement itself is checked by the callers.
void up_tail(CheckReport& out, const Program& p, const Program& r,
             const LevelMapSpec& level, const InterpretationSpec& I,
             const CompareEnv& env) {
  const Program diffed = diff(p, r);
  out.absorb(check_acceptable(diffed, level, I, env));
  out.absorb(check_acyclic(r, level, env));

  const std::set<Rel> r_def = r.defined_relations();
  const std::set<Rel> occurring = diffed.relations();
  for (const Clause& c : complement(p, r).clauses)
    for (std::size_t i = 0; i < c.body.size(); ++i) {
      if (!c.body[i].is_atomlit() || !r_def.count(c.body[i].atom.rel_id()))
        continue;
      std::vector<std::size_t> prefix;
      for (std::size_t j = 0; j < i; ++j)
        if (c.body[j].is_atomlit() &&
            occurring.count(c.body[j].atom.rel_id()))
          prefix.push_back(j);
      out.absorb(compare_levels(level, level, c, i, false, &I, env, &prefix),
                 c.id, "boundary");
    }
}

}  // namespace

CompareEnv env_for_annotation(const Program& p, const Annotation& ann) {
  CompareEnv env(p.signature());
  for (const auto& [name, terms] : ann.sets)
    for (const Term& t : terms) collect_signature(t, env.sig);
  env.depth = ann.universe_depth;
  env.instance_cap = ann.universe_cap;
  return env;
}

CheckReport check_acyclic(const Program& p, const LevelMapSpec& level,
                          const CompareEnv& env) {
  CheckReport out;
  decrease_obligations(out, p, level, nullptr, env);
  return out;
}

CheckReport check_acceptable(const Program& p, const LevelMapSpec& level,
                             const InterpretationSpec& I,
                             const CompareEnv& env) {
  CheckReport out;
  out.absorb(check_models(p, I, env));
  out.absorb(check_completion_model(p, I, neg_set(p), env));
  decrease_obligations(out, p, level, &I, env);
  return out;
}

CheckReport check_up_acceptable(const Program& p, const Program& r,
                                const LevelMapSpec& level,
                                const InterpretationSpec& I,
                                const CompareEnv& env) {
  try {
    CheckReport out;
    if (auto w = extends_witness(complement(p, r), r)) {
      out.absorb(CheckReport::refuted(*w), 0, "extends");
      return out;
    }
    out.note(0, "extends", CheckStatus::ProvedSymbolic);
    up_tail(out, p, r, level, I, env);
    return out;
  } catch (const AnnotationError& e) {
    return CheckReport::invalid(e.what());
  }
}

CheckReport check_weak_up_acceptable(const Program& p, const Program& r,
                                     const std::set<Rel>& s,
                                     const LevelMapSpec& level,
                                     const InterpretationSpec& I,
                                     const CompareEnv& env) {
  try {
    const Program upper = complement(p, r);
    const std::set<Rel> upper_def = upper.defined_relations();
    const std::set<Rel> r_def = r.defined_relations();
    for (const Rel& rel : s) {
      if (r_def.count(rel))
        return CheckReport::invalid("weak set relation " + rel.str() +
                                    " is defined in the lower layer");
      if (!upper_def.count(rel))
        return CheckReport::invalid("weak set relation " + rel.str() +
                                    " is not defined in the upper layer");
    }

    CheckReport out;
    if (auto w = weak_extends_witness(upper, r, s)) {
      out.absorb(CheckReport::refuted(*w), 0, "weakly_extends");
      return out;
    }
    out.note(0, "weakly_extends", CheckStatus::ProvedSymbolic);
    up_tail(out, p, r, level, I, env);
    return out;
  } catch (const AnnotationError& e) {
    return CheckReport::invalid(e.what());
  }
}

CheckReport check_low_acceptable(const Program& p, const Program& r,
                                 const LevelMapSpec& level,
                                 const InterpretationSpec& I,
                                 const CompareEnv& env) {
  try {
    CheckReport out;
    if (auto w = extends_witness(complement(p, r), r)) {
      out.absorb(CheckReport::refuted(*w), 0, "extends");
      return out;
    }
    out.note(0, "extends", CheckStatus::ProvedSymbolic);
    out.absorb(check_acyclic(diff(p, r), level, env));
    out.absorb(check_acceptable(r, level, I, env));

    const std::set<Rel> r_def = r.defined_relations();
    for (const Clause& c : complement(p, r).clauses)
      for (std::size_t i = 0; i < c.body.size(); ++i) {
        if (!c.body[i].is_atomlit() || !r_def.count(c.body[i].atom.rel_id()))
          continue;
        out.absorb(compare_levels(level, c, i, false, nullptr, env), c.id,
                   "boundary");
      }
    return out;
  } catch (const AnnotationError& e) {
    return CheckReport::invalid(e.what());
  }
}

CheckReport check_new_up_acceptable(const Program& p, const Program& r,
                                    const LevelMapSpec& level,
                                    const InterpretationSpec& i_r,
                                    const InterpretationSpec& i_p1,
                                    const CompareEnv& env) {
  try {
    CheckReport out;
    if (auto w = extends_witness(complement(p, r), r)) {
      out.absorb(CheckReport::refuted(*w), 0, "extends");
      return out;
    }
    out.note(0, "extends", CheckStatus::ProvedSymbolic);

    const Program diffed = diff(p, r);
    out.absorb(specialized_model(r, i_r, env));
    out.absorb(specialized_model(diffed, i_p1, env));
    out.absorb(check_acyclic(r, level, env));

    const InterpretationSpec joint =
        complete_with_false(union_specs(i_r, i_p1), p);
    const std::set<Rel> dif_def = diffed.defined_relations();
    const std::set<Rel> r_def = r.defined_relations();
    for (const Clause& c : complement(p, r).clauses)
      for (std::size_t i = 0; i < c.body.size(); ++i) {
        if (!c.body[i].is_atomlit()) continue;
        const Rel rel = c.body[i].atom.rel_id();
        if (dif_def.count(rel))
          out.absorb(compare_levels(level, c, i, true, &joint, env), c.id,
                     "decrease");
        else if (r_def.count(rel))
          out.absorb(compare_levels(level, c, i, false, &joint, env), c.id,
                     "boundary");
      }
    return out;
  } catch (const AnnotationError& e) {
    return CheckReport::invalid(e.what());
  }
}

namespace {

struct PartData {
  const PartDecl* decl = nullptr;
  Program prog;
  LevelMapSpec level;
  bool acyclic = false;
};

CheckReport run_incremental(const Program& p, const Annotation& ann,
                            const CompareEnv& env) {
  if (ann.parts.empty())
    return CheckReport::invalid("the incremental method needs at least one part");

  std::vector<PartData> parts;
  std::set<int> covered;
  for (const PartDecl& pd : ann.parts) {
    PartData data;
    data.decl = &pd;
    data.prog = subprogram(p, resolve_clause_ids(pd, p));
    data.level = ann.level_for(pd.name);
    if (pd.mode == "acyclic")
      data.acyclic = true;
    else if (pd.mode != "acceptable")
      return CheckReport::invalid("part " + pd.name +
                                  " needs mode acyclic or acceptable");
    for (const Clause& c : data.prog.clauses)
      if (!covered.insert(c.id).second)
        return CheckReport::invalid("clause " + std::to_string(c.id) +
                                    " appears in more than one part");
    parts.push_back(std::move(data));
  }
  for (const Clause& c : p.clauses)
    if (!covered.count(c.id))
      return CheckReport::invalid("clause " + std::to_string(c.id) +
                                  " is not covered by any part");
  if (!parts[0].decl->boundary.empty())
    return CheckReport::invalid("base part " + parts[0].decl->name +
                                " cannot declare a boundary");
  for (std::size_t i = 1; i < parts.size(); ++i) {
    const std::string& b = parts[i].decl->boundary;
    if (b != "extends" && b != "weakly_extends")
      return CheckReport::invalid("part " + parts[i].decl->name +
                                  " needs a declared boundary");
    if (!parts[i - 1].acyclic && !parts[i].acyclic)
      return CheckReport::invalid("parts " + parts[i - 1].decl->name +
                                  " and " + parts[i].decl->name +
                                  " are both acceptable across a boundary");
  }

  CheckReport out;
  InterpretationSpec known;  // union of the models collected so far
  known.sets = ann.sets;

  const PartData& base = parts[0];
  if (base.acyclic) {
    out.absorb(check_acyclic(base.prog, base.level, env));
  } else {
    const InterpretationSpec base_model = ann.model_for(base.decl->name);
    out.absorb(check_acceptable(base.prog, base.level, base_model, env));
    known = union_specs(known, base_model);
  }

  for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
    const PartData& lower = parts[i];
    const PartData& upper = parts[i + 1];

    if (upper.decl->boundary == "extends") {
      if (auto w = extends_witness(upper.prog, lower.prog)) {
        out.absorb(CheckReport::refuted(*w), 0, "extends");
        return out;
      }
      out.note(0, "extends", CheckStatus::ProvedSymbolic);
    } else {
      const std::set<Rel> s(upper.decl->boundary_set.begin(),
                            upper.decl->boundary_set.end());
      const std::set<Rel> upper_def = upper.prog.defined_relations();
      const std::set<Rel> lower_def = lower.prog.defined_relations();
      for (const Rel& rel : s) {
        if (lower_def.count(rel))
          return CheckReport::invalid("weak set relation " + rel.str() +
                                      " is defined below the boundary of part " +
                                      upper.decl->name);
        if (!upper_def.count(rel))
          return CheckReport::invalid("weak set relation " + rel.str() +
                                      " is not defined in part " +
                                      upper.decl->name);
      }
      if (auto w = weak_extends_witness(upper.prog, lower.prog, s)) {
        out.absorb(CheckReport::refuted(*w), 0, "weakly_extends");
        return out;
      }
      out.note(0, "weakly_extends", CheckStatus::ProvedSymbolic);
    }

    const Program step = diff(upper.prog, lower.prog);
    const std::set<Rel> lower_def = lower.prog.defined_relations();

    if (upper.acyclic) {
      out.absorb(check_acyclic(step, upper.level, env));
      // Unguarded link across the boundary, each side by its own map.
      for (const Clause& c : upper.prog.clauses)
        for (std::size_t k = 0; k < c.body.size(); ++k) {
          if (!c.body[k].is_atomlit() ||
              !lower_def.count(c.body[k].atom.rel_id()))
            continue;
          out.absorb(compare_levels(upper.level, lower.level, c, k, false,
                                    nullptr, env),
                     c.id, "boundary");
        }
      continue;
    }

    // The lower part is acyclic here (alternation was validated above).
    const InterpretationSpec upper_model = ann.model_for(upper.decl->name);
    const std::string& via = upper.decl->via;
    if (via == "a" || via.empty()) {
      out.absorb(check_acceptable(step, upper.level, upper_model, env));
      // No semantic information about the lower part is needed: its
      // relations count as fully true in the guards from here on.
      InterpretationSpec lower_all;
      for (const Rel& rel : lower_def) lower_all.conds.emplace(rel, Cond::all());
      known = union_specs(known, lower_all);
      known = union_specs(known, upper_model);
    } else if (via == "b") {
      const InterpretationSpec lower_model = ann.model_for(lower.decl->name);
      const Program lower_step =
          i == 0 ? lower.prog : diff(lower.prog, parts[i - 1].prog);
      out.absorb(specialized_model(lower_step, lower_model, env));
      out.absorb(specialized_model(step, upper_model, env));
      known = union_specs(known, lower_model);
      known = union_specs(known, upper_model);

      const InterpretationSpec guard = complete_with_false(known, p);
      const std::set<Rel> upper_def = upper.prog.defined_relations();
      for (const Clause& c : upper.prog.clauses)
        for (std::size_t k = 0; k < c.body.size(); ++k) {
          if (!c.body[k].is_atomlit() ||
              !upper_def.count(c.body[k].atom.rel_id()))
            continue;
          out.absorb(
              compare_levels(upper.level, c, k, true, &guard, env), c.id,
              "decrease");
        }
    } else {
      return CheckReport::invalid("part " + upper.decl->name +
                                  " has via " + via + "; only a or b exist");
    }

    const InterpretationSpec guard = complete_with_false(known, p);
    for (const Clause& c : upper.prog.clauses)
      for (std::size_t k = 0; k < c.body.size(); ++k) {
        if (!c.body[k].is_atomlit() ||
            !lower_def.count(c.body[k].atom.rel_id()))
          continue;
        out.absorb(compare_levels(upper.level, lower.level, c, k, false,
                                  &guard, env),
                   c.id, "boundary");
      }
  }
  return out;
}

}  // namespace

CheckReport check_incremental(const Program& p, const Annotation& ann,
                              const CompareEnv& env) {
  try {
    return run_incremental(p, ann, env);
  } catch (const AnnotationError& e) {
    return CheckReport::invalid(e.what());
  }
}

BoundedQueryReport check_bounded_query(const std::vector<Literal>& query,
                                       const Program& p,
                                       const Annotation& ann) {
  BoundedQueryReport rep;
  rep.bounded = true;
  for (const Literal& lit : query) {
    bool rigid = true;
    if (lit.is_atomlit()) {
      LevelMapSpec spec = ann.level_for("");
      if (ann.method == Method::Incremental) {
        for (const PartDecl& pd : ann.parts) {
          try {
            Program part = subprogram(p, resolve_clause_ids(pd, p));
            if (part.defined_relations().count(lit.atom.rel_id())) {
              spec = ann.level_for(pd.name);
              break;
            }
          } catch (const AnnotationError&) {
            break;  // malformed part: fall back to the shared map
          }
        }
      }
      try {
        rigid = is_rigid(spec, lit);
      } catch (const AnnotationError&) {
        rigid = false;  // no level for this relation
      }
    }
    rep.literal_rigid.push_back(rigid);
    rep.bounded = rep.bounded && rigid;
  }
  return rep;
}

namespace {

// The first declared part is the lower layer r; a second part, when
// declared, must cover the rest of the program.
Program lower_layer(const Program& p, const Annotation& ann,
                    std::size_t max_parts) {
  if (ann.parts.size() > max_parts)
    throw AnnotationError(method_str(ann.method) +
                          " takes at most " + std::to_string(max_parts) +
                          " parts");
  if (ann.parts.empty()) return Program{};
  Program r = subprogram(p, resolve_clause_ids(ann.parts[0], p));
  if (ann.parts.size() == 2) {
    Program rest = subprogram(p, resolve_clause_ids(ann.parts[1], p));
    std::set<int> ids;
    for (const Clause& c : r.clauses) ids.insert(c.id);
    for (const Clause& c : rest.clauses)
      if (!ids.insert(c.id).second)
        throw AnnotationError("clause " + std::to_string(c.id) +
                              " appears in both parts");
    for (const Clause& c : p.clauses)
      if (!ids.count(c.id))
        throw AnnotationError("clause " + std::to_string(c.id) +
                              " is not covered by any part");
  }
  return r;
}

std::string upper_name(const Annotation& ann) {
  return ann.parts.size() == 2 ? ann.parts[1].name : std::string{};
}

std::string base_name(const Annotation& ann) {
  return ann.parts.empty() ? std::string{} : ann.parts[0].name;
}

}  // namespace

CheckReport check_annotation(const Program& p, const Annotation& ann) {
  try {
    const CompareEnv env = env_for_annotation(p, ann);
    switch (ann.method) {
      case Method::Acyclic:
        return check_acyclic(p, ann.level_for(""), env);
      case Method::Acceptable:
        return check_acceptable(p, ann.level_for(""), ann.model_for(""), env);
      case Method::UpAcceptable:
        return check_up_acceptable(p, lower_layer(p, ann, 2),
                                   ann.level_for(""),
                                   ann.model_for(upper_name(ann)), env);
      case Method::WeakUpAcceptable:
        return check_weak_up_acceptable(
            p, lower_layer(p, ann, 2),
            std::set<Rel>(ann.weak_set.begin(), ann.weak_set.end()),
            ann.level_for(""), ann.model_for(upper_name(ann)), env);
      case Method::LowAcceptable:
        return check_low_acceptable(p, lower_layer(p, ann, 2),
                                    ann.level_for(""),
                                    ann.model_for(base_name(ann)), env);
      case Method::NewUpAcceptable: {
        if (ann.parts.size() != 2)
          return CheckReport::invalid(
              "new_up_acceptable needs two declared parts");
        return check_new_up_acceptable(p, lower_layer(p, ann, 2),
                                       ann.level_for(""),
                                       ann.model_for(base_name(ann)),
                                       ann.model_for(upper_name(ann)), env);
      }
      case Method::Incremental:
        return check_incremental(p, ann, env);
    }
    return CheckReport::invalid("unknown method");
  } catch (const AnnotationError& e) {
    return CheckReport::invalid(e.what());
  }
}

}  // namespace glp
