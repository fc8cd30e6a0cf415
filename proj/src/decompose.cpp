// SPDX-License-Identifier: MIT
#include "glp/decompose.hpp"

#include <algorithm>
#include <map>

#include "glp/errors.hpp"

namespace glp {

namespace {

// Shared deletion core: skip the clauses named by id, erase body literals
// whose relation is in drop_rels.
Program erase_part(const Program& p, const std::set<int>& drop_ids,
                   const std::set<Rel>& drop_rels) {
  Program out;
  for (const Clause& c : p.clauses) {
    if (drop_ids.count(c.id)) continue;
    Clause kept;
    kept.id = c.id;
    kept.head = c.head;
    for (const Literal& l : c.body)
      if (!(l.is_atomlit() && drop_rels.count(l.atom.rel_id())))
        kept.body.push_back(l);
    out.clauses.push_back(std::move(kept));
  }
  return out;
}

std::string ranges(std::vector<int> ids) {
  std::sort(ids.begin(), ids.end());
  std::string out;
  for (std::size_t i = 0; i < ids.size();) {
    std::size_t j = i;
    while (j + 1 < ids.size() && ids[j + 1] == ids[j] + 1) ++j;
    if (!out.empty()) out += ", ";
    out += std::to_string(ids[i]);
    if (j > i) out += "-" + std::to_string(ids[j]);
    i = j + 1;
  }
  return out;
}

}  // namespace

std::string Partition::str() const {
  std::string out;
  for (const Part& part : parts)
    out += "part " + part.name + ": clauses " + ranges(part.clause_ids) + "\n";
  for (std::size_t i = 1; i < parts.size(); ++i) {
    out += "boundary " + parts[i].name + ": ";
    if (parts[i].weak_set.empty()) {
      out += "extends\n";
    } else {
      out += "weakly_extends ";
      for (std::size_t k = 0; k < parts[i].weak_set.size(); ++k) {
        if (k) out += ", ";
        out += parts[i].weak_set[k].str();
      }
      out += "\n";
    }
  }
  return out;
}

Program subprogram(const Program& p, const std::vector<int>& ids) {
  std::set<int> want;
  for (int id : ids) {
    if (!p.clause_by_id(id))
      throw AnnotationError("no clause with id " + std::to_string(id));
    want.insert(id);
  }
  Program out;
  for (const Clause& c : p.clauses)
    if (want.count(c.id)) out.clauses.push_back(c);
  return out;
}

bool extends(const Program& p1, const Program& r) {
  const std::set<Rel> defined = p1.defined_relations();
  for (const Rel& rel : r.relations())
    if (defined.count(rel)) return false;
  return true;
}

Program diff(const Program& p, const Program& r) {
  std::set<int> drop;
  for (const Clause& c : r.clauses) {
    const Clause* in_p = p.clause_by_id(c.id);
    if (!in_p) continue;
    if (!alpha_equal(*in_p, c))
      throw AnnotationError("difference: R is not a subset of P, clause " +
                            std::to_string(c.id) +
                            " names a different clause in each");
    drop.insert(c.id);
  }
  return erase_part(p, drop, r.defined_relations());
}

bool weakly_extends(const Program& p, const Program& r,
                    const std::set<Rel>& s) {
  const std::set<Rel> p_def = p.defined_relations();
  const std::set<Rel> r_def = r.defined_relations();
  std::set<Rel> active;
  for (const Rel& rel : s) {
    if (!p_def.count(rel)) continue;  // plays no role
    if (r_def.count(rel)) return false;
    active.insert(rel);
  }

  std::set<int> s_ids;
  Program s_clauses;
  for (const Clause& c : p.clauses) {
    if (!active.count(c.head.rel_id())) continue;
    s_ids.insert(c.id);
    s_clauses.clauses.push_back(c);
  }

  if (!extends(erase_part(p, s_ids, {}), s_clauses)) return false;
  if (!extends(r, s_clauses)) return false;
  // r cannot contain an s-clause (their head relations are defined in p
  // only), so its difference just erases the s-defined literals.
  return extends(erase_part(p, s_ids, active), erase_part(r, {}, active));
}

std::optional<std::string> validate_partition(const Program& p,
                                              const Partition& pt) {
  if (pt.parts.empty()) return "partition has no parts";
  std::set<std::string> names;
  std::set<int> seen;
  for (const Partition::Part& part : pt.parts) {
    if (part.name.empty()) return "part with an empty name";
    if (!names.insert(part.name).second)
      return "duplicate part name " + part.name;
    for (int id : part.clause_ids) {
      if (!p.clause_by_id(id))
        return "part " + part.name + ": no clause with id " +
               std::to_string(id);
      if (!seen.insert(id).second)
        return "clause " + std::to_string(id) +
               " appears in more than one part";
    }
  }
  for (const Clause& c : p.clauses)
    if (!seen.count(c.id))
      return "clause " + std::to_string(c.id) + " is not covered by any part";
  if (!pt.parts.front().weak_set.empty())
    return "base part " + pt.parts.front().name +
           " has no boundary to attach a relation set to";

  for (std::size_t i = 1; i < pt.parts.size(); ++i) {
    const Program lower = subprogram(p, pt.parts[i - 1].clause_ids);
    const Program upper = subprogram(p, pt.parts[i].clause_ids);
    const std::vector<Rel>& ws = pt.parts[i].weak_set;
    if (ws.empty()) {
      if (!extends(upper, lower))
        return "part " + pt.parts[i].name + " does not extend part " +
               pt.parts[i - 1].name;
    } else if (!weakly_extends(upper, lower,
                               std::set<Rel>(ws.begin(), ws.end()))) {
      return "part " + pt.parts[i].name + " does not weakly extend part " +
             pt.parts[i - 1].name + " w.r.t. its relation set";
    }
  }
  return std::nullopt;
}

std::vector<Partition> suggest_partition(const Program& p) {
  const std::set<Rel> defined = p.defined_relations();
  std::map<Rel, std::set<Rel>> dep;
  for (const Clause& c : p.clauses) {
    std::set<Rel>& out = dep[c.head.rel_id()];
    for (const Literal& l : c.body)
      if (l.is_atomlit() && defined.count(l.atom.rel_id()))
        out.insert(l.atom.rel_id());
  }

  // Closed relation sets: everything a relation reaches, itself included.
  // Distinct relations of one dependency cycle close to the same set.
  std::set<std::set<Rel>> cores;
  for (const auto& [root, unused] : dep) {
    std::set<Rel> core{root};
    std::vector<Rel> todo{root};
    while (!todo.empty()) {
      const Rel cur = todo.back();
      todo.pop_back();
      for (const Rel& next : dep[cur])
        if (core.insert(next).second) todo.push_back(next);
    }
    cores.insert(std::move(core));
  }

  std::vector<Partition> out;
  for (const std::set<Rel>& core : cores) {
    Partition cand{{{"base", {}, {}}, {"step", {}, {}}}};
    for (const Clause& c : p.clauses)
      (core.count(c.head.rel_id()) ? cand.parts[0] : cand.parts[1])
          .clause_ids.push_back(c.id);
    if (cand.parts[0].clause_ids.empty() || cand.parts[1].clause_ids.empty())
      continue;
    if (!validate_partition(p, cand)) out.push_back(std::move(cand));
  }
  std::sort(out.begin(), out.end(), [](const Partition& a, const Partition& b) {
    if (a.parts[0].clause_ids.size() != b.parts[0].clause_ids.size())
      return a.parts[0].clause_ids.size() > b.parts[0].clause_ids.size();
    return a.parts[0].clause_ids < b.parts[0].clause_ids;
  });

  Partition whole{{{"whole", {}, {}}}};
  for (const Clause& c : p.clauses) whole.parts[0].clause_ids.push_back(c.id);
  out.push_back(std::move(whole));
  return out;
}

}  // namespace glp
