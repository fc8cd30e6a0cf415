// SPDX-License-Identifier: MIT
#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "glp/interp.hpp"
#include "glp/levelmap.hpp"
#include "glp/program.hpp"

namespace glp {

enum class Method {
  Acyclic,
  Acceptable,
  UpAcceptable,
  WeakUpAcceptable,
  LowAcceptable,
  NewUpAcceptable,
  Incremental,
};

std::string method_str(Method m);

// Program part, selected either by clause ids or by head relations.
// mode/boundary/via carry the per-part proof choices of the incremental
// method; boundary_set is the relation set S of a weakly_extends boundary.
struct PartDecl {
  std::string name;
  bool by_relations = false;
  std::vector<int> clause_ids;
  std::vector<Rel> relations;
  std::string mode;               // "acyclic" | "acceptable" | ""
  std::string boundary;           // "extends" | "weakly_extends" | ""
  std::vector<Rel> boundary_set;
  std::string via;                // "a" | "b" | ""
};

// Parsed .ann file: the claimed proof method plus everything it needs.
// Parts are kept in declaration order, base part first.  Level and model
// entries may be part-qualified; unqualified entries act as shared
// defaults for every part.
struct Annotation {
  Method method = Method::Acyclic;
  int universe_depth = 3;
  std::size_t universe_cap = 20000;
  std::map<std::string, std::vector<Term>> sets;
  std::vector<PartDecl> parts;
  std::vector<Rel> weak_set;  // S of the weakly-extends based method

  LevelMapSpec level;
  std::map<std::string, LevelMapSpec> part_levels;
  InterpretationSpec model;
  std::map<std::string, InterpretationSpec> part_models;

  const PartDecl* part(const std::string& name) const;
  // Part entries overlaid on the shared ones; named sets included.
  LevelMapSpec level_for(const std::string& part_name) const;
  InterpretationSpec model_for(const std::string& part_name) const;
};

// Record syntax, one record per statement (newlines are not significant):
//   method: acceptable
//   universe_depth: 3
//   universe_cap: 20000
//   set s = { (a,p,q) ; (a,p,r) }
//   part base: clauses 1-5, 9
//   part step: relations trans/4, transform/3
//   mode step: acceptable
//   boundary step: weakly_extends member/2
//   via step: a
//   weak_set: member/2
//   level trans/4 = 216 - set_count(arg3, @s) + 3*len(arg1) + 8
//   level step: rem/3 = len(arg2) + 2
//   model member/2 = elem(arg1, arg2)
//   model step: unif/2 = same(arg1, arg2)
// Throws ParseError with position info.
Annotation parse_annotation(std::string_view src);

// Clause ids of the part within the program: explicit ids are validated,
// relation selectors pick the clauses whose head relation matches.
// Throws AnnotationError on unknown ids.
std::vector<int> resolve_clause_ids(const PartDecl& part, const Program& p);

}  // namespace glp
