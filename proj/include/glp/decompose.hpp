// SPDX-License-Identifier: MIT
#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "glp/program.hpp"

namespace glp {

// An ordered split of a program into named clause groups, base part first.
// A part's weak_set is the relation set S used to compare it against the
// part below it; empty means a plain extension boundary.
struct Partition {
  struct Part {
    std::string name;
    std::vector<int> clause_ids;
    std::vector<Rel> weak_set;
  };
  std::vector<Part> parts;

  // Annotation-record skeleton: part lines, then one boundary line per
  // non-base part.
  std::string str() const;
};

// Clauses of p with the given ids, in program order, ids kept.
// Throws AnnotationError on an id not present in p.
Program subprogram(const Program& p, const std::vector<int>& ids);

// True iff no relation defined in p1 occurs anywhere in r: heads and body
// atoms count, negated ones included.  Constraints carry no relation and
// never block.
bool extends(const Program& p1, const Program& r);

// P minus R: drops every clause of p that r contains (same id, same shape
// up to renaming) and erases from the remaining bodies every literal whose
// relation is defined in r.  Clauses of r absent from p drop nothing, so
// the operation is defined for disjoint operands too; an r clause whose id
// reappears in p with a different shape throws AnnotationError, since
// id-keyed deletion would be incoherent.
Program diff(const Program& p, const Program& r);

// True iff p splits as p1 plus its s-clauses with p1 extending them, r
// extends them, and the split survives taking differences: diff(p, p|_s)
// must extend r with the s-defined literals erased.  p|_s collects the
// clauses of p whose head relation is in s; relations of s without a
// clause in p are ignored.  A relation of s defined in r is not supported
// and makes the test fail.
bool weakly_extends(const Program& p, const Program& r, const std::set<Rel>& s);

// Parts must be disjoint, cover the program, and carry distinct names;
// each part must extend the previous one, or weakly extend it w.r.t. the
// part's weak_set.  Returns an explanation for the first violation, or
// nullopt when the partition is sound.
std::optional<std::string> validate_partition(const Program& p,
                                              const Partition& pt);

// Two-layer split candidates read off the dependency closures of the
// program's relations: each base is the clause set of a closed relation
// set, so the remainder extends it by construction.  Candidates come
// largest base first and are validated before emission; the trivial
// one-part split closes the list.
std::vector<Partition> suggest_partition(const Program& p);

}  // namespace glp
