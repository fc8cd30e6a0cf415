// SPDX-License-Identifier: MIT
#pragma once

#include <set>
#include <vector>

#include "glp/annotation.hpp"
#include "glp/prover.hpp"

namespace glp {

// Universe environment for an annotated program: the program's function
// symbols plus those of the annotation's named sets, with the annotation's
// depth and instance cap.
CompareEnv env_for_annotation(const Program& p, const Annotation& ann);

// Strict level decrease for every body atom of every clause, unguarded.
// The only family member whose overall verdict regularly reaches
// ProvedSymbolic; the acceptability checks below include bounded model
// obligations and normally top out at VerifiedToBound.
CheckReport check_acyclic(const Program& p, const LevelMapSpec& level,
                          const CompareEnv& env);

// I models every clause and the completion of everything reachable from
// negated literals, and each body atom drops strictly below its head on the
// instances where the preceding literals hold in I.
CheckReport check_acceptable(const Program& p, const LevelMapSpec& level,
                             const InterpretationSpec& I,
                             const CompareEnv& env);

// Layered variants.  r is the lower layer, given as a subset of p's
// clauses; the remaining clauses form the upper layer.  A violated layering
// requirement refutes with the offending clause and ends the check; the
// level and model obligations otherwise run in full.
//
// up: the upper layer extends r; diff(p, r) is acceptable w.r.t. level and
// I; r is acyclic; and in every upper clause instance each body atom
// defined in r stays <= its head whenever the preceding literals with
// relations in diff(p, r) hold in I.
CheckReport check_up_acceptable(const Program& p, const Program& r,
                                const LevelMapSpec& level,
                                const InterpretationSpec& I,
                                const CompareEnv& env);

// As up, with the extension requirement weakened: the upper layer may
// define relations of s that the lower layer uses, provided the layers
// disentangle once the s-clauses are set aside.  Every relation of s must
// be defined in the upper layer and nowhere else (Invalid otherwise).
CheckReport check_weak_up_acceptable(const Program& p, const Program& r,
                                     const std::set<Rel>& s,
                                     const LevelMapSpec& level,
                                     const InterpretationSpec& I,
                                     const CompareEnv& env);

// Mirror image of up: diff(p, r) is acyclic, r is acceptable w.r.t. level
// and I, and each upper body atom defined in r stays <= its head on every
// instance, unguarded.
CheckReport check_low_acceptable(const Program& p, const Program& r,
                                 const LevelMapSpec& level,
                                 const InterpretationSpec& I,
                                 const CompareEnv& env);

// Up-acceptability with the model obligations split: i_r must be a
// specialized model of r and i_p1 one of diff(p, r).  In every upper clause
// instance, guarded by the union of the two models over the preceding
// literals, a body atom drops strictly when its relation is defined in
// diff(p, r) and stays <= its head when defined in r; r is acyclic.
CheckReport check_new_up_acceptable(const Program& p, const Program& r,
                                    const LevelMapSpec& level,
                                    const InterpretationSpec& i_r,
                                    const InterpretationSpec& i_p1,
                                    const CompareEnv& env);

// Layer-by-layer proof over the annotation's ordered parts.  Every part is
// flagged acyclic or acceptable (adjacent parts never both acceptable),
// every non-base part declares its boundary, and the obligations follow the
// declared route:
//   upper acyclic: diff(upper, lower) acyclic, plus head >= body across the
//     boundary on all instances, heads measured by the upper part's map.
//   lower acyclic, via a: diff(upper, lower) acceptable w.r.t. the upper
//     part's model; the lower part's relations count as fully true in later
//     guards.
//   lower acyclic, via b: both parts' models are verified as specialized
//     models of their differences, and upper body atoms of the upper
//     part's own relations drop strictly, guarded by everything known.
//   either via: upper body atoms defined in the lower part stay <= their
//     head, guarded by the models collected so far (relations without a
//     collected model count as false, which only shortens the guarded
//     prefix).
CheckReport check_incremental(const Program& p, const Annotation& ann,
                              const CompareEnv& env);

// Conservative query boundedness: every literal must have a rigid level,
// i.e. one measure-determined under any instantiation.  Constraints are
// trivially rigid.  Under the incremental method each literal is measured
// by the map of the part defining its relation.
struct BoundedQueryReport {
  bool bounded = false;
  std::vector<bool> literal_rigid;  // aligned with the query
};
BoundedQueryReport check_bounded_query(const std::vector<Literal>& query,
                                       const Program& p, const Annotation& ann);

// Entry point: dispatches on the annotation's method, resolving parts,
// levels and models by the conventions documented in annotation.hpp (first
// declared part is the lower layer; the upper layer is implicit when only
// one part is declared).  Annotation defects surface as Invalid.
CheckReport check_annotation(const Program& p, const Annotation& ann);

}  // namespace glp
