// SPDX-License-Identifier: MIT
#pragma once

#include "glp/interp.hpp"
#include "glp/program.hpp"
#include "glp/prover.hpp"
#include "glp/report.hpp"

namespace glp {

// Three-valued truth of I's condition on a possibly non-ground atom.
// True/False are only reported when every grounding of the atom agrees;
// anything instantiation-dependent is Unknown.
enum class Truth { True, False, Unknown };

Truth atom_truth(const InterpretationSpec& I, const Atom& a);

// Checks that I satisfies the clause: every ground instance whose body
// holds in I has its head in I.  Tries the symbolic derivation first
// (ProvedSymbolic on success); otherwise searches for a counterexample in
// a directed way.  Equalities are solved by unification, body atoms bind
// their variables through enumerable supports (spine elements of a closed
// container, named-set members, matching head argument), leftover
// variables range over staged universe slices.  A search that never had to
// consult a slice was exhaustive over all depths and upgrades the verdict
// to ProvedSymbolic; otherwise VerifiedToBound at the deepest completed
// stage.  A violating instance yields Refuted with the ground clause as
// witness.  Missing conditions yield Invalid; ResourceError only when not
// even the first stage fits the caps.
CheckReport check_clause_models(const Clause& c, const InterpretationSpec& I,
                                const CompareEnv& env);

// Clause-wise aggregation over the whole program ("model" obligations).
CheckReport check_models(const Program& p, const InterpretationSpec& I,
                         const CompareEnv& env);

}  // namespace glp
