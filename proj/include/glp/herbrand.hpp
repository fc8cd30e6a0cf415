// SPDX-License-Identifier: MIT
#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "glp/program.hpp"
#include "glp/term.hpp"

namespace glp {

// Finite slice of the ground-term universe over a signature: every ground
// term of depth <= `depth`, plus any extra constants supplied by the caller.
// A signature with no constants gets a fresh one so the slice is never empty.
struct HerbrandSlice {
  std::vector<Term> terms;  // deterministic order: by depth, then term order
  int depth = 0;

  bool empty() const { return terms.empty(); }
  std::size_t size() const { return terms.size(); }
};

// Builds the slice.  Throws ResourceError if more than `cap` terms would be
// generated.  Constant depth is 0; f(t1..tn) has depth 1 + max depth of ti.
HerbrandSlice build_slice(const Signature& sig, int depth,
                          std::size_t cap = 20000,
                          const std::vector<Term>& extra_constants = {});

// The constant a constant-free signature is read as containing, so the
// ground universe is never empty: "c", or "c0", "c1", ... on a name clash.
Term implicit_constant(const Signature& sig);

// Streams ground instances of `c` over the slice in a fixed odometer order
// (variables in first-occurrence order, each running over slice.terms).
// Stops early when `fn` returns false.  Returns false iff stopped early.
bool for_each_ground_instance(const Clause& c, const HerbrandSlice& slice,
                              const std::function<bool(const Clause&)>& fn);

// Number of ground instances: slice.size() ^ #variables.
// Throws ResourceError on overflow past `cap`.
std::size_t ground_instance_count(const Clause& c, const HerbrandSlice& slice,
                                  std::size_t cap);

// Materializes all instances; throws ResourceError if more than `cap`.
std::vector<Clause> ground_instances(const Clause& c,
                                     const HerbrandSlice& slice,
                                     std::size_t cap = 20000);

}  // namespace glp
