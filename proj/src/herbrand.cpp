// SPDX-License-Identifier: MIT
#include "glp/herbrand.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "glp/errors.hpp"

namespace glp {

Term implicit_constant(const Signature& sig) {
  std::set<std::string> used;
  for (const auto& f : sig.functions) used.insert(f.name);
  if (!used.count("c")) return Term::constant("c");
  for (int i = 0;; ++i) {
    std::string name = "c" + std::to_string(i);
    if (!used.count(name)) return Term::constant(name);
  }
}

HerbrandSlice build_slice(const Signature& sig, int depth, std::size_t cap,
                          const std::vector<Term>& extra_constants) {
  HerbrandSlice slice;
  slice.depth = depth;

  std::vector<Term> constants;
  for (const auto& f : sig.functions)
    if (f.arity == 0) constants.push_back(Term::constant(f.name));
  for (const auto& t : extra_constants)
    if (std::find(constants.begin(), constants.end(), t) == constants.end())
      constants.push_back(t);
  if (constants.empty()) constants.push_back(implicit_constant(sig));
  std::sort(constants.begin(), constants.end());

  std::vector<Rel> functors;
  for (const auto& f : sig.functions)
    if (f.arity > 0) functors.push_back(f);

  // prev = terms of depth <= d-1, layer = terms of depth exactly d
  std::vector<Term> prev;
  std::vector<Term> layer = constants;
  std::size_t total = 0;
  for (int d = 0; d <= depth; ++d) {
    std::sort(layer.begin(), layer.end());
    for (const auto& t : layer) {
      if (++total > cap)
        throw ResourceError("ground universe exceeds cap of " +
                            std::to_string(cap) + " terms at depth " +
                            std::to_string(d));
      slice.terms.push_back(t);
    }
    if (d == depth) break;

    std::vector<Term> all = prev;
    all.insert(all.end(), layer.begin(), layer.end());
    std::vector<Term> next;
    // f(t1..tn) has depth d+1 iff max(depth(ti)) == d, i.e. at least one
    // argument comes from `layer`.
    for (const auto& f : functors) {
      std::vector<std::size_t> idx(static_cast<std::size_t>(f.arity), 0);
      for (;;) {
        bool touches_layer = false;
        std::vector<Term> args;
        args.reserve(idx.size());
        for (std::size_t i : idx) {
          args.push_back(all[i]);
          if (i >= prev.size()) touches_layer = true;
        }
        if (touches_layer) {
          next.push_back(Term::compound(f.name, args));
          if (total + next.size() > cap)
            throw ResourceError("ground universe exceeds cap of " +
                                std::to_string(cap) + " terms at depth " +
                                std::to_string(d + 1));
        }
        std::size_t k = idx.size();
        while (k > 0) {
          if (++idx[k - 1] < all.size()) break;
          idx[k - 1] = 0;
          --k;
        }
        if (k == 0) break;
      }
    }
    prev = std::move(all);
    layer = std::move(next);
  }
  return slice;
}

bool for_each_ground_instance(const Clause& c, const HerbrandSlice& slice,
                              const std::function<bool(const Clause&)>& fn) {
  std::vector<std::string> vars = c.variables();
  if (vars.empty()) return fn(c);
  if (slice.empty()) return true;  // no groundings

  std::vector<std::size_t> idx(vars.size(), 0);
  for (;;) {
    Substitution s;
    for (std::size_t i = 0; i < vars.size(); ++i)
      s.bind(vars[i], slice.terms[idx[i]]);
    if (!fn(c.apply(s))) return false;
    std::size_t k = idx.size();
    while (k > 0) {
      if (++idx[k - 1] < slice.size()) break;
      idx[k - 1] = 0;
      --k;
    }
    if (k == 0) break;
  }
  return true;
}

std::size_t ground_instance_count(const Clause& c, const HerbrandSlice& slice,
                                  std::size_t cap) {
  std::size_t n = c.variables().size();
  std::size_t count = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (slice.size() != 0 && count > cap / slice.size())
      throw ResourceError("ground instance count exceeds cap of " +
                          std::to_string(cap));
    count *= slice.size();
  }
  if (count > cap)
    throw ResourceError("ground instance count exceeds cap of " +
                        std::to_string(cap));
  return count;
}

std::vector<Clause> ground_instances(const Clause& c,
                                     const HerbrandSlice& slice,
                                     std::size_t cap) {
  ground_instance_count(c, slice, cap);
  std::vector<Clause> out;
  for_each_ground_instance(c, slice, [&](const Clause& g) {
    out.push_back(g);
    return true;
  });
  return out;
}

}  // namespace glp
