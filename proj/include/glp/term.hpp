// SPDX-License-Identifier: MIT
#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace glp {

class Term;
using TermVec = std::vector<Term>;

// First-order term: a variable or a compound f(t1,...,tn).  Constants are
// 0-ary compounds.  Immutable; nodes are shared, so copies are cheap and
// large terms (ground state spaces, long lists) do not blow up memory.
class Term {
public:
  Term() : Term(constant("[]")) {}

  static Term variable(std::string name);
  static Term compound(std::string functor, TermVec args);
  static Term constant(std::string name);

  // List and tuple sugar over '.'/2, '[]' and ','/2.
  static Term nil();
  static Term cons(Term head, Term tail);
  static Term list(const TermVec& items);
  static Term list(const TermVec& items, Term tail);
  static Term tuple(const TermVec& items);  // right-nested ','/2; size >= 1

  bool is_variable() const { return node_->var; }
  bool is_compound() const { return !node_->var; }
  bool is_constant() const { return !node_->var && node_->args.empty(); }
  const std::string& name() const { return node_->name; }
  const TermVec& args() const { return node_->args; }
  std::size_t arity() const { return node_->args.size(); }
  const Term& arg(std::size_t i) const { return node_->args[i]; }

  bool is_nil() const { return is_constant() && node_->name == "[]"; }
  bool is_cons() const {
    return !node_->var && node_->name == "." && node_->args.size() == 2;
  }
  // Splits a cons chain into its item prefix and final tail (nil for a
  // proper list).  A non-cons term yields an empty prefix and itself.
  std::pair<TermVec, Term> uncons() const;

  bool ground() const { return node_->ground; }
  std::size_t hash() const { return node_->hash; }
  std::size_t depth() const { return node_->depth; }

  bool operator==(const Term& o) const;
  bool operator!=(const Term& o) const { return !(*this == o); }
  bool operator<(const Term& o) const;  // total order, for map/set keys

  // Variables in order of first occurrence (left to right, depth first).
  void collect_variables(std::vector<std::string>& out) const;
  std::vector<std::string> variables() const;

  std::string str() const;

private:
  struct Node {
    bool var;
    std::string name;
    TermVec args;
    bool ground;
    std::size_t hash;
    std::size_t depth;
  };
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

// Variable bindings.  apply() dereferences chains, so a substitution built
// by unification acts idempotently even if raw bindings mention bound vars.
class Substitution {
public:
  bool empty() const { return map_.empty(); }
  std::size_t size() const { return map_.size(); }
  bool contains(const std::string& var) const { return map_.count(var) > 0; }
  const Term* raw(const std::string& var) const;
  void bind(std::string var, Term t);

  Term apply(const Term& t) const;

  // this then other: apply(x) == other.apply(this->apply(x)).
  Substitution compose(const Substitution& other) const;

  // Fully resolved (idempotent) bindings, for display and comparison.
  std::map<std::string, Term> resolved() const;

  auto begin() const { return map_.begin(); }
  auto end() const { return map_.end(); }

  std::string str() const;

private:
  std::map<std::string, Term> map_;
};

// Most general unifier with occur check; nullopt when not unifiable.
std::optional<Substitution> unify(const Term& a, const Term& b);
std::optional<Substitution> unify_all(const TermVec& as, const TermVec& bs);

bool occurs(const std::string& var, const Term& t, const Substitution& s);

// True iff a and b are equal up to a bijective renaming of variables.
bool alpha_equal(const Term& a, const Term& b);

// Renames every variable in t to a fresh "_R<n>" name, advancing counter.
Term rename_apart(const Term& t, std::size_t& counter,
                  std::map<std::string, std::string>* renaming = nullptr);

}  // namespace glp
