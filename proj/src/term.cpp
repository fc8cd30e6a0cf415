// SPDX-License-Identifier: MIT
#include "glp/term.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace glp {

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  // boost::hash_combine formula
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

Term Term::variable(std::string name) {
  auto n = std::make_shared<Node>();
  n->var = true;
  n->name = std::move(name);
  n->ground = false;
  n->hash = mix(0x5a5a, std::hash<std::string>{}(n->name));
  n->depth = 0;
  return Term(std::move(n));
}

Term Term::compound(std::string functor, TermVec args) {
  auto n = std::make_shared<Node>();
  n->var = false;
  n->name = std::move(functor);
  n->args = std::move(args);
  n->ground = true;
  n->depth = 0;
  std::size_t h = mix(0xc0de, std::hash<std::string>{}(n->name));
  h = mix(h, n->args.size());
  for (const Term& a : n->args) {
    n->ground = n->ground && a.ground();
    n->depth = std::max(n->depth, a.depth() + 1);
    h = mix(h, a.hash());
  }
  n->hash = h;
  return Term(std::move(n));
}

Term Term::constant(std::string name) {
  return compound(std::move(name), {});
}

Term Term::nil() { return constant("[]"); }

Term Term::cons(Term head, Term tail) {
  return compound(".", {std::move(head), std::move(tail)});
}

Term Term::list(const TermVec& items) { return list(items, nil()); }

Term Term::list(const TermVec& items, Term tail) {
  Term t = std::move(tail);
  for (auto it = items.rbegin(); it != items.rend(); ++it) t = cons(*it, t);
  return t;
}

Term Term::tuple(const TermVec& items) {
  if (items.empty()) return constant("()");
  Term t = items.back();
  for (auto it = items.rbegin() + 1; it != items.rend(); ++it)
    t = compound(",", {*it, t});
  return t;
}

std::pair<TermVec, Term> Term::uncons() const {
  TermVec items;
  Term t = *this;
  while (t.is_cons()) {
    items.push_back(t.arg(0));
    t = t.arg(1);
  }
  return {std::move(items), std::move(t)};
}

bool Term::operator==(const Term& o) const {
  if (node_ == o.node_) return true;
  if (node_->hash != o.node_->hash) return false;
  if (node_->var != o.node_->var || node_->name != o.node_->name ||
      node_->args.size() != o.node_->args.size())
    return false;
  for (std::size_t i = 0; i < node_->args.size(); ++i)
    if (!(node_->args[i] == o.node_->args[i])) return false;
  return true;
}

bool Term::operator<(const Term& o) const {
  if (node_ == o.node_) return false;
  if (node_->var != o.node_->var) return node_->var;  // vars first
  if (node_->name != o.node_->name) return node_->name < o.node_->name;
  if (node_->args.size() != o.node_->args.size())
    return node_->args.size() < o.node_->args.size();
  for (std::size_t i = 0; i < node_->args.size(); ++i) {
    if (node_->args[i] < o.node_->args[i]) return true;
    if (o.node_->args[i] < node_->args[i]) return false;
  }
  return false;
}

void Term::collect_variables(std::vector<std::string>& out) const {
  if (is_variable()) {
    if (std::find(out.begin(), out.end(), name()) == out.end())
      out.push_back(name());
    return;
  }
  if (ground()) return;
  for (const Term& a : args()) a.collect_variables(out);
}

std::vector<std::string> Term::variables() const {
  std::vector<std::string> out;
  collect_variables(out);
  return out;
}

namespace {

void print_term(const Term& t, std::ostream& os, bool tuple_parens);

void print_args(const TermVec& args, std::ostream& os) {
  os << '(';
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) os << ',';
    print_term(args[i], os, true);
  }
  os << ')';
}

void print_term(const Term& t, std::ostream& os, bool tuple_parens) {
  if (t.is_variable()) {
    os << t.name();
    return;
  }
  if (t.is_cons()) {
    os << '[';
    auto [items, tail] = t.uncons();
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (i) os << ',';
      print_term(items[i], os, true);
    }
    if (!tail.is_nil()) {
      os << '|';
      print_term(tail, os, true);
    }
    os << ']';
    return;
  }
  if (t.name() == "," && t.arity() == 2) {
    if (tuple_parens) os << '(';
    print_term(t.arg(0), os, true);
    os << ',';
    print_term(t.arg(1), os, false);
    if (tuple_parens) os << ')';
    return;
  }
  os << t.name();
  if (t.arity() > 0) print_args(t.args(), os);
}

}  // namespace

std::string Term::str() const {
  std::ostringstream os;
  print_term(*this, os, true);
  return os.str();
}

const Term* Substitution::raw(const std::string& var) const {
  auto it = map_.find(var);
  return it == map_.end() ? nullptr : &it->second;
}

void Substitution::bind(std::string var, Term t) {
  map_.insert_or_assign(std::move(var), std::move(t));
}

Term Substitution::apply(const Term& t) const {
  if (t.ground()) return t;
  if (t.is_variable()) {
    const Term* b = raw(t.name());
    return b ? apply(*b) : t;
  }
  TermVec args;
  args.reserve(t.arity());
  bool changed = false;
  for (const Term& a : t.args()) {
    args.push_back(apply(a));
    changed = changed || !(args.back() == a);
  }
  if (!changed) return t;
  return Term::compound(t.name(), std::move(args));
}

Substitution Substitution::compose(const Substitution& other) const {
  Substitution out;
  for (const auto& [v, t] : map_) out.bind(v, other.apply(t));
  for (const auto& [v, t] : other.map_)
    if (!out.contains(v)) out.bind(v, t);
  return out;
}

std::map<std::string, Term> Substitution::resolved() const {
  std::map<std::string, Term> out;
  for (const auto& [v, t] : map_) out.emplace(v, apply(t));
  return out;
}

std::string Substitution::str() const {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const auto& [v, t] : resolved()) {
    if (!first) os << ", ";
    first = false;
    os << v << '/' << t.str();
  }
  os << '}';
  return os.str();
}

bool occurs(const std::string& var, const Term& t, const Substitution& s) {
  if (t.is_variable()) {
    if (t.name() == var) return true;
    const Term* b = s.raw(t.name());
    return b && occurs(var, *b, s);
  }
  for (const Term& a : t.args())
    if (occurs(var, a, s)) return true;
  return false;
}

namespace {

Term walk(const Term& t, const Substitution& s) {
  Term cur = t;
  while (cur.is_variable()) {
    const Term* b = s.raw(cur.name());
    if (!b) return cur;
    cur = *b;
  }
  return cur;
}

bool unify_step(const Term& a0, const Term& b0, Substitution& s) {
  Term a = walk(a0, s);
  Term b = walk(b0, s);
  if (a.is_variable() && b.is_variable() && a.name() == b.name()) return true;
  if (a.is_variable()) {
    if (occurs(a.name(), b, s)) return false;
    s.bind(a.name(), b);
    return true;
  }
  if (b.is_variable()) {
    if (occurs(b.name(), a, s)) return false;
    s.bind(b.name(), a);
    return true;
  }
  if (a.name() != b.name() || a.arity() != b.arity()) return false;
  for (std::size_t i = 0; i < a.arity(); ++i)
    if (!unify_step(a.arg(i), b.arg(i), s)) return false;
  return true;
}

}  // namespace

std::optional<Substitution> unify(const Term& a, const Term& b) {
  Substitution s;
  if (!unify_step(a, b, s)) return std::nullopt;
  return s;
}

std::optional<Substitution> unify_all(const TermVec& as, const TermVec& bs) {
  if (as.size() != bs.size()) return std::nullopt;
  Substitution s;
  for (std::size_t i = 0; i < as.size(); ++i)
    if (!unify_step(as[i], bs[i], s)) return std::nullopt;
  return s;
}

namespace {

bool alpha_step(const Term& a, const Term& b,
                std::map<std::string, std::string>& a2b,
                std::map<std::string, std::string>& b2a) {
  if (a.is_variable() != b.is_variable()) return false;
  if (a.is_variable()) {
    auto [ia, oka] = a2b.emplace(a.name(), b.name());
    auto [ib, okb] = b2a.emplace(b.name(), a.name());
    (void)oka;
    (void)okb;
    return ia->second == b.name() && ib->second == a.name();
  }
  if (a.name() != b.name() || a.arity() != b.arity()) return false;
  for (std::size_t i = 0; i < a.arity(); ++i)
    if (!alpha_step(a.arg(i), b.arg(i), a2b, b2a)) return false;
  return true;
}

}  // namespace

bool alpha_equal(const Term& a, const Term& b) {
  std::map<std::string, std::string> a2b, b2a;
  return alpha_step(a, b, a2b, b2a);
}

Term rename_apart(const Term& t, std::size_t& counter,
                  std::map<std::string, std::string>* renaming) {
  std::map<std::string, std::string> local;
  std::map<std::string, std::string>& map = renaming ? *renaming : local;
  std::function<Term(const Term&)> go = [&](const Term& u) -> Term {
    if (u.ground()) return u;
    if (u.is_variable()) {
      auto it = map.find(u.name());
      if (it == map.end())
        it = map.emplace(u.name(), "_R" + std::to_string(counter++)).first;
      return Term::variable(it->second);
    }
    TermVec args;
    args.reserve(u.arity());
    for (const Term& a : u.args()) args.push_back(go(a));
    return Term::compound(u.name(), std::move(args));
  };
  return go(t);
}

}  // namespace glp
