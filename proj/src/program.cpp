// SPDX-License-Identifier: MIT
#include "glp/program.hpp"

#include <algorithm>
#include <sstream>

namespace glp {

bool Atom::ground() const {
  return std::all_of(args.begin(), args.end(),
                     [](const Term& t) { return t.ground(); });
}

Atom Atom::apply(const Substitution& s) const {
  TermVec out;
  out.reserve(args.size());
  for (const Term& t : args) out.push_back(s.apply(t));
  return Atom{rel, std::move(out)};
}

void Atom::collect_variables(std::vector<std::string>& out) const {
  for (const Term& t : args) t.collect_variables(out);
}

bool Atom::operator==(const Atom& o) const {
  return rel == o.rel && args == o.args;
}

std::string Atom::str() const {
  if (args.empty()) return rel;
  return as_term().str();
}

void Literal::collect_variables(std::vector<std::string>& out) const {
  switch (kind) {
    case Kind::Pos:
    case Kind::Neg:
      atom.collect_variables(out);
      return;
    case Kind::Eq:
      lhs.collect_variables(out);
      rhs.collect_variables(out);
      return;
    case Kind::Ineq: {
      std::vector<std::string> all;
      lhs.collect_variables(all);
      rhs.collect_variables(all);
      for (const auto& v : all) {
        if (std::find(univ.begin(), univ.end(), v) != univ.end()) continue;
        if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
      }
      return;
    }
  }
}

Literal Literal::apply(const Substitution& s) const {
  switch (kind) {
    case Kind::Pos:
      return pos(atom.apply(s));
    case Kind::Neg:
      return neg(atom.apply(s));
    case Kind::Eq:
      return eq(s.apply(lhs), s.apply(rhs));
    case Kind::Ineq: {
      if (univ.empty()) return ineq(s.apply(lhs), s.apply(rhs));
      Substitution restricted;
      for (const auto& [v, t] : s)
        if (std::find(univ.begin(), univ.end(), v) == univ.end())
          restricted.bind(v, t);
      return ineq(restricted.apply(lhs), restricted.apply(rhs), univ);
    }
  }
  return *this;
}

bool Literal::operator==(const Literal& o) const {
  return kind == o.kind && atom == o.atom && lhs == o.lhs && rhs == o.rhs &&
         univ == o.univ;
}

std::string Literal::str() const {
  switch (kind) {
    case Kind::Pos:
      return atom.str();
    case Kind::Neg:
      return "\\+ " + atom.str();
    case Kind::Eq:
      return lhs.str() + " = " + rhs.str();
    case Kind::Ineq: {
      std::string core = lhs.str() + " \\= " + rhs.str();
      if (univ.empty()) return core;
      std::string vs;
      for (std::size_t i = 0; i < univ.size(); ++i) {
        if (i) vs += ",";
        vs += univ[i];
      }
      return "forall([" + vs + "], " + core + ")";
    }
  }
  return "";
}

void Clause::collect_variables(std::vector<std::string>& out) const {
  head.collect_variables(out);
  for (const Literal& l : body) l.collect_variables(out);
}

std::vector<std::string> Clause::variables() const {
  std::vector<std::string> out;
  collect_variables(out);
  return out;
}

Clause Clause::apply(const Substitution& s) const {
  Clause out{id, head.apply(s), {}};
  out.body.reserve(body.size());
  for (const Literal& l : body) out.body.push_back(l.apply(s));
  return out;
}

std::string Clause::str() const {
  std::string s = head.str();
  if (!body.empty()) {
    s += " :- ";
    for (std::size_t i = 0; i < body.size(); ++i) {
      if (i) s += ", ";
      s += body[i].str();
    }
  }
  return s + ".";
}

namespace {

Term literal_term(const Literal& l) {
  switch (l.kind) {
    case Literal::Kind::Pos:
      return l.atom.as_term();
    case Literal::Kind::Neg:
      return Term::compound("\\+", {l.atom.as_term()});
    case Literal::Kind::Eq:
      return Term::compound("=", {l.lhs, l.rhs});
    case Literal::Kind::Ineq: {
      TermVec vs;
      for (const auto& v : l.univ) vs.push_back(Term::variable(v));
      return Term::compound(
          "forall", {Term::list(vs), Term::compound("\\=", {l.lhs, l.rhs})});
    }
  }
  return Term::nil();
}

Term clause_term(const Clause& c) {
  TermVec body;
  for (const Literal& l : c.body) body.push_back(literal_term(l));
  return Term::compound(":-", {c.head.as_term(), Term::list(body)});
}

Literal literal_from_term(const Term& t) {
  if (t.name() == "\\+" && t.arity() == 1)
    return Literal::neg(Atom::from_term(t.arg(0)));
  if (t.name() == "=" && t.arity() == 2)
    return Literal::eq(t.arg(0), t.arg(1));
  if (t.name() == "forall" && t.arity() == 2) {
    std::vector<std::string> univ;
    for (const Term& v : t.arg(0).uncons().first) univ.push_back(v.name());
    return Literal::ineq(t.arg(1).arg(0), t.arg(1).arg(1), std::move(univ));
  }
  return Literal::pos(Atom::from_term(t));
}

}  // namespace

Clause rename_apart(const Clause& c, std::size_t& counter) {
  std::map<std::string, std::string> renaming;
  Term t = rename_apart(clause_term(c), counter, &renaming);
  Clause out;
  out.id = c.id;
  out.head = Atom::from_term(t.arg(0));
  for (const Term& lt : t.arg(1).uncons().first)
    out.body.push_back(literal_from_term(lt));
  return out;
}

bool alpha_equal(const Clause& a, const Clause& b) {
  return alpha_equal(clause_term(a), clause_term(b));
}

std::vector<Rel> Signature::constants() const {
  std::vector<Rel> out;
  for (const Rel& r : functions)
    if (r.arity == 0) out.push_back(r);
  return out;
}

bool Signature::has_constants() const {
  return std::any_of(functions.begin(), functions.end(),
                     [](const Rel& r) { return r.arity == 0; });
}

void Signature::merge(const Signature& o) {
  functions.insert(o.functions.begin(), o.functions.end());
}

void collect_signature(const Term& t, Signature& sig) {
  if (t.is_variable()) return;
  sig.functions.insert(Rel{t.name(), t.arity()});
  for (const Term& a : t.args()) collect_signature(a, sig);
}

std::set<Rel> Program::defined_relations() const {
  std::set<Rel> out;
  for (const Clause& c : clauses) out.insert(c.head.rel_id());
  return out;
}

std::set<Rel> Program::relations() const {
  std::set<Rel> out;
  for (const Clause& c : clauses) {
    out.insert(c.head.rel_id());
    for (const Literal& l : c.body)
      if (l.is_atomlit()) out.insert(l.atom.rel_id());
  }
  return out;
}

std::vector<const Clause*> Program::clauses_for(const Rel& r) const {
  std::vector<const Clause*> out;
  for (const Clause& c : clauses)
    if (c.head.rel_id() == r) out.push_back(&c);
  return out;
}

const Clause* Program::clause_by_id(int id) const {
  for (const Clause& c : clauses)
    if (c.id == id) return &c;
  return nullptr;
}

Signature Program::signature() const {
  Signature sig;
  for (const Clause& c : clauses) {
    for (const Term& t : c.head.args) collect_signature(t, sig);
    for (const Literal& l : c.body) {
      switch (l.kind) {
        case Literal::Kind::Pos:
        case Literal::Kind::Neg:
          for (const Term& t : l.atom.args) collect_signature(t, sig);
          break;
        case Literal::Kind::Eq:
        case Literal::Kind::Ineq:
          collect_signature(l.lhs, sig);
          collect_signature(l.rhs, sig);
          break;
      }
    }
  }
  return sig;
}

std::string Program::str() const {
  std::ostringstream os;
  for (const Clause& c : clauses) os << c.str() << "\n";
  return os.str();
}

bool alpha_equal(const Program& a, const Program& b) {
  if (a.clauses.size() != b.clauses.size()) return false;
  for (std::size_t i = 0; i < a.clauses.size(); ++i)
    if (!alpha_equal(a.clauses[i], b.clauses[i])) return false;
  return true;
}

}  // namespace glp
