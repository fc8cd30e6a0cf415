// SPDX-License-Identifier: MIT
// Completed definitions, negated-relation closure, and the two-direction
// completion model check.
#include <doctest.h>

#include <algorithm>

#include <glp/annotation.hpp>
#include <glp/completion.hpp>
#include <glp/errors.hpp>
#include <glp/parser.hpp>

using namespace glp;

namespace {

InterpretationSpec model(const std::string& records) {
  return parse_annotation("method: acceptable\n" + records).model;
}

CompareEnv env_for(const Program& p, int depth = 3) {
  CompareEnv env(p.signature());
  env.depth = depth;
  return env;
}

const char* kMemberSrc =
    "member(X, [X|T]).\n"
    "member(X, [Y|T]) :- member(X, T).\n"
    "nonempty([a]).";

}  // namespace

TEST_CASE("completed definitions collect one disjunct per clause") {
  Program p = parse_program(kMemberSrc);
  CompletedDefinition def = completed_definition(p, Rel{"member", 2});

  CHECK(def.params == std::vector<std::string>{"X1", "X2"});
  REQUIRE(def.disjuncts.size() == 2);
  CHECK(def.disjuncts[0].clause_id == 1);
  CHECK(def.disjuncts[0].body.empty());
  CHECK(def.disjuncts[1].clause_id == 2);
  CHECK(def.disjuncts[1].body.size() == 1);

  // Clause variables are renamed apart, so the disjuncts share nothing.
  std::vector<std::string> v0 = def.disjuncts[0].locals;
  std::vector<std::string> v1 = def.disjuncts[1].locals;
  for (const std::string& v : v0)
    CHECK(std::find(v1.begin(), v1.end(), v) == v1.end());

  CHECK(completed_definition(p, Rel{"ghost", 1}).str() ==
        "ghost(X1) <-> false");
}

TEST_CASE("negation closure reaches everything negated relations depend on") {
  Program p = parse_program(
      "t(X) :- \\+ p(X).\n"
      "p(X) :- q(X), \\+ r(X).\n"
      "q(X) :- s(X).\n"
      "r(a).\n"
      "s(a).");
  std::set<Rel> s = neg_set(p);
  CHECK(s == std::set<Rel>{{"p", 1}, {"q", 1}, {"r", 1}, {"s", 1}});

  // The defining property: heads in the set pull their body relations in.
  for (const Clause& c : p.clauses) {
    if (!s.count(c.head.rel_id())) continue;
    for (const Literal& l : c.body)
      if (l.is_atomlit()) CHECK(s.count(l.atom.rel_id()) == 1);
  }

  CHECK(neg_set(parse_program("a(X) :- b(X). b(c).")).empty());
}

TEST_CASE("restriction splits the program along head relations") {
  Program p = parse_program(
      "t(X) :- \\+ p(X).\n"
      "p(a).\n"
      "u(b).");
  std::set<Rel> s = neg_set(p);
  CHECK(s == std::set<Rel>{{"p", 1}});

  Program inside = restrict(p, s);
  REQUIRE(inside.clauses.size() == 1);
  CHECK(inside.clauses[0].id == 2);

  std::set<Rel> rest;
  for (const Rel& r : p.defined_relations())
    if (!s.count(r)) rest.insert(r);
  Program outside = restrict(p, rest);
  CHECK(inside.clauses.size() + outside.clauses.size() == p.clauses.size());
  CHECK(alpha_equal(minus_program(p), inside));
}

TEST_CASE("membership interpretation is a model of its completion") {
  Program p = parse_program(kMemberSrc);
  InterpretationSpec I = model("model member/2 = elem(arg1, arg2)");
  CheckReport r =
      check_completion_model(p, I, {Rel{"member", 2}}, env_for(p));

  CHECK(r.ok());
  CHECK(r.status == CheckStatus::VerifiedToBound);
  CHECK(r.bound == 3);
  // Both clauses were proved symbolically in the (<-) direction.
  REQUIRE(r.log.size() >= 2);
  CHECK(r.log[0].condition == "comp-clause");
  CHECK(r.log[0].verdict == CheckStatus::ProvedSymbolic);
  CHECK(r.log[1].verdict == CheckStatus::ProvedSymbolic);
}

TEST_CASE("an oversized interpretation is caught by the only-if direction") {
  Program p = parse_program(kMemberSrc);
  InterpretationSpec I = model("model member/2 = all");
  CheckReport r =
      check_completion_model(p, I, {Rel{"member", 2}}, env_for(p));

  REQUIRE(r.status == CheckStatus::Refuted);
  REQUIRE(r.witness.has_value());
  CHECK(r.witness->obligation == "completion");
  CHECK(r.witness->instance.head.rel == "member");
  CHECK(r.witness->detail.find("cannot derive") != std::string::npos);
  // The witness atom is indeed claimed true by the interpretation.
  CHECK(I.holds(r.witness->instance.head));
}

TEST_CASE("a negated relation without clauses completes to false") {
  Program p = parse_program(
      "t(X) :- \\+ p(X).\n"
      "base(a).");
  std::set<Rel> s = neg_set(p);
  CHECK(s == std::set<Rel>{{"p", 1}});

  InterpretationSpec empty = model("model p/1 = none");
  CHECK(check_completion_model(p, empty, s, env_for(p)).ok());

  InterpretationSpec claims = model(
      "set u = { a }\n"
      "model p/1 = in_set(arg1, @u)");
  CheckReport r = check_completion_model(p, claims, s, env_for(p));
  REQUIRE(r.status == CheckStatus::Refuted);
  CHECK(r.witness->instance.head == Atom{"p", {Term::constant("a")}});
}

TEST_CASE("relations outside the program or an empty set are vacuous") {
  Program p = parse_program(kMemberSrc);
  InterpretationSpec I = model("model member/2 = elem(arg1, arg2)");

  CHECK(check_completion_model(p, I, {}, env_for(p)).status ==
        CheckStatus::ProvedSymbolic);
  CHECK(check_completion_model(p, I, {Rel{"ghost", 3}}, env_for(p)).status ==
        CheckStatus::ProvedSymbolic);
}

TEST_CASE("the only-if direction stages down under tight caps") {
  Program p = parse_program(kMemberSrc);
  InterpretationSpec I = model("model member/2 = elem(arg1, arg2)");
  CompareEnv env = env_for(p);
  env.instance_cap = 10;

  CheckReport r = check_completion_model(p, I, {Rel{"member", 2}}, env);
  CHECK(r.status == CheckStatus::VerifiedToBound);
  CHECK(r.bound == 1);
}

TEST_CASE("a false clause in the restriction refutes the if direction") {
  Program p = parse_program(
      "p(X) :- q(X).\n"
      "q(a).\n"
      "t(X) :- \\+ p(X).");
  std::set<Rel> s = neg_set(p);
  CHECK(s == std::set<Rel>{{"p", 1}, {"q", 1}});

  InterpretationSpec I = model(
      "set qs = { a }\n"
      "model p/1 = none\n"
      "model q/1 = in_set(arg1, @qs)");
  CheckReport r = check_completion_model(p, I, s, env_for(p));
  REQUIRE(r.status == CheckStatus::Refuted);
  CHECK(r.witness->instance.head == Atom{"p", {Term::constant("a")}});
  bool logged = false;
  for (const Obligation& o : r.log)
    if (o.condition == "comp-clause" && o.verdict == CheckStatus::Refuted)
      logged = true;
  CHECK(logged);
}
