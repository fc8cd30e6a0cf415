// SPDX-License-Identifier: MIT
#include <doctest.h>

#include <stdexcept>

#include "glp/annotation.hpp"
#include "glp/errors.hpp"
#include "glp/levelmap.hpp"
#include "glp/parser.hpp"

using namespace glp;

namespace {

Term t(const std::string& s) { return parse_term_string(s); }

Literal lit(const std::string& s) {
  auto q = parse_query(s);
  REQUIRE(q.size() == 1);
  return q[0];
}

// Level map of the blocks-world planner: plan length dominates, the state
// selector breaks ties between goal shapes.
LevelMapSpec planner_levels() {
  LevelMapSpec spec;
  LevelExpr sel;
  sel.kind = LevelExpr::Kind::Cases;
  sel.arg = 1;
  sel.case_functors = {Rel{"loc", 2}, Rel{"clear", 1}, Rel{"above", 2}};
  sel.children = {LevelExpr::nat(1), LevelExpr::nat(3), LevelExpr::nat(4),
                  LevelExpr::nat(0)};
  spec.exprs[Rel{"holds", 2}] =
      LevelExpr::add(LevelExpr::mul(3, LevelExpr::len(2)), sel);
  spec.exprs[Rel{"member", 2}] = LevelExpr::len(2);
  return spec;
}

}  // namespace

TEST_CASE("spine helpers") {
  CHECK(spine_len(t("[a, b, c]")) == 3);
  CHECK(spine_len(t("[]")) == 0);
  CHECK(spine_len(t("f(a)")) == 0);
  CHECK(spine_len(t("[a | b]")) == 1);
  CHECK(spine_len(t("[a, b | Xs]")) == 2);

  CHECK(spine_elements(t("[a, f(b)]")) ==
        TermVec{t("a"), t("f(b)")});
  CHECK(spine_elements(t("g(a)")).empty());

  CHECK(is_proper_list(t("[]")));
  CHECK(is_proper_list(t("[a, b]")));
  CHECK_FALSE(is_proper_list(t("[a | Xs]")));
  CHECK_FALSE(is_proper_list(t("[a | b]")));
  CHECK_FALSE(is_proper_list(t("a")));

  CHECK(spine_determined(t("[a, B]")));
  CHECK(spine_determined(t("[a | b]")));
  CHECK(spine_determined(t("f(Xs)")));
  CHECK_FALSE(spine_determined(t("[a | Xs]")));
  CHECK_FALSE(spine_determined(parse_term_string("Xs")));
}

TEST_CASE("eval_expr measures") {
  std::map<std::string, std::vector<Term>> sets;
  sets["s"] = {t("a"), t("b")};

  CHECK(eval_expr(LevelExpr::nat(7), {}, sets) == 7);
  CHECK(eval_expr(LevelExpr::len(1), {t("[a, b]")}, sets) == 2);

  SUBCASE("set_count counts distinct members only") {
    LevelExpr e = LevelExpr::set_count(1, "s");
    CHECK(eval_expr(e, {t("[a, a, b, c]")}, sets) == 2);
    CHECK(eval_expr(e, {t("[c, d]")}, sets) == 0);
    CHECK(eval_expr(e, {t("x")}, sets) == 0);
    CHECK_THROWS_AS(eval_expr(LevelExpr::set_count(1, "nosuch"),
                              {t("[a]")}, sets),
                    AnnotationError);
  }

  SUBCASE("pair_count matches two-element edge lists") {
    LevelExpr e = LevelExpr::pair_count(1, 2);
    Term g = t("[[a, x], [c, y], [d, z]]");
    CHECK(eval_expr(e, {t("[a, b, c]"), g}, sets) == 2);
    CHECK(eval_expr(e, {t("[a, a, a]"), g}, sets) == 1);
    CHECK(eval_expr(e, {t("[b]"), g}, sets) == 0);
    // Edges that are not two-element lists do not count.
    CHECK(eval_expr(e, {t("[a]"), t("[[a], [a, x, y], a]")}, sets) == 0);
  }

  SUBCASE("arithmetic") {
    LevelExpr e = LevelExpr::sub(LevelExpr::nat(2), LevelExpr::nat(5));
    CHECK(eval_expr(e, {}, sets, true) == 0);    // natural: truncated
    CHECK(eval_expr(e, {}, sets, false) == -3);  // integer: for conditions
    CHECK(eval_expr(LevelExpr::mul(3, LevelExpr::len(1)), {t("[a, b]")},
                    sets) == 6);
    LevelExpr chain = LevelExpr::add(
        LevelExpr::sub(LevelExpr::nat(10), LevelExpr::len(1)),
        LevelExpr::nat(4));
    CHECK(eval_expr(chain, {t("[a, b, c]")}, sets) == 11);
  }

  SUBCASE("argument index out of range") {
    CHECK_THROWS_AS(eval_expr(LevelExpr::len(2), {t("a")}, sets),
                    AnnotationError);
    CHECK_THROWS_AS(eval_expr(LevelExpr::len(0), {t("a")}, sets),
                    AnnotationError);
  }
}

TEST_CASE("eval_level on planner literals") {
  LevelMapSpec spec = planner_levels();

  CHECK(eval_level(spec, lit("holds(loc(a, p), [move(a, q)])")) == 4);
  CHECK(eval_level(spec, lit("holds(clear(b), [])")) == 3);
  CHECK(eval_level(spec, lit("holds(above(a, b), [m1, m2])")) == 10);
  CHECK(eval_level(spec, lit("holds(other, [])")) == 0);  // default case
  CHECK(eval_level(spec, lit("member(a, [b, a])")) == 2);
  CHECK(eval_level(spec, lit("\\+ member(a, [b])")) == 1);

  CHECK_THROWS_AS(eval_level(spec, lit("unknown(a)")), AnnotationError);
  CHECK_THROWS_AS(eval_level(spec, lit("X \\= a")), std::invalid_argument);
  CHECK(spec.total_on({Rel{"holds", 2}, Rel{"member", 2}}));
  CHECK_FALSE(spec.total_on({Rel{"holds", 2}, Rel{"nosuch", 1}}));
}

TEST_CASE("is_rigid") {
  LevelMapSpec spec = planner_levels();

  SUBCASE("determined spine with free elements is rigid for len") {
    CHECK(is_rigid(spec, lit("holds(loc(a, p), [A])")));
    CHECK(is_rigid(spec, lit("member(X, [Y, Z])")));
    CHECK(is_rigid(spec, lit("member(a, [b, a])")));
  }

  SUBCASE("open list tail is not rigid") {
    CHECK_FALSE(is_rigid(spec, lit("member(X, Ys)")));
    CHECK_FALSE(is_rigid(spec, lit("member(X, [a | Ys])")));
    CHECK_FALSE(is_rigid(spec, lit("\\+ member(X, Ys)")));
  }

  SUBCASE("cases needs a known functor") {
    CHECK_FALSE(is_rigid(spec, lit("holds(G, [])")));
    CHECK(is_rigid(spec, lit("holds(loc(X, Y), [])")));
  }

  SUBCASE("fixed bindings are applied first") {
    Substitution s;
    s.bind("Ys", t("[a]"));
    CHECK(is_rigid(spec, lit("member(X, Ys)"), s));
  }

  SUBCASE("set_count and pair_count need ground spines") {
    LevelMapSpec sc;
    sc.sets["s"] = {t("a")};
    sc.exprs[Rel{"p", 1}] = LevelExpr::set_count(1, "s");
    sc.exprs[Rel{"q", 2}] = LevelExpr::pair_count(1, 2);
    CHECK(is_rigid(sc, lit("p([a, b])")));
    CHECK_FALSE(is_rigid(sc, lit("p([X])")));
    CHECK(is_rigid(sc, lit("q([a], [[a, b]])")));
    CHECK_FALSE(is_rigid(sc, lit("q([a], [[a, B]])")));
  }

  SUBCASE("constraints are trivially rigid") {
    CHECK(is_rigid(spec, lit("X \\= f(Y)")));
  }
}

TEST_CASE("level expression printing round-trips") {
  std::string src =
      "method: acceptable\n"
      "set s = { a ; b }\n"
      "level trans/4 = 216 - set_count(arg3, @s) + 3*len(arg1) + "
      "4*len(arg4) + len(arg3) + 8\n"
      "level path1/4 = len(arg2) + len(arg3) + "
      "2*(len(arg3) - pair_count(arg2, arg3)) + 1\n"
      "level holds/2 = 3*len(arg2) + cases(arg1) { loc/2 -> 1; clear/1 -> 3; "
      "above/2 -> 4; default -> 0 }\n";
  Annotation ann = parse_annotation(src);

  for (const auto& [rel, expr] : ann.level.exprs) {
    std::string printed = expr.str();
    Annotation again = parse_annotation("method: acceptable\nlevel " +
                                        rel.str() + " = " + printed);
    CHECK(again.level.exprs.at(rel).str() == printed);
  }

  // Left association with truncation at every step.
  const LevelExpr& trans = ann.level.exprs.at(Rel{"trans", 4});
  TermVec args{t("[m]"), t("x"), t("[a, a, c]"), t("[]")};
  // 216 - 1 + 3 - wait: set_count([a,a,c], {a,b}) = 1, len([m]) = 1,
  // len([]) = 0, len([a,a,c]) = 3: ((((216-1)+3)+0)+3)+8 = 229.
  CHECK(eval_expr(trans, args, ann.level.sets) == 229);

  const LevelExpr& p1 = ann.level.exprs.at(Rel{"path1", 4});
  // len([b,c]) = 2, len([[b,x]]) = 1, pair_count([b,c],[[b,x]]) = 1:
  // 2 + 1 + 2*(1-1) + 1 = 4.
  CHECK(eval_expr(p1, {t("n"), t("[b, c]"), t("[[b, x]]"), t("p")},
                  ann.level.sets) == 4);
}

TEST_CASE("annotation records") {
  std::string src =
      "% proof skeleton\n"
      "method: incremental\n"
      "universe_depth: 2\n"
      "universe_cap: 5000\n"
      "set s = { (a, p, q) ; (a, p, r) }\n"
      "set empty = { }\n"
      "part base: clauses 1-3, 7\n"
      "part step: relations trans/4, transform/3\n"
      "mode base: acyclic\n"
      "mode step: acceptable\n"
      "boundary step: weakly_extends member/2\n"
      "via step: a\n"
      "weak_set: member/2\n"
      "level member/2 = len(arg2)\n"
      "level step: trans/4 = len(arg1) + 1\n"
      "model member/2 = elem(arg1, arg2)\n"
      "model step: unif/2 = same(arg1, arg2)\n";
  Annotation ann = parse_annotation(src);

  CHECK(ann.method == Method::Incremental);
  CHECK(ann.universe_depth == 2);
  CHECK(ann.universe_cap == 5000);
  CHECK(ann.sets.at("s").size() == 2);
  CHECK(ann.sets.at("s")[0] == t("(a, p, q)"));
  CHECK(ann.sets.at("empty").empty());

  REQUIRE(ann.parts.size() == 2);
  CHECK(ann.parts[0].name == "base");
  CHECK(ann.parts[0].clause_ids == std::vector<int>{1, 2, 3, 7});
  CHECK(ann.parts[0].mode == "acyclic");
  CHECK(ann.parts[1].by_relations);
  CHECK(ann.parts[1].relations ==
        std::vector<Rel>{Rel{"trans", 4}, Rel{"transform", 3}});
  CHECK(ann.parts[1].boundary == "weakly_extends");
  CHECK(ann.parts[1].boundary_set == std::vector<Rel>{Rel{"member", 2}});
  CHECK(ann.parts[1].via == "a");
  CHECK(ann.weak_set == std::vector<Rel>{Rel{"member", 2}});

  SUBCASE("part-qualified entries overlay the shared ones") {
    LevelMapSpec base = ann.level_for("base");
    CHECK(base.exprs.count(Rel{"member", 2}) == 1);
    CHECK(base.exprs.count(Rel{"trans", 4}) == 0);
    LevelMapSpec step = ann.level_for("step");
    CHECK(step.exprs.count(Rel{"member", 2}) == 1);
    CHECK(step.exprs.at(Rel{"trans", 4}).str() == "len(arg1) + 1");
    CHECK(step.sets.count("s") == 1);

    InterpretationSpec m = ann.model_for("step");
    CHECK(m.conds.count(Rel{"unif", 2}) == 1);
    CHECK(m.conds.count(Rel{"member", 2}) == 1);
  }

  SUBCASE("sets are shared with every scope") {
    CHECK(ann.level.sets.count("s") == 1);
    CHECK(ann.model.sets.count("empty") == 1);
    CHECK(ann.part_levels.at("step").sets.count("s") == 1);
  }
}

TEST_CASE("annotation errors") {
  CHECK_THROWS_AS(parse_annotation("level p/1 = len(arg1)"), ParseError);
  CHECK_THROWS_AS(parse_annotation("method: upside_down"), ParseError);
  CHECK_THROWS_AS(parse_annotation("method: acyclic\nmethod: acyclic"),
                  ParseError);
  CHECK_THROWS_AS(parse_annotation("method: acyclic\nfrobnicate: 3"),
                  ParseError);
  CHECK_THROWS_AS(parse_annotation("method: acyclic\nset s = { X }"),
                  ParseError);
  CHECK_THROWS_AS(
      parse_annotation("method: acyclic\nset s = { a }\nset s = { b }"),
      ParseError);
  CHECK_THROWS_AS(parse_annotation("method: acyclic\nmode base: acyclic"),
                  ParseError);
  CHECK_THROWS_AS(
      parse_annotation("method: acyclic\npart p: clauses 1\nvia p: c"),
      ParseError);
  CHECK_THROWS_AS(
      parse_annotation(
          "method: acyclic\nlevel p/1 = len(arg1)\nlevel p/1 = 0"),
      ParseError);
  CHECK_THROWS_AS(parse_annotation("method: acyclic\nlevel p/1 = len(argx)"),
                  ParseError);
  CHECK_THROWS_AS(parse_annotation("method: acyclic\npart p: clauses 5-2"),
                  ParseError);
}

TEST_CASE("resolve_clause_ids") {
  Program p = parse_program(
      "member(X, [X | Xs]).\n"
      "member(X, [Y | Ys]) :- member(X, Ys).\n"
      "subset([], Ys).\n"
      "subset([X | Xs], Ys) :- member(X, Ys), subset(Xs, Ys).\n");

  PartDecl by_id;
  by_id.name = "a";
  by_id.clause_ids = {3, 1, 3};
  CHECK(resolve_clause_ids(by_id, p) == std::vector<int>{1, 3});

  PartDecl by_rel;
  by_rel.name = "b";
  by_rel.by_relations = true;
  by_rel.relations = {Rel{"member", 2}};
  CHECK(resolve_clause_ids(by_rel, p) == std::vector<int>{1, 2});

  PartDecl bad;
  bad.name = "c";
  bad.clause_ids = {9};
  CHECK_THROWS_AS(resolve_clause_ids(bad, p), AnnotationError);
}
