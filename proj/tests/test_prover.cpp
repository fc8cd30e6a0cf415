// SPDX-License-Identifier: MIT
// Level comparison engine: symbolic proofs, guard reasoning, staged
// enumeration with replayable witnesses.
#include <doctest.h>

#include <glp/annotation.hpp>
#include <glp/errors.hpp>
#include <glp/parser.hpp>
#include <glp/prover.hpp>

using namespace glp;

namespace {

Annotation ann(const std::string& records) {
  return parse_annotation("method: acceptable\n" + records);
}

Clause first_clause(const std::string& src) {
  return parse_program(src).clauses.at(0);
}

CompareEnv env_for(const std::string& src, int depth = 3) {
  CompareEnv env(parse_program(src).signature());
  env.depth = depth;
  return env;
}

// A refutation must come with a ground instance that actually violates the
// obligation: guard prefix true, head level not above (or not >=) the body
// literal's level.
void replay_witness(const CheckReport& r, const LevelMapSpec& head_spec,
                    const LevelMapSpec& body_spec, std::size_t i, bool strict,
                    const InterpretationSpec* guard,
                    const std::vector<std::size_t>& prefix) {
  REQUIRE(r.status == CheckStatus::Refuted);
  REQUIRE(r.witness.has_value());
  const Clause& inst = r.witness->instance;
  CHECK(r.witness->obligation == "decrease");
  for (std::size_t j : prefix) {
    const Literal& l = inst.body.at(j);
    if (l.is_atomlit())
      CHECK(guard->holds(l));
    else
      CHECK(InterpretationSpec{}.holds(l));
  }
  long lh = eval_level(head_spec, inst.head);
  long lb = eval_level(body_spec, inst.body.at(i));
  if (strict)
    CHECK(lh <= lb);
  else
    CHECK(lh < lb);
}

}  // namespace

TEST_CASE("strict decrease on a shrinking list argument") {
  const char* src = "p([X|Xs]) :- q(X), p(Xs).  p([]).  q(a).";
  Clause c = first_clause(src);
  Annotation a = ann("level p/1 = len(arg1)");
  CheckReport r = compare_levels(a.level, c, 1, true, nullptr, env_for(src));
  CHECK(r.status == CheckStatus::ProvedSymbolic);

  // The first body literal has no level expression: that is an annotation
  // gap, not a counterexample.
  CheckReport gap = compare_levels(a.level, c, 0, true, nullptr, env_for(src));
  CHECK(gap.status == CheckStatus::Invalid);
  CHECK(gap.reason.find("q/1") != std::string::npos);
}

TEST_CASE("identical levels: non-strict holds, strict is refuted") {
  const char* src = "p(Xs) :- p(Xs).  p([]).";
  Clause c = first_clause(src);
  Annotation a = ann("level p/1 = len(arg1)");
  CompareEnv env = env_for(src);

  CHECK(compare_levels(a.level, c, 0, false, nullptr, env).status ==
        CheckStatus::ProvedSymbolic);

  CheckReport r = compare_levels(a.level, c, 0, true, nullptr, env);
  replay_witness(r, a.level, a.level, 0, true, nullptr, {});
}

TEST_CASE("growing recursive argument is refuted with a ground witness") {
  const char* src = "p(Xs) :- p([a|Xs]).  p([]).";
  Clause c = first_clause(src);
  Annotation a = ann("level p/1 = len(arg1)");
  CheckReport r = compare_levels(a.level, c, 0, true, nullptr, env_for(src));
  replay_witness(r, a.level, a.level, 0, true, nullptr, {});
  CHECK(r.witness->instance.head.args.at(0).ground());
  CHECK(!r.witness->detail.empty());
}

TEST_CASE("coefficients: 2*len vs len needs the empty list to fail") {
  const char* src = "q(Xs) :- p(Xs).  q([]).  p([]).";
  Clause c = first_clause(src);
  Annotation a = ann("level q/1 = 2*len(arg1)   level p/1 = len(arg1)");
  CompareEnv env = env_for(src);

  // 2n >= n always; 2n > n fails exactly at n = 0.
  CHECK(compare_levels(a.level, c, 0, false, nullptr, env).status ==
        CheckStatus::ProvedSymbolic);
  CheckReport r = compare_levels(a.level, c, 0, true, nullptr, env);
  replay_witness(r, a.level, a.level, 0, true, nullptr, {});
  CHECK(spine_len(r.witness->instance.head.args.at(0)) == 0);
}

TEST_CASE("distinct head and body level maps") {
  const char* src = "h(Xs) :- b(Xs).  h([]).";
  Clause c = first_clause(src);
  Annotation hi = ann("level h/1 = len(arg1) + 1");
  Annotation lo = ann("level b/1 = len(arg1)");
  CompareEnv env = env_for(src);

  CHECK(compare_levels(hi.level, lo.level, c, 0, true, nullptr, env, nullptr)
            .status == CheckStatus::ProvedSymbolic);

  // Swapped: |h| = len and |b| = len + 1, so even >= fails.
  Annotation hs = ann("level h/1 = len(arg1)");
  Annotation bs = ann("level b/1 = len(arg1) + 1");
  CheckReport r =
      compare_levels(hs.level, bs.level, c, 0, false, nullptr, env, nullptr);
  replay_witness(r, hs.level, bs.level, 0, false, nullptr, {});
}

TEST_CASE("set_count decrease guarded by fresh membership") {
  const char* src =
      "t(V) :- pick(X), \\+ mem(X, V), t([X|V]).  t([]).  pick(a).";
  Clause c = first_clause(src);
  Annotation a = ann(
      "set s = { a ; b ; c }\n"
      "level t/1 = 3 - set_count(arg1, @s)\n"
      "model pick/1 = in_set(arg1, @s)\n"
      "model mem/2 = elem(arg1, arg2)");
  CompareEnv env = env_for(src);

  // Guarded by pick(X) and \+ mem(X, V): the new element is counted once
  // more, so the level drops by exactly one.
  CheckReport r = compare_levels(a.level, a.level, c, 2, true, &a.model, env,
                                 nullptr);
  CHECK(r.status == CheckStatus::ProvedSymbolic);

  // Without the non-membership guard the element may already be in V.
  std::vector<std::size_t> prefix{0};
  CheckReport weak = compare_levels(a.level, a.level, c, 2, true, &a.model,
                                    env, &prefix);
  replay_witness(weak, a.level, a.level, 2, true, &a.model, prefix);
}

TEST_CASE("pair_count decrease over an edge list") {
  const char* src =
      "p([X|P], G) :- e([Y, W], G), \\+ m(Y, [X|P]), p([Y, X|P], G).\n"
      "p([], []).";
  Clause c = first_clause(src);
  Annotation a = ann(
      "level p/2 = 2*(len(arg2) - pair_count(arg1, arg2))\n"
      "model e/2 = elem(arg1, arg2)\n"
      "model m/2 = elem(arg1, arg2)");
  CheckReport r = compare_levels(a.level, a.level, c, 2, true, &a.model,
                                 env_for(src), nullptr);
  CHECK(r.status == CheckStatus::ProvedSymbolic);
}

TEST_CASE("comparison guard contributes arithmetic rows") {
  const char* src = "h(Xs, Ys) :- shorter(Xs, Ys), w(Xs).  h([], []).";
  Clause c = first_clause(src);
  Annotation a = ann(
      "level h/2 = len(arg2)   level w/1 = len(arg1)\n"
      "model shorter/2 = len(arg1) < len(arg2)");
  CompareEnv env = env_for(src);

  CHECK(compare_levels(a.level, a.level, c, 1, true, &a.model, env, nullptr)
            .status == CheckStatus::ProvedSymbolic);

  // Without the guard the empty pair is a counterexample.
  CheckReport r = compare_levels(a.level, c, 1, true, nullptr, env);
  replay_witness(r, a.level, a.level, 1, true, nullptr, {});
}

TEST_CASE("equality guard binds through unification") {
  const char* src = "h(Xs) :- Xs = [a|Ys], h(Ys).  h([]).";
  Clause c = first_clause(src);
  Annotation a = ann("level h/1 = len(arg1)");
  InterpretationSpec none;  // constraints need no interpretation
  CheckReport r = compare_levels(a.level, a.level, c, 1, true, &none,
                                 env_for(src), nullptr);
  CHECK(r.status == CheckStatus::ProvedSymbolic);
}

TEST_CASE("guard false in the intended model discharges the obligation") {
  const char* src = "h(X) :- never(X), h(f(X)).  h(a).";
  Clause c = first_clause(src);
  Annotation a = ann("level h/1 = len(arg1)   model never/1 = none");
  CompareEnv env = env_for(src);

  CHECK(compare_levels(a.level, a.level, c, 1, true, &a.model, env, nullptr)
            .status == CheckStatus::ProvedSymbolic);

  // Same obligation under an everywhere-true guard: no decrease.
  Annotation b = ann("level h/1 = len(arg1)   model never/1 = all");
  CheckReport r = compare_levels(b.level, b.level, c, 1, true, &b.model, env,
                                 nullptr);
  replay_witness(r, b.level, b.level, 1, true, &b.model, {0});
}

TEST_CASE("arithmetically impossible guard case is discharged by rows") {
  const char* src = "h(X) :- g(X), h(f(X)).  h(a).";
  Clause c = first_clause(src);
  Annotation a = ann("level h/1 = len(arg1)   model g/1 = 1 = 0");
  CheckReport r = compare_levels(a.level, a.level, c, 1, true, &a.model,
                                 env_for(src), nullptr);
  CHECK(r.status == CheckStatus::ProvedSymbolic);
}

TEST_CASE("truncated level: staged checking is honest about its bound") {
  // |p(l)| = 2 - len(l) stops decreasing once len(l) >= 2, but such lists
  // need universe depth 2.
  const char* src = "p(Xs) :- p([a|Xs]).  p([]).";
  Clause c = first_clause(src);
  Annotation a = ann("level p/1 = 2 - len(arg1)");

  CheckReport shallow =
      compare_levels(a.level, c, 0, true, nullptr, env_for(src, 1));
  CHECK(shallow.status == CheckStatus::VerifiedToBound);
  CHECK(shallow.bound == 1);

  CheckReport deep =
      compare_levels(a.level, c, 0, true, nullptr, env_for(src, 3));
  replay_witness(deep, a.level, a.level, 0, true, nullptr, {});
  CHECK(spine_len(deep.witness->instance.head.args.at(0)) >= 2);
}

TEST_CASE("out-of-range and constraint obligations are invalid") {
  const char* src = "p(Xs) :- Xs = [], p(Xs).  p([]).";
  Clause c = first_clause(src);
  Annotation a = ann("level p/1 = len(arg1)");
  CompareEnv env = env_for(src);

  CHECK(compare_levels(a.level, c, 5, true, nullptr, env).status ==
        CheckStatus::Invalid);
  CHECK(compare_levels(a.level, c, 0, true, nullptr, env).status ==
        CheckStatus::Invalid);

  // A guard atom without a model condition is an annotation gap too.
  const char* src2 = "h(Xs) :- u(Xs), h(Xs).  h([]).";
  Clause c2 = first_clause(src2);
  Annotation b = ann("level h/1 = len(arg1)   model other/1 = all");
  CheckReport r =
      compare_levels(b.level, b.level, c2, 1, false, &b.model, env_for(src2),
                     nullptr);
  CHECK(r.status == CheckStatus::Invalid);
  CHECK(r.reason.find("u/1") != std::string::npos);
}

TEST_CASE("instance cap on the first stage raises, later stages degrade") {
  const char* src = "p(Xs) :- q(X), p(Xs).  p([a]).  q(a).";
  Clause c = first_clause(src);
  Annotation a = ann("level p/1 = len(arg1)   level q/1 = 0");
  CompareEnv env = env_for(src);
  env.symbolic = false;  // force the enumeration path
  env.instance_cap = 1;  // not even the depth-1 universe fits
  CHECK_THROWS_AS(
      compare_levels(a.level, a.level, c, 1, false, nullptr, env, nullptr),
      ResourceError);

  // Enough for depth 1 but not beyond: verified to the last finished stage.
  env.instance_cap = 16;
  CheckReport r =
      compare_levels(a.level, a.level, c, 1, false, nullptr, env, nullptr);
  CHECK(r.status == CheckStatus::VerifiedToBound);
  CHECK(r.bound == 1);
}

TEST_CASE("forced enumeration never contradicts a symbolic proof") {
  struct Fixture {
    std::string src;
    std::string records;
    std::size_t i;
    bool strict;
    bool guarded;
  };
  const Fixture fixtures[] = {
      {"p([X|Xs]) :- q(X), p(Xs).  p([]).  q(a).",
       "level p/1 = len(arg1)   level q/1 = 0", 1, true, false},
      {"t(V) :- pick(X), \\+ mem(X, V), t([X|V]).  t([]).  pick(a).",
       "set s = { a ; b }\nlevel t/1 = 2 - set_count(arg1, @s)\n"
       "level pick/1 = 0   level mem/2 = 0\n"
       "model pick/1 = in_set(arg1, @s)   model mem/2 = elem(arg1, arg2)",
       2, true, true},
      {"h(Xs, Ys) :- shorter(Xs, Ys), w(Xs).  h([], []).",
       "level h/2 = len(arg2)   level w/1 = len(arg1)\n"
       "level shorter/2 = 0\n"
       "model shorter/2 = len(arg1) < len(arg2)   model w/1 = all",
       1, true, true},
      {"h(X) :- never(X), h(f(X)).  h(a).",
       "level h/1 = len(arg1)   level never/1 = 0   model never/1 = none", 1,
       true, true},
  };
  for (const Fixture& fx : fixtures) {
    CAPTURE(fx.src);
    Clause c = first_clause(fx.src);
    Annotation a = ann(fx.records);
    const InterpretationSpec* guard = fx.guarded ? &a.model : nullptr;
    CompareEnv env = env_for(fx.src);

    CheckReport sym = compare_levels(a.level, a.level, c, fx.i, fx.strict,
                                     guard, env, nullptr);
    REQUIRE(sym.status == CheckStatus::ProvedSymbolic);

    env.symbolic = false;
    CheckReport enu = compare_levels(a.level, a.level, c, fx.i, fx.strict,
                                     guard, env, nullptr);
    // Agreement: enumeration may stop early on the instance cap, but it
    // must never refute what the symbolic path proved.
    CHECK(enu.status == CheckStatus::VerifiedToBound);
    CHECK(enu.bound >= 1);
  }
}
