// SPDX-License-Identifier: MIT
#include <sstream>

#include "doctest.h"
#include "glp/corpus.hpp"
#include "glp/parser.hpp"

using namespace glp;

namespace {
const std::string kDir = GLPT_CORPUS_DIR;
}

TEST_CASE("store equivalence is order- and renaming-insensitive") {
  Program p = load_corpus_program(kDir, "chan.glp");
  auto query = parse_query("\\+ p(X)");
  SolverEnv env = env_for_query(query, p);

  auto mk = [&](const char* text) {
    ConstraintStore s;
    for (const Literal& l : parse_query(text))
      s = add_inequality(s, Ineq::from_literal(l), env);
    return s;
  };
  std::vector<ConstraintStore> ab = {mk("X \\= a, X \\= b")};
  std::vector<ConstraintStore> ba = {mk("X \\= b, X \\= a")};
  std::vector<ConstraintStore> a = {mk("X \\= a")};

  CHECK(stores_equivalent(ab, ba, query, p));
  CHECK(!stores_equivalent(ab, a, query, p));
  // Splitting one store into a disjunction preserves equivalence.
  std::vector<ConstraintStore> split = {
      add_equality(mk("X \\= a, X \\= b"), Term::variable("X"),
                   Term::constant("c"), env),
      mk("X \\= a, X \\= b, X \\= c")};
  CHECK(stores_equivalent(split, ab, query, p));
}

TEST_CASE("fixture table is wired to real files") {
  const auto& fs = corpus_fixtures();
  REQUIRE(fs.size() >= 13);
  int checks = 0, queries = 0, diffs = 0;
  for (const Fixture& f : fs) {
    CHECK(!f.name.empty());
    // Every referenced file must load.
    (void)load_corpus_program(kDir, f.program_file);
    for (const CheckCase& c : f.checks) {
      (void)load_corpus_annotation(kDir, c.ann_file);
      if (!c.expect_ok) CHECK(!c.expect_obligation.empty());
      ++checks;
    }
    queries += static_cast<int>(f.queries.size());
    diffs += static_cast<int>(f.diffs.size());
  }
  CHECK(checks >= 12);
  CHECK(queries >= 12);
  CHECK(diffs >= 1);
}

TEST_CASE("corpus runs clean") {
  std::ostringstream log;
  CorpusResult res = run_corpus(kDir, log);
  INFO(log.str());
  CHECK(res.cases >= 25);
  CHECK(res.failures == 0);
}

TEST_CASE("fixture failures are reported, not thrown") {
  Fixture broken{"broken",
                 "chan.glp",
                 {{"missing.ann", true, ""}},
                 {{"\\+ p(X)",
                   SolveMode::ConstructiveNegation,
                   Outcome::Kind::Answer,
                   {"X \\= a"},
                   "",
                   1'000'000}},
                 {}};
  std::ostringstream log;
  CorpusResult res = run_fixture(broken, kDir, log);
  CHECK(res.cases == 2);
  CHECK(res.failures == 2);
  CHECK(log.str().find("FAIL") != std::string::npos);
}
