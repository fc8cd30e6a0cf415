// SPDX-License-Identifier: MIT
#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "glp/annotation.hpp"
#include "glp/engine.hpp"
#include "glp/program.hpp"

namespace glp {

// Self-checking example programs with pinned expectations.  Each fixture
// names a program file and any number of certificate checks, queries and
// program differences; the expectations are part of the fixture, so a
// behavioural change in the solver or the checkers shows up as a corpus
// failure with the offending case named.

// One certificate: either it must verify, or it must be refuted with a
// witness violating the given obligation.
struct CheckCase {
  std::string ann_file;
  bool expect_ok = true;
  std::string expect_obligation;  // refuted cases: the witness's tag
};

// One query under a fixed mode.  Answers are compared as a set: the count
// must match and the answer disjunction must be logically equivalent to
// the expected one over the query's environment, so renamed variables or
// reordered constraints do not matter.  Floundering expectations pin the
// relation of the selected negated atom.
struct QueryCase {
  std::string text;
  SolveMode mode = SolveMode::ConstructiveNegation;
  Outcome::Kind expect = Outcome::Kind::Answer;
  std::vector<std::string> expect_stores;  // each parseable, "true" = empty
  std::string expect_flounder_rel;
  std::size_t budget = 1'000'000;
};

// diff(program, minus) must equal the reference program up to renaming.
struct DiffCase {
  std::string minus_file;
  std::string equals_file;
};

struct Fixture {
  std::string name;
  std::string program_file;
  std::vector<CheckCase> checks;
  std::vector<QueryCase> queries;
  std::vector<DiffCase> diffs;
};

const std::vector<Fixture>& corpus_fixtures();

Program load_corpus_program(const std::string& dir, const std::string& file);
Annotation load_corpus_annotation(const std::string& dir,
                                  const std::string& file);

// Answer-set equivalence: the disjunctions of the two store lists entail
// each other over env_for_query(query, p).  Counts are not compared here.
bool stores_equivalent(const std::vector<ConstraintStore>& got,
                       const std::vector<ConstraintStore>& want,
                       const std::vector<Literal>& query, const Program& p);

struct CorpusResult {
  int cases = 0;
  int failures = 0;
};

// Runs one fixture resp. every fixture whose name contains `filter`,
// writing one "ok"/"FAIL" line per case.  A thrown exception fails the
// case but never stops the run.
CorpusResult run_fixture(const Fixture& f, const std::string& dir,
                         std::ostream& out);
CorpusResult run_corpus(const std::string& dir, std::ostream& out,
                        const std::string& filter = {});

}  // namespace glp
