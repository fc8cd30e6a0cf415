// SPDX-License-Identifier: MIT
#include "glp/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "glp/checkers.hpp"
#include "glp/constraints.hpp"
#include "glp/decompose.hpp"
#include "glp/parser.hpp"

namespace glp {

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> query_variables(const std::vector<Literal>& query) {
  std::vector<std::string> vs;
  for (const Literal& l : query) l.collect_variables(vs);
  std::vector<std::string> uniq;
  for (const std::string& v : vs)
    if (std::find(uniq.begin(), uniq.end(), v) == uniq.end()) uniq.push_back(v);
  return uniq;
}

// Expected answer text -> store: a conjunction of =/\= literals over the
// query's variables, "true" for the empty store.
ConstraintStore parse_store(const std::string& text, const SolverEnv& env) {
  ConstraintStore s;
  if (text == "true") return s;
  for (const Literal& l : parse_query(text)) {
    if (l.kind == Literal::Kind::Eq)
      s = add_equality(s, l.lhs, l.rhs, env);
    else if (l.kind == Literal::Kind::Ineq)
      s = add_inequality(s, Ineq::from_literal(l), env);
    else
      throw std::runtime_error("expected store literal, got " + l.str());
  }
  return s;
}

// Every solution of an `as` store satisfies some `bs` store.
bool covered_by(const std::vector<ConstraintStore>& as,
                const std::vector<ConstraintStore>& bs, const Atom& vars,
                const SolverEnv& env) {
  std::size_t fresh = 0;
  AnswerFormula neg = negate_answers(vars, bs, env, fresh);
  for (const ConstraintStore& a : as)
    for (const ConstraintStore& d : neg.disjuncts)
      if (!conjoin(a, d, env).unsat()) return false;
  return true;
}

const char* kGraph4 = "[[a,b],[b,c],[a,a],[c,b]]";

std::string outcomes_str(const std::vector<Outcome>& outs) {
  std::string s;
  for (const Outcome& o : outs) {
    if (!s.empty()) s += " | ";
    s += o.str();
  }
  return s.empty() ? "<none>" : s;
}

}  // namespace

Program load_corpus_program(const std::string& dir, const std::string& file) {
  return parse_program(slurp(dir + "/" + file));
}

Annotation load_corpus_annotation(const std::string& dir,
                                  const std::string& file) {
  return parse_annotation(slurp(dir + "/" + file));
}

bool stores_equivalent(const std::vector<ConstraintStore>& got,
                       const std::vector<ConstraintStore>& want,
                       const std::vector<Literal>& query, const Program& p) {
  SolverEnv env = env_for_query(query, p);
  TermVec args;
  for (const std::string& v : query_variables(query))
    args.push_back(Term::variable(v));
  Atom vars{"q_", std::move(args)};
  return covered_by(got, want, vars, env) &&
         covered_by(want, got, vars, env);
}

const std::vector<Fixture>& corpus_fixtures() {
  static const std::vector<Fixture> fixtures = [] {
    std::vector<Fixture> fs;

    fs.push_back({"chan",
                  "chan.glp",
                  {},
                  {{"\\+ p(X)",
                    SolveMode::ConstructiveNegation,
                    Outcome::Kind::Answer,
                    {"X \\= a, X \\= b"},
                    "",
                    1'000'000}},
                  {}});

    fs.push_back({"blocksworld",
                  "blocksworld.glp",
                  {{"blocksworld.ann", true, ""}},
                  {{"holds(loc(a,p),[A])",
                    SolveMode::ConstructiveNegation,
                    Outcome::Kind::Answer,
                    {"forall([L], A \\= move(a, L))"},
                    "",
                    1'000'000},
                   {"holds(loc(a,p),[A])",
                    SolveMode::NegationAsFailure,
                    Outcome::Kind::Flounder,
                    {},
                    "abnormal",
                    1'000'000}},
                  {}});

    // The acyclicity certificate carries no clause references, so it
    // applies unchanged to the planner's reduced lower layer.
    fs.push_back({"r_blocksworld",
                  "r_blocksworld.glp",
                  {{"blocksworld.ann", true, ""}},
                  {},
                  {}});

    fs.push_back({"tras", "tras.glp", {{"tras.ann", true, ""}}, {}, {}});

    fs.push_back({"planning",
                  "planning.glp",
                  {{"planning.ann", true, ""}},
                  {},
                  {{"r_blocksworld.glp", "tras.glp"}}});

    fs.push_back({"hamiltonian",
                  "hamiltonian.glp",
                  {{"hamiltonian.ann", true, ""}},
                  {{std::string("ham(") + kGraph4 + ",[a,b,c])",
                    SolveMode::ConstructiveNegation,
                    Outcome::Kind::Answer,
                    {"true"},
                    "",
                    1'000'000}},
                  {}});

    fs.push_back({"specialize",
                  "specialize.glp",
                  {{"specialize.ann", true, ""},
                   {"specialize_wrong.ann", false, "boundary"}},
                  {{"spec(a,b,X,[[a,b],[b,c],[a,a]])",
                    SolveMode::ConstructiveNegation,
                    Outcome::Kind::Answer,
                    {"X \\= a, X \\= b"},
                    "",
                    1'000'000},
                   {"spec(a,b,X,[[a,b],[b,c],[a,a]])",
                    SolveMode::NegationAsFailure,
                    Outcome::Kind::Flounder,
                    {},
                    "unspec",
                    1'000'000},
                   {std::string("spec(a,b,c,") + kGraph4 + ")",
                    SolveMode::ConstructiveNegation,
                    Outcome::Kind::Answer,
                    {"true"},
                    "",
                    1'000'000}},
                  {}});

    // The published description of this program calls the four-node query
    // below a success, but under the clauses as circulated (see the notes
    // in reduce.glp) a removal pass on a real node cannot keep any arc, so
    // the query fails; the open query instead closes through clause 2
    // twice.  The fixture pins the behaviour of the clauses as written.
    fs.push_back({"reduce",
                  "reduce.glp",
                  {{"reduce.ann", true, ""}},
                  {{"red(a,b,[],G2)",
                    SolveMode::ConstructiveNegation,
                    Outcome::Kind::Failure,
                    {},
                    "",
                    1'000'000},
                   {std::string("red(a,b,") + kGraph4 + ",[[a,b],[a,a]])",
                    SolveMode::ConstructiveNegation,
                    Outcome::Kind::Failure,
                    {},
                    "",
                    1'000'000},
                   {std::string("red(a,b,") + kGraph4 + ",G2)",
                    SolveMode::ConstructiveNegation,
                    Outcome::Kind::Answer,
                    {std::string("G2 = ") + kGraph4,
                     std::string("G2 = ") + kGraph4},
                    "",
                    1'000'000}},
                  {}});

    fs.push_back({"reduce_bad",
                  "reduce_bad.glp",
                  {{"reduce_bad.ann", false, "decrease"}},
                  {},
                  {}});

    fs.push_back({"toy_sec5",
                  "toy_sec5.glp",
                  {{"toy_sec5.ann", false, "boundary"}},
                  {},
                  {}});

    fs.push_back(
        {"toy_ex83", "toy_ex83.glp", {{"toy_ex83.ann", true, ""}}, {}, {}});

    fs.push_back({"toy_ex83_neg",
                  "toy_ex83_neg.glp",
                  {{"toy_ex83_neg.ann", false, "completion"}},
                  {},
                  {}});

    fs.push_back({"toy_flounder",
                  "toy_flounder.glp",
                  {},
                  {{"p(a)",
                    SolveMode::ConstructiveNegation,
                    Outcome::Kind::BudgetExceeded,
                    {},
                    "",
                    2000},
                   {"p(a)",
                    SolveMode::NegationAsFailure,
                    Outcome::Kind::Flounder,
                    {},
                    "q",
                    1'000'000}},
                  {}});

    return fs;
  }();
  return fixtures;
}

namespace {

struct CaseLog {
  std::ostream& out;
  const std::string& fixture;
  CorpusResult& res;

  void pass(const std::string& label, const std::string& detail) {
    ++res.cases;
    out << "ok   " << fixture << " " << label;
    if (!detail.empty()) out << ": " << detail;
    out << "\n";
  }
  void fail(const std::string& label, const std::string& detail) {
    ++res.cases;
    ++res.failures;
    out << "FAIL " << fixture << " " << label << ": " << detail << "\n";
  }
};

void run_check(const Program& prog, const CheckCase& c, const std::string& dir,
               CaseLog& log) {
  std::string label = "check " + c.ann_file;
  Annotation ann = load_corpus_annotation(dir, c.ann_file);
  CheckReport rep = check_annotation(prog, ann);
  if (c.expect_ok) {
    if (rep.ok())
      log.pass(label, status_str(rep.status) +
                          (rep.status == CheckStatus::VerifiedToBound
                               ? " (depth " + std::to_string(rep.bound) + ")"
                               : ""));
    else
      log.fail(label, "expected a verified certificate, got " + rep.str());
    return;
  }
  if (rep.status != CheckStatus::Refuted || !rep.witness) {
    log.fail(label, "expected a refutation at '" + c.expect_obligation +
                        "', got " + rep.str());
    return;
  }
  if (rep.witness->obligation != c.expect_obligation) {
    log.fail(label, "refuted at '" + rep.witness->obligation +
                        "', expected '" + c.expect_obligation +
                        "' (witness: " + rep.witness->instance.str() + ")");
    return;
  }
  log.pass(label, "refuted at '" + rep.witness->obligation +
                      "', witness " + rep.witness->instance.str());
}

void run_query(const Program& prog, const QueryCase& q, CaseLog& log) {
  std::string label = std::string("query [") +
                      (q.mode == SolveMode::ConstructiveNegation ? "cn" : "naf") +
                      "] " + q.text;
  std::vector<Literal> query = parse_query(q.text);
  SolveOptions opts;
  opts.mode = q.mode;
  opts.budget = q.budget;
  std::vector<Outcome> outs = solve(query, prog, opts);

  if (q.expect == Outcome::Kind::Answer) {
    std::vector<ConstraintStore> got;
    for (const Outcome& o : outs) {
      if (o.kind != Outcome::Kind::Answer) {
        log.fail(label, "expected answers only, got " + outcomes_str(outs));
        return;
      }
      got.push_back(o.store);
    }
    if (got.size() != q.expect_stores.size()) {
      log.fail(label, "expected " + std::to_string(q.expect_stores.size()) +
                          " answers, got " + outcomes_str(outs));
      return;
    }
    SolverEnv env = env_for_query(query, prog);
    std::vector<ConstraintStore> want;
    for (const std::string& s : q.expect_stores)
      want.push_back(parse_store(s, env));
    if (!stores_equivalent(got, want, query, prog)) {
      log.fail(label, "answers not equivalent to expectation, got " +
                          outcomes_str(outs));
      return;
    }
    log.pass(label, outcomes_str(outs));
    return;
  }

  if (outs.size() != 1 || outs[0].kind != q.expect) {
    log.fail(label, "expected a single terminal outcome, got " +
                        outcomes_str(outs));
    return;
  }
  if (q.expect == Outcome::Kind::Flounder && !q.expect_flounder_rel.empty() &&
      outs[0].selected.rel != q.expect_flounder_rel) {
    log.fail(label, "floundered on " + outs[0].selected.str() +
                        ", expected relation " + q.expect_flounder_rel);
    return;
  }
  log.pass(label, outcomes_str(outs));
}

void run_diff(const Program& prog, const DiffCase& d, const std::string& dir,
              CaseLog& log) {
  std::string label = "diff -" + d.minus_file + " = " + d.equals_file;
  Program minus = load_corpus_program(dir, d.minus_file);
  Program want = load_corpus_program(dir, d.equals_file);
  Program got = diff(prog, minus);
  if (!alpha_equal(got, want)) {
    log.fail(label, "difference has " + std::to_string(got.clauses.size()) +
                        " clauses and is not a renaming of the reference (" +
                        std::to_string(want.clauses.size()) + " clauses)");
    return;
  }
  log.pass(label, std::to_string(got.clauses.size()) + " clauses match");
}

}  // namespace

CorpusResult run_fixture(const Fixture& f, const std::string& dir,
                         std::ostream& out) {
  CorpusResult res;
  CaseLog log{out, f.name, res};
  Program prog;
  try {
    prog = load_corpus_program(dir, f.program_file);
  } catch (const std::exception& e) {
    log.fail("load " + f.program_file, e.what());
    return res;
  }
  for (const CheckCase& c : f.checks) {
    try {
      run_check(prog, c, dir, log);
    } catch (const std::exception& e) {
      log.fail("check " + c.ann_file, std::string("exception: ") + e.what());
    }
  }
  for (const QueryCase& q : f.queries) {
    try {
      run_query(prog, q, log);
    } catch (const std::exception& e) {
      log.fail("query " + q.text, std::string("exception: ") + e.what());
    }
  }
  for (const DiffCase& d : f.diffs) {
    try {
      run_diff(prog, d, dir, log);
    } catch (const std::exception& e) {
      log.fail("diff -" + d.minus_file,
               std::string("exception: ") + e.what());
    }
  }
  return res;
}

CorpusResult run_corpus(const std::string& dir, std::ostream& out,
                        const std::string& filter) {
  CorpusResult total;
  for (const Fixture& f : corpus_fixtures()) {
    if (!filter.empty() && f.name.find(filter) == std::string::npos) continue;
    CorpusResult r = run_fixture(f, dir, out);
    total.cases += r.cases;
    total.failures += r.failures;
  }
  return total;
}

}  // namespace glp
