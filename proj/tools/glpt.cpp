// SPDX-License-Identifier: MIT
//
// glpt: command-line front end.  Subcommands parse, run, check, decompose
// and corpus; --format machine renders one JSON object on stdout for every
// code path, stderr carries diagnostics only.  Exit codes (total, mutually
// exclusive):
//   0  success / certificate verified / query answered
//   1  certificate refuted, query failed, or corpus failures
//   2  invalid input or annotation (including bad flags)
//   3  syntax error in a .glp/.ann file or query
//   4  certificate only verified to a bound under --require-proof
//   5  solver budget or internal resource cap exhausted
//   6  query floundered

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "glp/annotation.hpp"
#include "glp/checkers.hpp"
#include "glp/corpus.hpp"
#include "glp/decompose.hpp"
#include "glp/engine.hpp"
#include "glp/errors.hpp"
#include "glp/parser.hpp"

using json = nlohmann::ordered_json;
using namespace glp;

namespace {

constexpr int kPass = 0;
constexpr int kRefuted = 1;
constexpr int kInvalid = 2;
constexpr int kSyntax = 3;
constexpr int kBoundedOnly = 4;
constexpr int kExhausted = 5;
constexpr int kFlounder = 6;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Output {
  bool machine = false;
  json doc;

  // Results go to stdout; in machine mode they are collected instead and
  // flushed as one object by finish().
  void result(const std::string& line) {
    if (!machine) std::cout << line << "\n";
  }
  int finish(int code) {
    if (machine) {
      doc["exit"] = code;
      std::cout << doc.dump(2) << "\n";
    }
    return code;
  }
  int error(int code, const std::string& msg) {
    std::cerr << "glpt: " << msg << "\n";
    doc["error"] = msg;
    return finish(code);
  }
};

json outcome_json(const Outcome& o) {
  json j;
  switch (o.kind) {
    case Outcome::Kind::Answer:
      j["kind"] = "answer";
      j["store"] = o.store.str();
      break;
    case Outcome::Kind::Failure:
      j["kind"] = "failure";
      break;
    case Outcome::Kind::Flounder:
      j["kind"] = "flounder";
      j["atom"] = o.selected.str();
      break;
    case Outcome::Kind::BudgetExceeded:
      j["kind"] = "budget_exceeded";
      j["steps"] = o.steps;
      break;
    case Outcome::Kind::ResourceLimit:
      j["kind"] = "resource_limit";
      j["detail"] = o.detail;
      break;
  }
  return j;
}

int run_parse(Output& out, const std::string& file) {
  Program p = parse_program(slurp(file));
  if (out.machine) {
    json clauses = json::array();
    for (const Clause& c : p.clauses)
      clauses.push_back({{"id", c.id}, {"text", c.str()}});
    json rels = json::array();
    for (const Rel& r : p.relations()) rels.push_back(r.str());
    out.doc["clauses"] = clauses;
    out.doc["relations"] = rels;
  } else {
    for (const Clause& c : p.clauses) out.result(c.str());
  }
  return out.finish(kPass);
}

int run_run(Output& out, const std::string& file, const std::string& query,
            const std::string& mode, std::size_t budget,
            std::size_t max_answers) {
  Program p = parse_program(slurp(file));
  std::vector<Literal> q = parse_query(query);
  SolveOptions opts;
  opts.mode = mode == "naf" ? SolveMode::NegationAsFailure
                            : SolveMode::ConstructiveNegation;
  opts.budget = budget;
  opts.max_answers = max_answers;
  std::vector<Outcome> outs = solve(q, p, opts);

  json jouts = json::array();
  int code = kPass;
  for (const Outcome& o : outs) {
    out.result(o.str());
    jouts.push_back(outcome_json(o));
    switch (o.kind) {
      case Outcome::Kind::Answer: break;
      case Outcome::Kind::Failure: code = kRefuted; break;
      case Outcome::Kind::Flounder: code = kFlounder; break;
      case Outcome::Kind::BudgetExceeded:
      case Outcome::Kind::ResourceLimit: code = kExhausted; break;
    }
  }
  out.doc["outcomes"] = jouts;
  return out.finish(code);
}

int run_check(Output& out, const std::string& prog_file,
              const std::string& ann_file, int universe_depth,
              bool require_proof) {
  Program p = parse_program(slurp(prog_file));
  Annotation ann = parse_annotation(slurp(ann_file));
  if (universe_depth >= 0) ann.universe_depth = universe_depth;
  CheckReport rep = check_annotation(p, ann);

  out.result(rep.str());
  out.doc["status"] = status_str(rep.status);
  out.doc["bound"] = rep.bound;
  if (rep.witness)
    out.doc["witness"] = {{"instance", rep.witness->instance.str()},
                          {"obligation", rep.witness->obligation},
                          {"detail", rep.witness->detail}};
  if (!rep.reason.empty()) out.doc["reason"] = rep.reason;
  json log = json::array();
  for (const Obligation& o : rep.log)
    log.push_back({{"clause", o.clause_id},
                   {"condition", o.condition},
                   {"verdict", status_str(o.verdict)},
                   {"detail", o.detail}});
  out.doc["log"] = log;

  switch (rep.status) {
    case CheckStatus::ProvedSymbolic: return out.finish(kPass);
    case CheckStatus::VerifiedToBound:
      return out.finish(require_proof ? kBoundedOnly : kPass);
    case CheckStatus::Refuted: return out.finish(kRefuted);
    case CheckStatus::Invalid: return out.finish(kInvalid);
  }
  return out.finish(kInvalid);
}

int run_decompose(Output& out, const std::string& file) {
  Program p = parse_program(slurp(file));
  std::vector<Partition> cands = suggest_partition(p);
  json jc = json::array();
  bool first = true;
  for (const Partition& pt : cands) {
    if (!first) out.result("");
    first = false;
    std::string skel = pt.str();
    if (!skel.empty() && skel.back() == '\n') skel.pop_back();
    out.result(skel);
    json parts = json::array();
    for (const Partition::Part& part : pt.parts) {
      json ws = json::array();
      for (const Rel& r : part.weak_set) ws.push_back(r.str());
      parts.push_back(
          {{"name", part.name}, {"clauses", part.clause_ids}, {"weak_set", ws}});
    }
    jc.push_back({{"skeleton", skel}, {"parts", parts}});
  }
  out.doc["candidates"] = jc;
  return out.finish(kPass);
}

int run_corpus_cmd(Output& out, const std::string& dir,
                   const std::string& filter) {
  std::ostringstream lines;
  CorpusResult res = run_corpus(dir, lines, filter);
  json jl = json::array();
  std::istringstream in(lines.str());
  for (std::string line; std::getline(in, line);) {
    out.result(line);
    jl.push_back(line);
  }
  out.result(std::to_string(res.cases) + " cases, " +
             std::to_string(res.failures) + " failures");
  out.doc["lines"] = jl;
  out.doc["cases"] = res.cases;
  out.doc["failures"] = res.failures;
  return out.finish(res.failures == 0 ? kPass : kRefuted);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"general logic program toolkit"};
  app.require_subcommand(1);

  std::string format = "text";
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"text", "machine"}))
      ->capture_default_str();

  std::string parse_file;
  CLI::App* cmd_parse =
      app.add_subcommand("parse", "parse a program and print its clauses");
  cmd_parse->add_option("file", parse_file, "program file")->required();

  std::string run_file, run_query, run_mode = "cn";
  std::size_t run_budget = 1'000'000;
  std::size_t run_max_answers = static_cast<std::size_t>(-1);
  CLI::App* cmd_run = app.add_subcommand("run", "answer a query");
  cmd_run->add_option("file", run_file, "program file")->required();
  cmd_run->add_option("--query", run_query, "query text")->required();
  cmd_run->add_option("--mode", run_mode, "negation mode")
      ->check(CLI::IsMember({"cn", "naf"}))
      ->capture_default_str();
  cmd_run->add_option("--budget", run_budget, "derivation step budget")
      ->capture_default_str();
  cmd_run->add_option("--max-answers", run_max_answers,
                      "stop after this many answers");

  std::string check_prog, check_ann;
  int check_depth = -1;
  bool require_proof = false;
  CLI::App* cmd_check =
      app.add_subcommand("check", "verify a termination certificate");
  cmd_check->add_option("program", check_prog, "program file")->required();
  cmd_check->add_option("annotation", check_ann, "certificate file")
      ->required();
  cmd_check->add_option("--universe-depth", check_depth,
                        "override the certificate's universe depth");
  cmd_check->add_flag("--require-proof", require_proof,
                      "exit 4 unless the verdict is a symbolic proof");

  std::string dec_file;
  CLI::App* cmd_dec = app.add_subcommand(
      "decompose", "suggest layer splits as certificate skeletons");
  cmd_dec->add_option("file", dec_file, "program file")->required();

  std::string corpus_dir = GLPT_CORPUS_DIR, corpus_filter;
  CLI::App* cmd_corpus =
      app.add_subcommand("corpus", "run the example corpus expectations");
  cmd_corpus->add_option("--dir", corpus_dir, "corpus directory")
      ->capture_default_str();
  cmd_corpus->add_option("--filter", corpus_filter,
                         "only fixtures whose name contains this");

  Output out;
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    // Flag errors come before parse() can record --format, so detect the
    // machine request directly to keep stdout parseable.
    for (int i = 1; i < argc; ++i) {
      std::string a = argv[i];
      if (a == "--format=machine" ||
          (a == "--format" && i + 1 < argc &&
           std::string(argv[i + 1]) == "machine"))
        out.machine = true;
    }
    return out.error(kInvalid, e.what());
  }
  out.machine = format == "machine";
  out.doc["command"] = app.get_subcommands().front()->get_name();

  try {
    if (*cmd_parse) return run_parse(out, parse_file);
    if (*cmd_run)
      return run_run(out, run_file, run_query, run_mode, run_budget,
                     run_max_answers);
    if (*cmd_check)
      return run_check(out, check_prog, check_ann, check_depth, require_proof);
    if (*cmd_dec) return run_decompose(out, dec_file);
    if (*cmd_corpus) return run_corpus_cmd(out, corpus_dir, corpus_filter);
  } catch (const ParseError& e) {
    return out.error(kSyntax, e.what());
  } catch (const AnnotationError& e) {
    return out.error(kInvalid, e.what());
  } catch (const ResourceError& e) {
    return out.error(kExhausted, e.what());
  } catch (const std::exception& e) {
    return out.error(kInvalid, e.what());
  }
  return out.error(kInvalid, "no subcommand");
}
