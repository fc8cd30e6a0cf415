// SPDX-License-Identifier: MIT
#include "glp/annotation.hpp"

#include <algorithm>
#include <optional>
#include <set>

#include "glp/errors.hpp"
#include "glp/parser.hpp"

namespace glp {

std::string method_str(Method m) {
  switch (m) {
    case Method::Acyclic: return "acyclic";
    case Method::Acceptable: return "acceptable";
    case Method::UpAcceptable: return "up_acceptable";
    case Method::WeakUpAcceptable: return "weak_up_acceptable";
    case Method::LowAcceptable: return "low_acceptable";
    case Method::NewUpAcceptable: return "new_up_acceptable";
    case Method::Incremental: return "incremental";
  }
  return "?";
}

const PartDecl* Annotation::part(const std::string& name) const {
  for (const PartDecl& p : parts)
    if (p.name == name) return &p;
  return nullptr;
}

LevelMapSpec Annotation::level_for(const std::string& part_name) const {
  LevelMapSpec out = level;
  auto it = part_levels.find(part_name);
  if (it != part_levels.end())
    for (const auto& [r, e] : it->second.exprs) out.exprs[r] = e;
  out.sets = sets;
  return out;
}

InterpretationSpec Annotation::model_for(const std::string& part_name) const {
  InterpretationSpec out = model;
  auto it = part_models.find(part_name);
  if (it != part_models.end())
    for (const auto& [r, c] : it->second.conds) out.conds[r] = c;
  out.sets = sets;
  return out;
}

namespace {

std::optional<Method> method_from(const std::string& s) {
  for (Method m :
       {Method::Acyclic, Method::Acceptable, Method::UpAcceptable,
        Method::WeakUpAcceptable, Method::LowAcceptable,
        Method::NewUpAcceptable, Method::Incremental})
    if (method_str(m) == s) return m;
  return std::nullopt;
}

std::size_t parse_argref(Lexer& lx) {
  Token t = lx.expect(Token::Kind::Name);
  if (t.text.size() > 3 && t.text.rfind("arg", 0) == 0 &&
      std::all_of(t.text.begin() + 3, t.text.end(),
                  [](char c) { return c >= '0' && c <= '9'; })) {
    std::size_t i = std::stoul(t.text.substr(3));
    if (i > 0) return i;
  }
  throw ParseError("expected argument reference like arg1, got '" + t.text +
                       "'",
                   t.line, t.col);
}

Rel parse_rel(Lexer& lx) {
  Token name = lx.expect(Token::Kind::Name);
  lx.expect(Token::Kind::Punct, "/");
  Token n = lx.expect(Token::Kind::Int);
  return Rel{name.text, std::stoul(n.text)};
}

std::vector<Rel> parse_rel_list(Lexer& lx) {
  std::vector<Rel> rels{parse_rel(lx)};
  while (lx.at(Token::Kind::Punct, ",")) {
    lx.next();
    rels.push_back(parse_rel(lx));
  }
  return rels;
}

LevelExpr parse_level_expr(Lexer& lx);

LevelExpr parse_level_primary(Lexer& lx) {
  if (lx.at(Token::Kind::Punct, "(")) {
    lx.next();
    LevelExpr e = parse_level_expr(lx);
    lx.expect(Token::Kind::Punct, ")");
    return e;
  }
  if (lx.at(Token::Kind::Int))
    return LevelExpr::nat(std::stol(lx.next().text));
  Token t = lx.expect(Token::Kind::Name);
  if (t.text == "len") {
    lx.expect(Token::Kind::Punct, "(");
    std::size_t a = parse_argref(lx);
    lx.expect(Token::Kind::Punct, ")");
    return LevelExpr::len(a);
  }
  if (t.text == "set_count") {
    lx.expect(Token::Kind::Punct, "(");
    std::size_t a = parse_argref(lx);
    lx.expect(Token::Kind::Punct, ",");
    lx.expect(Token::Kind::Punct, "@");
    Token s = lx.expect(Token::Kind::Name);
    lx.expect(Token::Kind::Punct, ")");
    return LevelExpr::set_count(a, s.text);
  }
  if (t.text == "pair_count") {
    lx.expect(Token::Kind::Punct, "(");
    std::size_t a = parse_argref(lx);
    lx.expect(Token::Kind::Punct, ",");
    std::size_t b = parse_argref(lx);
    lx.expect(Token::Kind::Punct, ")");
    return LevelExpr::pair_count(a, b);
  }
  if (t.text == "cases") {
    lx.expect(Token::Kind::Punct, "(");
    LevelExpr e;
    e.kind = LevelExpr::Kind::Cases;
    e.arg = parse_argref(lx);
    lx.expect(Token::Kind::Punct, ")");
    lx.expect(Token::Kind::Punct, "{");
    while (true) {
      if (lx.at(Token::Kind::Name, "default")) {
        lx.next();
        lx.expect(Token::Kind::Punct, "->");
        e.children.push_back(parse_level_expr(lx));
        if (lx.at(Token::Kind::Punct, ";")) lx.next();
        lx.expect(Token::Kind::Punct, "}");
        return e;
      }
      e.case_functors.push_back(parse_rel(lx));
      lx.expect(Token::Kind::Punct, "->");
      e.children.push_back(parse_level_expr(lx));
      lx.expect(Token::Kind::Punct, ";");
    }
  }
  throw ParseError("expected level expression, got '" + t.text + "'", t.line,
                   t.col);
}

LevelExpr parse_level_term(Lexer& lx) {
  if (lx.at(Token::Kind::Int) &&
      lx.peek2().kind == Token::Kind::Punct && lx.peek2().text == "*") {
    long n = std::stol(lx.next().text);
    lx.next();  // '*'
    return LevelExpr::mul(n, parse_level_primary(lx));
  }
  return parse_level_primary(lx);
}

LevelExpr parse_level_expr(Lexer& lx) {
  LevelExpr e = parse_level_term(lx);
  while (lx.at(Token::Kind::Punct, "+") || lx.at(Token::Kind::Punct, "-")) {
    bool add = lx.next().text == "+";
    LevelExpr rhs = parse_level_term(lx);
    e = add ? LevelExpr::add(std::move(e), std::move(rhs))
            : LevelExpr::sub(std::move(e), std::move(rhs));
  }
  return e;
}

Cond parse_cond(Lexer& lx);

std::vector<Cond> parse_cond_list(Lexer& lx) {
  std::vector<Cond> cs{parse_cond(lx)};
  while (lx.at(Token::Kind::Punct, ",")) {
    lx.next();
    cs.push_back(parse_cond(lx));
  }
  return cs;
}

Cond parse_cond(Lexer& lx) {
  if (lx.at(Token::Kind::Name)) {
    const std::string& kw = lx.peek().text;
    if (kw == "all") {
      lx.next();
      return Cond::all();
    }
    if (kw == "none") {
      lx.next();
      return Cond::none();
    }
    if (kw == "elem" || kw == "same") {
      bool is_elem = kw == "elem";
      lx.next();
      lx.expect(Token::Kind::Punct, "(");
      std::size_t a = parse_argref(lx);
      lx.expect(Token::Kind::Punct, ",");
      std::size_t b = parse_argref(lx);
      lx.expect(Token::Kind::Punct, ")");
      return is_elem ? Cond::elem(a, b) : Cond::same(a, b);
    }
    if (kw == "in_set") {
      lx.next();
      lx.expect(Token::Kind::Punct, "(");
      std::size_t a = parse_argref(lx);
      lx.expect(Token::Kind::Punct, ",");
      lx.expect(Token::Kind::Punct, "@");
      Token s = lx.expect(Token::Kind::Name);
      lx.expect(Token::Kind::Punct, ")");
      return Cond::in_set(a, s.text);
    }
    if (kw == "is_list") {
      lx.next();
      lx.expect(Token::Kind::Punct, "(");
      std::size_t a = parse_argref(lx);
      lx.expect(Token::Kind::Punct, ")");
      return Cond::is_list(a);
    }
    if (kw == "and" || kw == "or") {
      bool is_and = kw == "and";
      lx.next();
      lx.expect(Token::Kind::Punct, "(");
      std::vector<Cond> cs = parse_cond_list(lx);
      lx.expect(Token::Kind::Punct, ")");
      return is_and ? Cond::conj(std::move(cs)) : Cond::disj(std::move(cs));
    }
    if (kw == "not") {
      lx.next();
      lx.expect(Token::Kind::Punct, "(");
      Cond c = parse_cond(lx);
      lx.expect(Token::Kind::Punct, ")");
      return Cond::negate(std::move(c));
    }
  }
  LevelExpr lhs = parse_level_expr(lx);
  Cond::Op op = Cond::Op::Eq;
  if (lx.at(Token::Kind::Punct, "=")) op = Cond::Op::Eq;
  else if (lx.at(Token::Kind::Punct, "<=")) op = Cond::Op::Le;
  else if (lx.at(Token::Kind::Punct, "<")) op = Cond::Op::Lt;
  else if (lx.at(Token::Kind::Punct, ">=")) op = Cond::Op::Ge;
  else if (lx.at(Token::Kind::Punct, ">")) op = Cond::Op::Gt;
  else lx.fail("expected comparison operator");
  lx.next();
  LevelExpr rhs = parse_level_expr(lx);
  return Cond::compare(std::move(lhs), op, std::move(rhs));
}

PartDecl& named_part(Annotation& ann, const Token& name) {
  for (PartDecl& p : ann.parts)
    if (p.name == name.text) return p;
  throw ParseError("unknown part '" + name.text + "'", name.line, name.col);
}

}  // namespace

Annotation parse_annotation(std::string_view src) {
  Lexer lx(src);
  Annotation ann;
  bool saw_method = false, saw_depth = false, saw_cap = false;

  while (!lx.at(Token::Kind::End)) {
    Token kw = lx.expect(Token::Kind::Name);
    if (kw.text == "method") {
      lx.expect(Token::Kind::Punct, ":");
      Token m = lx.expect(Token::Kind::Name);
      auto parsed = method_from(m.text);
      if (!parsed)
        throw ParseError("unknown method '" + m.text + "'", m.line, m.col);
      if (saw_method)
        throw ParseError("duplicate method record", kw.line, kw.col);
      ann.method = *parsed;
      saw_method = true;
    } else if (kw.text == "universe_depth") {
      lx.expect(Token::Kind::Punct, ":");
      Token n = lx.expect(Token::Kind::Int);
      if (saw_depth)
        throw ParseError("duplicate universe_depth record", kw.line, kw.col);
      ann.universe_depth = std::stoi(n.text);
      saw_depth = true;
    } else if (kw.text == "universe_cap") {
      lx.expect(Token::Kind::Punct, ":");
      Token n = lx.expect(Token::Kind::Int);
      if (saw_cap)
        throw ParseError("duplicate universe_cap record", kw.line, kw.col);
      ann.universe_cap = std::stoul(n.text);
      saw_cap = true;
    } else if (kw.text == "set") {
      Token name = lx.expect(Token::Kind::Name);
      if (ann.sets.count(name.text))
        throw ParseError("duplicate set '" + name.text + "'", name.line,
                         name.col);
      lx.expect(Token::Kind::Punct, "=");
      lx.expect(Token::Kind::Punct, "{");
      std::vector<Term> members;
      while (!lx.at(Token::Kind::Punct, "}")) {
        Token at = lx.peek();
        Term t = parse_term(lx);
        if (!t.ground())
          throw ParseError("set element must be ground", at.line, at.col);
        members.push_back(t);
        if (lx.at(Token::Kind::Punct, ";")) lx.next();
        else break;
      }
      lx.expect(Token::Kind::Punct, "}");
      ann.sets.emplace(name.text, std::move(members));
    } else if (kw.text == "part") {
      Token name = lx.expect(Token::Kind::Name);
      if (ann.part(name.text))
        throw ParseError("duplicate part '" + name.text + "'", name.line,
                         name.col);
      lx.expect(Token::Kind::Punct, ":");
      PartDecl part;
      part.name = name.text;
      Token sel = lx.expect(Token::Kind::Name);
      if (sel.text == "clauses") {
        while (true) {
          int lo = std::stoi(lx.expect(Token::Kind::Int).text);
          int hi = lo;
          if (lx.at(Token::Kind::Punct, "-")) {
            lx.next();
            hi = std::stoi(lx.expect(Token::Kind::Int).text);
          }
          if (hi < lo)
            throw ParseError("empty clause range", kw.line, kw.col);
          for (int i = lo; i <= hi; ++i) part.clause_ids.push_back(i);
          if (!lx.at(Token::Kind::Punct, ",")) break;
          lx.next();
        }
      } else if (sel.text == "relations") {
        part.by_relations = true;
        part.relations = parse_rel_list(lx);
      } else {
        throw ParseError("expected 'clauses' or 'relations'", sel.line,
                         sel.col);
      }
      ann.parts.push_back(std::move(part));
    } else if (kw.text == "mode") {
      Token name = lx.expect(Token::Kind::Name);
      lx.expect(Token::Kind::Punct, ":");
      Token v = lx.expect(Token::Kind::Name);
      if (v.text != "acyclic" && v.text != "acceptable")
        throw ParseError("mode must be acyclic or acceptable", v.line, v.col);
      named_part(ann, name).mode = v.text;
    } else if (kw.text == "boundary") {
      Token name = lx.expect(Token::Kind::Name);
      lx.expect(Token::Kind::Punct, ":");
      Token v = lx.expect(Token::Kind::Name);
      PartDecl& part = named_part(ann, name);
      if (v.text == "extends") {
        part.boundary = "extends";
      } else if (v.text == "weakly_extends") {
        part.boundary = "weakly_extends";
        part.boundary_set = parse_rel_list(lx);
      } else {
        throw ParseError("boundary must be extends or weakly_extends", v.line,
                         v.col);
      }
    } else if (kw.text == "via") {
      Token name = lx.expect(Token::Kind::Name);
      lx.expect(Token::Kind::Punct, ":");
      Token v = lx.expect(Token::Kind::Name);
      if (v.text != "a" && v.text != "b")
        throw ParseError("via must be a or b", v.line, v.col);
      named_part(ann, name).via = v.text;
    } else if (kw.text == "weak_set") {
      lx.expect(Token::Kind::Punct, ":");
      ann.weak_set = parse_rel_list(lx);
    } else if (kw.text == "level" || kw.text == "model") {
      bool is_level = kw.text == "level";
      std::string scope;
      if (lx.at(Token::Kind::Name) && lx.peek2().kind == Token::Kind::Punct &&
          lx.peek2().text == ":") {
        Token name = lx.next();
        named_part(ann, name);  // must exist
        scope = name.text;
        lx.next();  // ':'
      }
      Token rt = lx.peek();
      Rel rel = parse_rel(lx);
      lx.expect(Token::Kind::Punct, "=");
      if (is_level) {
        auto& exprs =
            scope.empty() ? ann.level.exprs : ann.part_levels[scope].exprs;
        if (exprs.count(rel))
          throw ParseError("duplicate level for " + rel.str(), rt.line,
                           rt.col);
        exprs.emplace(rel, parse_level_expr(lx));
      } else {
        auto& conds =
            scope.empty() ? ann.model.conds : ann.part_models[scope].conds;
        if (conds.count(rel))
          throw ParseError("duplicate model for " + rel.str(), rt.line,
                           rt.col);
        conds.emplace(rel, parse_cond(lx));
      }
    } else {
      throw ParseError("unknown record '" + kw.text + "'", kw.line, kw.col);
    }
  }
  if (!saw_method) lx.fail("annotation has no method record");

  ann.level.sets = ann.sets;
  ann.model.sets = ann.sets;
  for (auto& [_, lm] : ann.part_levels) lm.sets = ann.sets;
  for (auto& [_, im] : ann.part_models) im.sets = ann.sets;
  return ann;
}

std::vector<int> resolve_clause_ids(const PartDecl& part, const Program& p) {
  std::vector<int> ids;
  if (part.by_relations) {
    std::set<Rel> rels(part.relations.begin(), part.relations.end());
    for (const Clause& c : p.clauses)
      if (rels.count(c.head.rel_id())) ids.push_back(c.id);
  } else {
    std::set<int> seen;
    for (int id : part.clause_ids) {
      if (!p.clause_by_id(id))
        throw AnnotationError("part '" + part.name +
                              "' references unknown clause id " +
                              std::to_string(id));
      if (seen.insert(id).second) ids.push_back(id);
    }
    std::sort(ids.begin(), ids.end());
  }
  return ids;
}

}  // namespace glp
