// SPDX-License-Identifier: MIT
#include "glp/parser.hpp"

#include <cctype>
#include <map>

namespace glp {

namespace {

bool name_start(char c) { return std::islower(static_cast<unsigned char>(c)); }
bool var_start(char c) {
  return std::isupper(static_cast<unsigned char>(c)) || c == '_';
}
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

}  // namespace

Lexer::Lexer(std::string_view src) {
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src[i + k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    i += n;
  };
  while (i < src.size()) {
    char c = src[i];
    if (c == '%') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    Token t;
    t.line = line;
    t.col = col;
    if (name_start(c) || var_start(c)) {
      std::size_t j = i;
      while (j < src.size() && ident_char(src[j])) ++j;
      t.kind = name_start(c) ? Token::Kind::Name : Token::Kind::Var;
      t.text = std::string(src.substr(i, j - i));
      advance(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j])))
        ++j;
      t.kind = Token::Kind::Int;
      t.text = std::string(src.substr(i, j - i));
      advance(j - i);
    } else {
      auto two = src.substr(i, 2);
      t.kind = Token::Kind::Punct;
      if (two == ":-" || two == "\\+" || two == "\\=" || two == "->" ||
          two == "<=" || two == ">=" || two == "?-") {
        t.text = std::string(two);
        advance(2);
      } else if (std::string_view("()[]{},|.;*+-<>=@/:").find(c) !=
                 std::string_view::npos) {
        t.text = std::string(1, c);
        advance(1);
      } else {
        throw ParseError("unexpected character '" + std::string(1, c) + "'",
                         line, col);
      }
    }
    tokens_.push_back(std::move(t));
  }
  Token end;
  end.kind = Token::Kind::End;
  end.line = line;
  end.col = col;
  tokens_.push_back(end);
}

const Token& Lexer::peek2() const {
  return tokens_[std::min(pos_ + 1, tokens_.size() - 1)];
}

Token Lexer::next() {
  Token t = tokens_[pos_];
  if (pos_ + 1 < tokens_.size()) ++pos_;
  return t;
}

bool Lexer::at(Token::Kind k, std::string_view text) const {
  const Token& t = peek();
  return t.kind == k && (text.empty() || t.text == text);
}

Token Lexer::expect(Token::Kind k, std::string_view text) {
  if (!at(k, text)) {
    std::string what = text.empty() ? "token" : "'" + std::string(text) + "'";
    fail("expected " + what + ", got '" + peek().text + "'");
  }
  return next();
}

void Lexer::fail(const std::string& msg) const {
  throw ParseError(msg, peek().line, peek().col);
}

namespace {

Term parse_list(Lexer& lx) {
  lx.expect(Token::Kind::Punct, "[");
  if (lx.at(Token::Kind::Punct, "]")) {
    lx.next();
    return Term::nil();
  }
  TermVec items;
  items.push_back(parse_term(lx));
  while (lx.at(Token::Kind::Punct, ",")) {
    lx.next();
    items.push_back(parse_term(lx));
  }
  Term tail = Term::nil();
  if (lx.at(Token::Kind::Punct, "|")) {
    lx.next();
    tail = parse_term(lx);
  }
  lx.expect(Token::Kind::Punct, "]");
  return Term::list(items, tail);
}

}  // namespace

Term parse_term(Lexer& lx) {
  const Token& t = lx.peek();
  switch (t.kind) {
    case Token::Kind::Var:
      return Term::variable(lx.next().text);
    case Token::Kind::Int:
      return Term::constant(lx.next().text);
    case Token::Kind::Name: {
      std::string functor = lx.next().text;
      if (!lx.at(Token::Kind::Punct, "(")) return Term::constant(functor);
      lx.next();
      TermVec args;
      args.push_back(parse_term(lx));
      while (lx.at(Token::Kind::Punct, ",")) {
        lx.next();
        args.push_back(parse_term(lx));
      }
      lx.expect(Token::Kind::Punct, ")");
      return Term::compound(std::move(functor), std::move(args));
    }
    case Token::Kind::Punct:
      if (t.text == "[") return parse_list(lx);
      if (t.text == "(") {
        lx.next();
        TermVec items;
        items.push_back(parse_term(lx));
        while (lx.at(Token::Kind::Punct, ",")) {
          lx.next();
          items.push_back(parse_term(lx));
        }
        lx.expect(Token::Kind::Punct, ")");
        return Term::tuple(items);
      }
      break;
    default:
      break;
  }
  lx.fail("expected term, got '" + t.text + "'");
}

Literal parse_literal(Lexer& lx) {
  if (lx.at(Token::Kind::Punct, "\\+")) {
    lx.next();
    Term a = parse_term(lx);
    if (a.is_variable())
      lx.fail("negated literal must be an atom, not a variable");
    return Literal::neg(Atom::from_term(a));
  }
  if (lx.at(Token::Kind::Name, "forall") &&
      lx.peek2().kind == Token::Kind::Punct && lx.peek2().text == "(") {
    lx.next();
    lx.next();
    std::vector<std::string> univ;
    lx.expect(Token::Kind::Punct, "[");
    univ.push_back(lx.expect(Token::Kind::Var).text);
    while (lx.at(Token::Kind::Punct, ",")) {
      lx.next();
      univ.push_back(lx.expect(Token::Kind::Var).text);
    }
    lx.expect(Token::Kind::Punct, "]");
    lx.expect(Token::Kind::Punct, ",");
    Term l = parse_term(lx);
    lx.expect(Token::Kind::Punct, "\\=");
    Term r = parse_term(lx);
    lx.expect(Token::Kind::Punct, ")");
    return Literal::ineq(std::move(l), std::move(r), std::move(univ));
  }
  Term first = parse_term(lx);
  if (lx.at(Token::Kind::Punct, "=")) {
    lx.next();
    return Literal::eq(std::move(first), parse_term(lx));
  }
  if (lx.at(Token::Kind::Punct, "\\=")) {
    lx.next();
    return Literal::ineq(std::move(first), parse_term(lx));
  }
  if (first.is_variable()) lx.fail("a variable is not a literal");
  if (first.is_cons() || first.is_nil())
    lx.fail("a list is not a literal");
  return Literal::pos(Atom::from_term(first));
}

namespace {

std::vector<Literal> parse_body(Lexer& lx) {
  std::vector<Literal> body;
  body.push_back(parse_literal(lx));
  while (lx.at(Token::Kind::Punct, ",")) {
    lx.next();
    body.push_back(parse_literal(lx));
  }
  return body;
}

}  // namespace

Program parse_program(std::string_view src) {
  Lexer lx(src);
  Program p;
  std::map<std::string, int> arity_of;
  int id = 1;
  while (!lx.at(Token::Kind::End)) {
    int line = lx.peek().line;
    int col = lx.peek().col;
    Clause c;
    c.id = id++;
    Term head = parse_term(lx);
    if (head.is_variable() || head.is_cons() || head.is_nil() ||
        head.name() == ",")
      lx.fail("clause head must be an atom");
    c.head = Atom::from_term(head);
    if (lx.at(Token::Kind::Punct, ":-")) {
      lx.next();
      c.body = parse_body(lx);
    }
    lx.expect(Token::Kind::Punct, ".");
    auto note = [&](const Atom& a) {
      int arity = static_cast<int>(a.args.size());
      auto [it, inserted] = arity_of.emplace(a.rel, arity);
      if (!inserted && it->second != arity)
        throw ParseError("relation " + a.rel + " used with arity " +
                             std::to_string(it->second) + " and " +
                             std::to_string(arity),
                         line, col);
    };
    note(c.head);
    for (const Literal& l : c.body)
      if (l.is_atomlit()) note(l.atom);
    p.clauses.push_back(std::move(c));
  }
  return p;
}

std::vector<Literal> parse_query(std::string_view src) {
  Lexer lx(src);
  if (lx.at(Token::Kind::Punct, "?-")) lx.next();
  std::vector<Literal> q;
  if (!lx.at(Token::Kind::Punct, ".") && !lx.at(Token::Kind::End))
    q = parse_body(lx);
  if (lx.at(Token::Kind::Punct, ".")) lx.next();
  lx.expect(Token::Kind::End);
  return q;
}

Term parse_term_string(std::string_view src) {
  Lexer lx(src);
  Term t = parse_term(lx);
  lx.expect(Token::Kind::End);
  return t;
}

}  // namespace glp
