// SPDX-License-Identifier: MIT
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "glp/program.hpp"
#include "glp/term.hpp"

namespace glp {

class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& msg, int line, int col)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(col) +
                           ": " + msg),
        line(line),
        col(col) {}
  int line;
  int col;
};

struct Token {
  enum class Kind { Name, Var, Int, Punct, End };
  Kind kind = Kind::End;
  std::string text;
  int line = 1;
  int col = 1;
};

// Shared tokenizer for program, query and annotation sources.
// Names are [a-z][A-Za-z0-9_]*, variables [A-Z_][A-Za-z0-9_]*, integers
// [0-9]+; '%' starts a line comment.
class Lexer {
public:
  explicit Lexer(std::string_view src);
  const Token& peek() const { return tokens_[pos_]; }
  const Token& peek2() const;
  Token next();
  bool at(Token::Kind k, std::string_view text = {}) const;
  Token expect(Token::Kind k, std::string_view text = {});
  [[noreturn]] void fail(const std::string& msg) const;

private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

// Clause ids are assigned 1..n in source order.
Program parse_program(std::string_view src);
std::vector<Literal> parse_query(std::string_view src);
Term parse_term_string(std::string_view src);

// Building blocks reused by the annotation parser.
Term parse_term(Lexer& lx);
Literal parse_literal(Lexer& lx);

}  // namespace glp
