#pragma once

// Tokenizer and expression grammar shared by the expression and formula parsers.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "smc/expression.hpp"

namespace smc::detail {

enum class TokenType {
  Number,
  Identifier,
  LParen,
  RParen,
  LBracket,
  RBracket,
  Comma,
  Plus,
  Minus,
  Star,
  Slash,
  Less,
  LessEqual,
  Greater,
  GreaterEqual,
  EqualEqual,
  NotEqual,
  Bang,
  Amp,
  Pipe,
  End,
};

struct Token {
  TokenType type;
  std::string text;
  double number = 0.0;
  std::size_t position = 0;
};

std::vector<Token> tokenize(std::string_view text);

std::string_view describe(TokenType type);

/// Cursor over a token vector; the End token is always present.
class TokenCursor {
 public:
  explicit TokenCursor(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  const Token& peek(std::size_t ahead = 0) const;
  const Token& advance();
  bool accept(TokenType type);
  const Token& expect(TokenType type, std::string_view context);
  bool at_end() const { return peek().type == TokenType::End; }

  std::size_t mark() const { return pos_; }
  void reset(std::size_t mark) { pos_ = mark; }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

/// expr := term (('+'|'-') term)*
Expression parse_sum(TokenCursor& cursor, const SymbolTable& symbols);

}  // namespace smc::detail
