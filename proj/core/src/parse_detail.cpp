#include "parse_detail.hpp"

#include <cctype>
#include <charconv>

#include "smc/error.hpp"

namespace smc::detail {

namespace {

bool is_identifier_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool is_identifier_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

Token lex_number(std::string_view text, std::size_t& i) {
  const std::size_t start = i;
  auto digits = [&] {
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
  };
  digits();
  if (i < text.size() && text[i] == '.') {
    ++i;
    digits();
  }
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    std::size_t j = i + 1;
    if (j < text.size() && (text[j] == '+' || text[j] == '-')) ++j;
    if (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) {
      i = j;
      digits();
    }
  }
  Token token{TokenType::Number, std::string(text.substr(start, i - start)), 0.0, start};
  const char* first = text.data() + start;
  const char* last = text.data() + i;
  auto [ptr, ec] = std::from_chars(first, last, token.number);
  if (ec != std::errc() || ptr != last) {
    throw ParseError("malformed number '" + token.text + "'", start);
  }
  return token;
}

}  // namespace

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  auto single = [&](TokenType type) {
    tokens.push_back({type, std::string(1, text[i]), 0.0, i});
    ++i;
  };
  auto pair_or = [&](char second, TokenType both, TokenType one) {
    if (i + 1 < text.size() && text[i + 1] == second) {
      tokens.push_back({both, std::string(text.substr(i, 2)), 0.0, i});
      i += 2;
    } else {
      single(one);
    }
  };

  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && i + 1 < text.size() && std::isdigit(static_cast<unsigned char>(text[i + 1])))) {
      tokens.push_back(lex_number(text, i));
      continue;
    }
    if (is_identifier_start(c)) {
      const std::size_t start = i;
      while (i < text.size() && is_identifier_char(text[i])) ++i;
      tokens.push_back({TokenType::Identifier, std::string(text.substr(start, i - start)), 0.0, start});
      continue;
    }
    switch (c) {
      case '(': single(TokenType::LParen); break;
      case ')': single(TokenType::RParen); break;
      case '[': single(TokenType::LBracket); break;
      case ']': single(TokenType::RBracket); break;
      case ',': single(TokenType::Comma); break;
      case '+': single(TokenType::Plus); break;
      case '-': single(TokenType::Minus); break;
      case '*': single(TokenType::Star); break;
      case '/': single(TokenType::Slash); break;
      case '&': single(TokenType::Amp); break;
      case '|': single(TokenType::Pipe); break;
      case '<': pair_or('=', TokenType::LessEqual, TokenType::Less); break;
      case '>': pair_or('=', TokenType::GreaterEqual, TokenType::Greater); break;
      case '!': pair_or('=', TokenType::NotEqual, TokenType::Bang); break;
      case '=':
        if (i + 1 < text.size() && text[i + 1] == '=') {
          tokens.push_back({TokenType::EqualEqual, "==", 0.0, i});
          i += 2;
        } else {
          throw ParseError("expected '==' (single '=' is not an operator)", i);
        }
        break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", i);
    }
  }
  tokens.push_back({TokenType::End, "", 0.0, text.size()});
  return tokens;
}

std::string_view describe(TokenType type) {
  switch (type) {
    case TokenType::Number: return "number";
    case TokenType::Identifier: return "identifier";
    case TokenType::LParen: return "'('";
    case TokenType::RParen: return "')'";
    case TokenType::LBracket: return "'['";
    case TokenType::RBracket: return "']'";
    case TokenType::Comma: return "','";
    case TokenType::Plus: return "'+'";
    case TokenType::Minus: return "'-'";
    case TokenType::Star: return "'*'";
    case TokenType::Slash: return "'/'";
    case TokenType::Less: return "'<'";
    case TokenType::LessEqual: return "'<='";
    case TokenType::Greater: return "'>'";
    case TokenType::GreaterEqual: return "'>='";
    case TokenType::EqualEqual: return "'=='";
    case TokenType::NotEqual: return "'!='";
    case TokenType::Bang: return "'!'";
    case TokenType::Amp: return "'&'";
    case TokenType::Pipe: return "'|'";
    case TokenType::End: return "end of input";
  }
  return "token";
}

const Token& TokenCursor::peek(std::size_t ahead) const {
  const std::size_t i = pos_ + ahead;
  return i < tokens_.size() ? tokens_[i] : tokens_.back();
}

const Token& TokenCursor::advance() {
  const Token& t = tokens_[pos_];
  if (pos_ + 1 < tokens_.size()) ++pos_;
  return t;
}

bool TokenCursor::accept(TokenType type) {
  if (peek().type != type) return false;
  advance();
  return true;
}

const Token& TokenCursor::expect(TokenType type, std::string_view context) {
  if (peek().type != type) {
    throw ParseError("expected " + std::string(describe(type)) + " " + std::string(context) +
                         ", found " + std::string(describe(peek().type)),
                     peek().position);
  }
  return advance();
}

namespace {

Expression parse_unary(TokenCursor& cursor, const SymbolTable& symbols);

Expression parse_primary(TokenCursor& cursor, const SymbolTable& symbols) {
  const Token& token = cursor.peek();
  switch (token.type) {
    case TokenType::Number:
      cursor.advance();
      return Expression::literal(token.number);
    case TokenType::LParen: {
      cursor.advance();
      Expression inner = parse_sum(cursor, symbols);
      cursor.expect(TokenType::RParen, "to close parenthesis");
      return inner;
    }
    case TokenType::Identifier: {
      const Token name = cursor.advance();
      if (cursor.peek().type == TokenType::LParen) {
        auto f = function_from_name(name.text);
        if (!f) throw ParseError("unknown function '" + name.text + "'", name.position);
        cursor.advance();
        std::vector<Expression> args;
        if (cursor.peek().type != TokenType::RParen) {
          args.push_back(parse_sum(cursor, symbols));
          while (cursor.accept(TokenType::Comma)) args.push_back(parse_sum(cursor, symbols));
        }
        cursor.expect(TokenType::RParen, "after function arguments");
        if (args.size() != arity(*f)) {
          throw ParseError("function '" + name.text + "' takes " + std::to_string(arity(*f)) +
                               " argument(s), got " + std::to_string(args.size()),
                           name.position);
        }
        return Expression::call(*f, std::move(args));
      }
      auto symbol = symbols.find(name.text);
      if (!symbol) throw UnknownIdentifierError(name.text, name.position);
      return Expression::variable(*symbol, name.text);
    }
    default:
      throw ParseError("expected a number, identifier or '(' but found " +
                           std::string(describe(token.type)),
                       token.position);
  }
}

Expression parse_unary(TokenCursor& cursor, const SymbolTable& symbols) {
  if (cursor.accept(TokenType::Minus)) return Expression::negate(parse_unary(cursor, symbols));
  return parse_primary(cursor, symbols);
}

Expression parse_product(TokenCursor& cursor, const SymbolTable& symbols) {
  Expression lhs = parse_unary(cursor, symbols);
  for (;;) {
    if (cursor.accept(TokenType::Star)) {
      lhs = Expression::binary(BinaryOp::Mul, std::move(lhs), parse_unary(cursor, symbols));
    } else if (cursor.accept(TokenType::Slash)) {
      lhs = Expression::binary(BinaryOp::Div, std::move(lhs), parse_unary(cursor, symbols));
    } else {
      return lhs;
    }
  }
}

}  // namespace

Expression parse_sum(TokenCursor& cursor, const SymbolTable& symbols) {
  Expression lhs = parse_product(cursor, symbols);
  for (;;) {
    if (cursor.accept(TokenType::Plus)) {
      lhs = Expression::binary(BinaryOp::Add, std::move(lhs), parse_product(cursor, symbols));
    } else if (cursor.accept(TokenType::Minus)) {
      lhs = Expression::binary(BinaryOp::Sub, std::move(lhs), parse_product(cursor, symbols));
    } else {
      return lhs;
    }
  }
}

}  // namespace smc::detail
