#include "smc/formula.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <optional>

#include "parse_detail.hpp"
#include "smc/error.hpp"

namespace smc {

std::string_view comparison_symbol(Comparison c) {
  switch (c) {
    case Comparison::Less: return "<";
    case Comparison::LessEqual: return "<=";
    case Comparison::GreaterEqual: return ">=";
    case Comparison::Greater: return ">";
    case Comparison::Equal: return "==";
    case Comparison::NotEqual: return "!=";
  }
  return "?";
}

bool compare(double lhs, Comparison c, double rhs) {
  switch (c) {
    case Comparison::Less: return lhs < rhs;
    case Comparison::LessEqual: return lhs <= rhs;
    case Comparison::GreaterEqual: return lhs >= rhs;
    case Comparison::Greater: return lhs > rhs;
    case Comparison::Equal: return lhs == rhs;
    case Comparison::NotEqual: return lhs != rhs;
  }
  return false;
}

struct Formula::Node {
  Kind kind;
  Interval interval;
  Comparison comparison = Comparison::Equal;
  std::vector<Expression> sides;
  std::vector<Formula> children;
};

namespace {

template <typename... F>
std::vector<Formula> make_children(F&&... f) {
  std::vector<Formula> out;
  (out.push_back(std::forward<F>(f)), ...);
  return out;
}

}  // namespace

Formula Formula::atom(Expression lhs, Comparison op, Expression rhs) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Atom;
  n->comparison = op;
  n->sides = {std::move(lhs), std::move(rhs)};
  return Formula(std::move(n));
}

Formula Formula::truth() {
  return atom(Expression::literal(0.0), Comparison::LessEqual, Expression::literal(0.0));
}

Formula Formula::negation(Formula operand) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Not;
  n->children = make_children(std::move(operand));
  return Formula(std::move(n));
}

Formula Formula::conjunction(Formula lhs, Formula rhs) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::And;
  n->children = make_children(std::move(lhs), std::move(rhs));
  return Formula(std::move(n));
}

Formula Formula::disjunction(Formula lhs, Formula rhs) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Or;
  n->children = make_children(std::move(lhs), std::move(rhs));
  return Formula(std::move(n));
}

Formula Formula::next(Interval interval, Formula operand) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Next;
  n->interval = interval;
  n->children = make_children(std::move(operand));
  return Formula(std::move(n));
}

Formula Formula::until(Interval interval, Formula hold, Formula goal) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Until;
  n->interval = interval;
  n->children = make_children(std::move(hold), std::move(goal));
  return Formula(std::move(n));
}

Formula Formula::finally(Interval interval, Formula operand) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Finally;
  n->interval = interval;
  n->children = make_children(std::move(operand));
  return Formula(std::move(n));
}

Formula Formula::globally(Interval interval, Formula operand) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Globally;
  n->interval = interval;
  n->children = make_children(std::move(operand));
  return Formula(std::move(n));
}

Formula::Kind Formula::kind() const { return node_->kind; }

bool Formula::is_temporal() const {
  switch (kind()) {
    case Kind::Next:
    case Kind::Until:
    case Kind::Finally:
    case Kind::Globally:
      return true;
    default:
      return false;
  }
}

const Expression& Formula::lhs() const { return node_->sides.at(0); }
const Expression& Formula::rhs() const { return node_->sides.at(1); }
Comparison Formula::comparison() const { return node_->comparison; }
const Interval& Formula::interval() const { return node_->interval; }
std::span<const Formula> Formula::children() const { return node_->children; }

bool Formula::is_desugared() const {
  if (kind() == Kind::Finally || kind() == Kind::Globally) return false;
  return std::all_of(children().begin(), children().end(),
                     [](const Formula& c) { return c.is_desugared(); });
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  if (a.kind() == Formula::Kind::Atom) {
    return a.comparison() == b.comparison() && a.lhs() == b.lhs() && a.rhs() == b.rhs();
  }
  if (a.is_temporal() && !(a.interval() == b.interval())) return false;
  auto ca = a.children();
  auto cb = b.children();
  return std::equal(ca.begin(), ca.end(), cb.begin(), cb.end());
}

namespace {

std::string format_number(double v) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

std::string format_interval(const Interval& i) {
  if (i.is_unbounded()) return "";
  if (std::isinf(i.upper)) return "[" + format_number(i.lower) + ",inf)";
  return "[" + format_number(i.lower) + "," + format_number(i.upper) + "]";
}

void print(const Formula& f, std::string& out);

void print_operand(const Formula& f, std::string& out) {
  out += '(';
  print(f, out);
  out += ')';
}

void print(const Formula& f, std::string& out) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      out += f.lhs().to_string();
      out += ' ';
      out += comparison_symbol(f.comparison());
      out += ' ';
      out += f.rhs().to_string();
      break;
    case Formula::Kind::Not:
      out += '!';
      print_operand(f.child(0), out);
      break;
    case Formula::Kind::And:
    case Formula::Kind::Or:
      print_operand(f.child(0), out);
      out += f.kind() == Formula::Kind::And ? " & " : " | ";
      print_operand(f.child(1), out);
      break;
    case Formula::Kind::Until:
      print_operand(f.child(0), out);
      out += " U";
      out += format_interval(f.interval());
      out += ' ';
      print_operand(f.child(1), out);
      break;
    case Formula::Kind::Next:
    case Formula::Kind::Finally:
    case Formula::Kind::Globally:
      out += f.kind() == Formula::Kind::Next ? 'X' : f.kind() == Formula::Kind::Finally ? 'F' : 'G';
      out += format_interval(f.interval());
      out += ' ';
      print_operand(f.child(0), out);
      break;
  }
}

using detail::Token;
using detail::TokenCursor;
using detail::TokenType;

bool is_keyword(const Token& t, std::string_view word) {
  return t.type == TokenType::Identifier && t.text == word;
}

std::optional<Comparison> comparison_of(TokenType t) {
  switch (t) {
    case TokenType::Less: return Comparison::Less;
    case TokenType::LessEqual: return Comparison::LessEqual;
    case TokenType::GreaterEqual: return Comparison::GreaterEqual;
    case TokenType::Greater: return Comparison::Greater;
    case TokenType::EqualEqual: return Comparison::Equal;
    case TokenType::NotEqual: return Comparison::NotEqual;
    default: return std::nullopt;
  }
}

class FormulaParser {
 public:
  FormulaParser(TokenCursor& cursor, const SymbolTable& symbols) : cursor_(cursor), symbols_(symbols) {}

  Formula parse_or() {
    Formula lhs = parse_until();
    while (cursor_.accept(TokenType::Pipe)) lhs = Formula::disjunction(std::move(lhs), parse_until());
    return lhs;
  }

 private:
  Formula parse_until() {
    Formula lhs = parse_and();
    if (is_keyword(cursor_.peek(), "U")) {
      cursor_.advance();
      Interval interval = parse_optional_interval();
      return Formula::until(interval, std::move(lhs), parse_until());
    }
    return lhs;
  }

  Formula parse_and() {
    Formula lhs = parse_unary();
    while (cursor_.accept(TokenType::Amp)) lhs = Formula::conjunction(std::move(lhs), parse_unary());
    return lhs;
  }

  Formula parse_unary() {
    const Token& t = cursor_.peek();
    if (t.type == TokenType::Bang) {
      cursor_.advance();
      return Formula::negation(parse_unary());
    }
    if (is_keyword(t, "X") || is_keyword(t, "F") || is_keyword(t, "G")) {
      const char op = t.text[0];
      cursor_.advance();
      Interval interval = parse_optional_interval();
      Formula operand = parse_unary();
      if (op == 'X') return Formula::next(interval, std::move(operand));
      if (op == 'F') return Formula::finally(interval, std::move(operand));
      return Formula::globally(interval, std::move(operand));
    }
    if (is_keyword(t, "U")) throw ParseError("'U' needs a left operand", t.position);
    return parse_primary();
  }

  Formula parse_primary() {
    if (cursor_.peek().type != TokenType::LParen) return parse_atom();
    // '(' opens either an arithmetic group inside an atom, e.g. "(x + 1) > 2",
    // or a nested formula. Try the atom reading first.
    const std::size_t mark = cursor_.mark();
    std::optional<ParseError> atom_error;
    try {
      return parse_atom();
    } catch (const ParseError& e) {
      atom_error = e;
    }
    cursor_.reset(mark);
    try {
      cursor_.advance();
      Formula inner = parse_or();
      cursor_.expect(TokenType::RParen, "to close parenthesis");
      return inner;
    } catch (const ParseError& e) {
      if (atom_error->position() > e.position()) throw *atom_error;
      throw;
    }
  }

  Formula parse_atom() {
    Expression lhs = detail::parse_sum(cursor_, symbols_);
    auto op = comparison_of(cursor_.peek().type);
    if (!op) {
      throw ParseError("expected a comparison operator, found " +
                           std::string(detail::describe(cursor_.peek().type)),
                       cursor_.peek().position);
    }
    cursor_.advance();
    Expression rhs = detail::parse_sum(cursor_, symbols_);
    Formula atom = Formula::atom(lhs, *op, rhs);
    if (auto op2 = comparison_of(cursor_.peek().type)) {
      // a <= e <= b  ==  (a <= e) & (e <= b)
      cursor_.advance();
      Expression third = detail::parse_sum(cursor_, symbols_);
      if (comparison_of(cursor_.peek().type)) {
        throw ParseError("comparison chains have at most two operators", cursor_.peek().position);
      }
      return Formula::conjunction(std::move(atom), Formula::atom(rhs, *op2, third));
    }
    return atom;
  }

  double parse_bound_number(std::string_view what) {
    const Token& t = cursor_.peek();
    if (t.type != TokenType::Number) {
      throw ParseError("expected " + std::string(what) + " of the interval", t.position);
    }
    cursor_.advance();
    return t.number;
  }

  Interval parse_optional_interval() {
    if (cursor_.peek().type != TokenType::LBracket) return Interval{};
    const std::size_t open = cursor_.advance().position;
    Interval interval;
    interval.lower = parse_bound_number("lower bound");
    cursor_.expect(TokenType::Comma, "between interval bounds");
    if (is_keyword(cursor_.peek(), "inf")) {
      cursor_.advance();
      interval.upper = std::numeric_limits<double>::infinity();
      if (!cursor_.accept(TokenType::RParen)) cursor_.expect(TokenType::RBracket, "to close interval");
    } else {
      interval.upper = parse_bound_number("upper bound");
      cursor_.expect(TokenType::RBracket, "to close interval (finite bounds are closed)");
    }
    if (interval.lower < 0.0) throw ParseError("interval lower bound is negative", open);
    if (interval.lower > interval.upper) throw ParseError("interval lower bound exceeds upper bound", open);
    return interval;
  }

  TokenCursor& cursor_;
  const SymbolTable& symbols_;
};

}  // namespace

std::string Formula::to_string() const {
  std::string out;
  print(*this, out);
  return out;
}

Formula parse_formula(std::string_view text, const SymbolTable& symbols) {
  TokenCursor cursor(detail::tokenize(text));
  if (cursor.at_end()) throw ParseError("empty formula", 0);
  FormulaParser parser(cursor, symbols);
  Formula f = parser.parse_or();
  if (!cursor.at_end()) {
    throw ParseError("unexpected " + std::string(detail::describe(cursor.peek().type)) +
                         (cursor.peek().text.empty() ? "" : " '" + cursor.peek().text + "'"),
                     cursor.peek().position);
  }
  return f;
}

Formula desugar_formula(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      return f;
    case Formula::Kind::Not:
      return Formula::negation(desugar_formula(f.child(0)));
    case Formula::Kind::And:
      return Formula::conjunction(desugar_formula(f.child(0)), desugar_formula(f.child(1)));
    case Formula::Kind::Or:
      return Formula::disjunction(desugar_formula(f.child(0)), desugar_formula(f.child(1)));
    case Formula::Kind::Next:
      return Formula::next(f.interval(), desugar_formula(f.child(0)));
    case Formula::Kind::Until:
      return Formula::until(f.interval(), desugar_formula(f.child(0)), desugar_formula(f.child(1)));
    case Formula::Kind::Finally:
      return Formula::until(f.interval(), Formula::truth(), desugar_formula(f.child(0)));
    case Formula::Kind::Globally:
      return Formula::negation(Formula::until(f.interval(), Formula::truth(),
                                              Formula::negation(desugar_formula(f.child(0)))));
  }
  return f;
}

bool evaluate_atom(const Formula& atom, const State& state, std::span<const double> parameters) {
  const double lhs = evaluate_expression(atom.lhs(), state.counts, parameters);
  const double rhs = evaluate_expression(atom.rhs(), state.counts, parameters);
  return compare(lhs, atom.comparison(), rhs);
}

double temporal_horizon(const Formula& f) {
  double inner = 0.0;
  for (const auto& c : f.children()) inner = std::max(inner, temporal_horizon(c));
  return f.is_temporal() ? f.interval().upper + inner : inner;
}

}  // namespace smc
