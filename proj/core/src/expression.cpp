#include "smc/expression.hpp"

#include <array>
#include <cassert>
#include <charconv>
#include <cmath>
#include <variant>

#include "parse_detail.hpp"
#include "smc/error.hpp"

namespace smc {

void SymbolTable::add_species(std::string name, std::size_t index) {
  if (species_names_.size() <= index) species_names_.resize(index + 1);
  species_names_[index] = name;
  by_name_.insert_or_assign(std::move(name), Symbol{SymbolKind::Species, index});
}

void SymbolTable::add_parameter(std::string name, std::size_t index) {
  if (parameter_names_.size() <= index) parameter_names_.resize(index + 1);
  parameter_names_[index] = name;
  by_name_.insert_or_assign(std::move(name), Symbol{SymbolKind::Parameter, index});
}

std::optional<Symbol> SymbolTable::find(std::string_view name) const {
  auto it = by_name_.find(std::string(name));
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

const std::string& SymbolTable::name_of(const Symbol& symbol) const {
  return symbol.kind == SymbolKind::Species ? species_names_.at(symbol.index)
                                            : parameter_names_.at(symbol.index);
}

namespace {

struct FunctionInfo {
  Function f;
  std::string_view name;
  std::size_t arity;
};

constexpr std::array<FunctionInfo, 9> kFunctions{{
    {Function::Pow, "pow", 2},
    {Function::Sqrt, "sqrt", 1},
    {Function::Exp, "exp", 1},
    {Function::Log, "log", 1},
    {Function::Abs, "abs", 1},
    {Function::Min, "min", 2},
    {Function::Max, "max", 2},
    {Function::Floor, "floor", 1},
    {Function::Ceil, "ceil", 1},
}};

const FunctionInfo& info(Function f) {
  for (const auto& i : kFunctions) {
    if (i.f == f) return i;
  }
  assert(false && "unhandled function");
  return kFunctions[0];
}

}  // namespace

std::size_t arity(Function f) { return info(f).arity; }
std::string_view function_name(Function f) { return info(f).name; }

std::optional<Function> function_from_name(std::string_view name) {
  for (const auto& i : kFunctions) {
    if (i.name == name) return i.f;
  }
  return std::nullopt;
}

struct Expression::Node {
  Kind kind;
  double value = 0.0;
  Symbol symbol{SymbolKind::Species, 0};
  std::string name;
  BinaryOp op = BinaryOp::Add;
  Function function = Function::Abs;
  std::vector<Expression> operands;
};

Expression Expression::literal(double value) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Literal;
  n->value = value;
  return Expression(std::move(n));
}

Expression Expression::variable(Symbol symbol, std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Variable;
  n->symbol = symbol;
  n->name = std::move(name);
  return Expression(std::move(n));
}

Expression Expression::binary(BinaryOp op, Expression lhs, Expression rhs) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Binary;
  n->op = op;
  n->operands = {std::move(lhs), std::move(rhs)};
  return Expression(std::move(n));
}

Expression Expression::negate(Expression operand) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Negate;
  n->operands = {std::move(operand)};
  return Expression(std::move(n));
}

Expression Expression::call(Function f, std::vector<Expression> args) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Call;
  n->function = f;
  n->operands = std::move(args);
  return Expression(std::move(n));
}

Expression::Kind Expression::kind() const { return node_->kind; }
double Expression::literal_value() const { return node_->value; }
const Symbol& Expression::symbol() const { return node_->symbol; }
const std::string& Expression::variable_name() const { return node_->name; }
BinaryOp Expression::binary_op() const { return node_->op; }
Function Expression::function() const { return node_->function; }
std::span<const Expression> Expression::operands() const { return node_->operands; }

bool operator==(const Expression& a, const Expression& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Expression::Kind::Literal:
      return a.literal_value() == b.literal_value();
    case Expression::Kind::Variable:
      return a.symbol() == b.symbol();
    case Expression::Kind::Binary:
      if (a.binary_op() != b.binary_op()) return false;
      break;
    case Expression::Kind::Call:
      if (a.function() != b.function()) return false;
      break;
    case Expression::Kind::Negate:
      break;
  }
  auto lhs = a.operands();
  auto rhs = b.operands();
  if (lhs.size() != rhs.size()) return false;
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    if (!(lhs[i] == rhs[i])) return false;
  }
  return true;
}

namespace {

int precedence(const Expression& e) {
  switch (e.kind()) {
    case Expression::Kind::Binary:
      return (e.binary_op() == BinaryOp::Add || e.binary_op() == BinaryOp::Sub) ? 1 : 2;
    case Expression::Kind::Negate:
      return 3;
    default:
      return 4;
  }
}

char op_char(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return '+';
    case BinaryOp::Sub: return '-';
    case BinaryOp::Mul: return '*';
    case BinaryOp::Div: return '/';
  }
  return '?';
}

std::string format_number(double v) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

void print(const Expression& e, std::string& out) {
  auto child = [&out](const Expression& c, bool parens) {
    if (parens) out += '(';
    print(c, out);
    if (parens) out += ')';
  };
  switch (e.kind()) {
    case Expression::Kind::Literal:
      out += format_number(e.literal_value());
      break;
    case Expression::Kind::Variable:
      out += e.variable_name();
      break;
    case Expression::Kind::Negate:
      out += '-';
      child(e.operands()[0], precedence(e.operands()[0]) < 3);
      break;
    case Expression::Kind::Binary: {
      const int p = precedence(e);
      child(e.operands()[0], precedence(e.operands()[0]) < p);
      out += ' ';
      out += op_char(e.binary_op());
      out += ' ';
      child(e.operands()[1], precedence(e.operands()[1]) <= p);
      break;
    }
    case Expression::Kind::Call: {
      out += function_name(e.function());
      out += '(';
      bool first = true;
      for (const auto& arg : e.operands()) {
        if (!first) out += ", ";
        first = false;
        print(arg, out);
      }
      out += ')';
      break;
    }
  }
}

}  // namespace

std::string Expression::to_string() const {
  std::string out;
  print(*this, out);
  return out;
}

Expression parse_expression(std::string_view text, const SymbolTable& symbols) {
  detail::TokenCursor cursor(detail::tokenize(text));
  if (cursor.at_end()) throw ParseError("empty expression", 0);
  Expression e = detail::parse_sum(cursor, symbols);
  if (!cursor.at_end()) {
    throw ParseError("unexpected " + std::string(detail::describe(cursor.peek().type)) +
                         " after expression",
                     cursor.peek().position);
  }
  return e;
}

double evaluate_expression(const Expression& e, std::span<const std::int64_t> counts,
                           std::span<const double> parameters) {
  switch (e.kind()) {
    case Expression::Kind::Literal:
      return e.literal_value();
    case Expression::Kind::Variable: {
      const Symbol& s = e.symbol();
      return s.kind == SymbolKind::Species ? static_cast<double>(counts[s.index])
                                           : parameters[s.index];
    }
    case Expression::Kind::Negate:
      return -evaluate_expression(e.operands()[0], counts, parameters);
    case Expression::Kind::Binary: {
      const double a = evaluate_expression(e.operands()[0], counts, parameters);
      const double b = evaluate_expression(e.operands()[1], counts, parameters);
      switch (e.binary_op()) {
        case BinaryOp::Add: return a + b;
        case BinaryOp::Sub: return a - b;
        case BinaryOp::Mul: return a * b;
        case BinaryOp::Div:
          if (b == 0.0) throw EvaluationError("division by zero", e.to_string());
          return a / b;
      }
      break;
    }
    case Expression::Kind::Call: {
      const auto args = e.operands();
      const double a = evaluate_expression(args[0], counts, parameters);
      double r = 0.0;
      switch (e.function()) {
        case Function::Sqrt:
          if (a < 0.0) throw EvaluationError("square root of negative number", e.to_string());
          r = std::sqrt(a);
          break;
        case Function::Log:
          if (a <= 0.0) throw EvaluationError("logarithm of non-positive number", e.to_string());
          r = std::log(a);
          break;
        case Function::Exp: r = std::exp(a); break;
        case Function::Abs: r = std::fabs(a); break;
        case Function::Floor: r = std::floor(a); break;
        case Function::Ceil: r = std::ceil(a); break;
        case Function::Pow:
          r = std::pow(a, evaluate_expression(args[1], counts, parameters));
          break;
        case Function::Min:
          r = std::fmin(a, evaluate_expression(args[1], counts, parameters));
          break;
        case Function::Max:
          r = std::fmax(a, evaluate_expression(args[1], counts, parameters));
          break;
      }
      if (!std::isfinite(r)) throw EvaluationError("non-finite result", e.to_string());
      return r;
    }
  }
  assert(false && "unhandled expression kind");
  return 0.0;
}

void collect_symbols(const Expression& e, std::vector<Symbol>& out) {
  if (e.kind() == Expression::Kind::Variable) {
    out.push_back(e.symbol());
    return;
  }
  for (const auto& child : e.operands()) collect_symbols(child, out);
}

}  // namespace smc
