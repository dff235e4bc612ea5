#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace smc {

/// Where a resolved identifier lives.
enum class SymbolKind { Species, Parameter };

struct Symbol {
  SymbolKind kind;
  std::size_t index;

  friend bool operator==(const Symbol&, const Symbol&) = default;
};

/// Names that expressions may reference.
class SymbolTable {
 public:
  void add_species(std::string name, std::size_t index);
  void add_parameter(std::string name, std::size_t index);

  std::optional<Symbol> find(std::string_view name) const;
  const std::string& name_of(const Symbol& symbol) const;

 private:
  std::unordered_map<std::string, Symbol> by_name_;
  std::vector<std::string> species_names_;
  std::vector<std::string> parameter_names_;
};

enum class BinaryOp { Add, Sub, Mul, Div };

enum class Function { Pow, Sqrt, Exp, Log, Abs, Min, Max, Floor, Ceil };

/// Number of arguments a function takes.
std::size_t arity(Function f);
std::string_view function_name(Function f);
std::optional<Function> function_from_name(std::string_view name);

/// Immutable arithmetic expression tree.
///
/// Nodes are shared, so copies are cheap and the tree can be read from
/// several threads at once.
class Expression {
 public:
  enum class Kind { Literal, Variable, Binary, Negate, Call };

  static Expression literal(double value);
  static Expression variable(Symbol symbol, std::string name);
  static Expression binary(BinaryOp op, Expression lhs, Expression rhs);
  static Expression negate(Expression operand);
  static Expression call(Function f, std::vector<Expression> args);

  Kind kind() const;
  double literal_value() const;
  const Symbol& symbol() const;
  const std::string& variable_name() const;
  BinaryOp binary_op() const;
  Function function() const;
  /// Operands: two for Binary, one for Negate, the arguments for Call.
  std::span<const Expression> operands() const;

  /// Canonical text; `parse_expression(to_string())` gives back an equal tree.
  std::string to_string() const;

  friend bool operator==(const Expression& a, const Expression& b);

 private:
  struct Node;
  explicit Expression(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Parses `text` with the usual precedence (unary minus, then * /, then + -),
/// resolving every identifier against `symbols`.
Expression parse_expression(std::string_view text, const SymbolTable& symbols);

/// Evaluates against species counts and parameter values.
double evaluate_expression(const Expression& e, std::span<const std::int64_t> counts,
                           std::span<const double> parameters);

/// Appends every symbol referenced by `e` to `out`.
void collect_symbols(const Expression& e, std::vector<Symbol>& out);

}  // namespace smc
