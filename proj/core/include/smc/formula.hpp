#pragma once

#include <cstddef>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "smc/expression.hpp"
#include "smc/network.hpp"

namespace smc {

/// Closed time interval [lower, upper] in model-time units; upper may be
/// +infinity. The default is [0, +inf), the interval of unbounded operators.
struct Interval {
  double lower = 0.0;
  double upper = std::numeric_limits<double>::infinity();

  bool contains(double t) const { return lower <= t && t <= upper; }
  bool is_unbounded() const { return lower == 0.0 && upper == std::numeric_limits<double>::infinity(); }

  friend bool operator==(const Interval&, const Interval&) = default;
};

enum class Comparison { Less, LessEqual, GreaterEqual, Greater, Equal, NotEqual };

std::string_view comparison_symbol(Comparison c);
bool compare(double lhs, Comparison c, double rhs);

/// BLTLc formula tree. Immutable; copies share structure.
///
/// Finally and Globally are surface forms: desugar_formula() rewrites them
/// into Until and Not.
class Formula {
 public:
  enum class Kind { Atom, Not, And, Or, Next, Until, Finally, Globally };

  static Formula atom(Expression lhs, Comparison op, Expression rhs);
  /// The constant-true atom 0 <= 0.
  static Formula truth();
  static Formula negation(Formula operand);
  static Formula conjunction(Formula lhs, Formula rhs);
  static Formula disjunction(Formula lhs, Formula rhs);
  static Formula next(Interval interval, Formula operand);
  static Formula until(Interval interval, Formula hold, Formula goal);
  static Formula finally(Interval interval, Formula operand);
  static Formula globally(Interval interval, Formula operand);

  Kind kind() const;
  bool is_temporal() const;

  // Atom accessors.
  const Expression& lhs() const;
  const Expression& rhs() const;
  Comparison comparison() const;

  /// Temporal bound (Next, Until, Finally, Globally).
  const Interval& interval() const;

  /// Subformulas: one for Not/Next/Finally/Globally, two for And/Or/Until
  /// (for Until: the one that must hold, then the goal).
  std::span<const Formula> children() const;
  const Formula& child(std::size_t i) const { return children()[i]; }

  /// True when no Finally or Globally node remains.
  bool is_desugared() const;

  /// Re-parseable text.
  std::string to_string() const;

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Concrete syntax, loosest to tightest:
///
///   formula := until ('|' until)*
///   until   := conj ('U' interval? until)?          right-associative
///   conj    := unary ('&' unary)*
///   unary   := '!' unary | ('X'|'F'|'G') interval? unary | primary
///   primary := '(' formula ')' | atom
///   atom    := expr cmp expr (cmp expr)?            chains become '&'
///   cmp     := '<' | '<=' | '>=' | '>' | '==' | '!='
///   interval:= '[' number ',' (number ']' | 'inf' (')'|']'))
///
/// X, U, F and G are keywords.
Formula parse_formula(std::string_view text, const SymbolTable& symbols);

/// F[I] p  ->  (0 <= 0) U[I] p
/// G[I] p  ->  !((0 <= 0) U[I] !p)
Formula desugar_formula(const Formula& formula);

/// Truth of an atom in a single state.
bool evaluate_atom(const Formula& atom, const State& state, std::span<const double> parameters);

/// Largest total time any chain of nested temporal operators can look ahead
/// (sum of upper bounds along the deepest path; +inf if any is unbounded).
double temporal_horizon(const Formula& formula);

}  // namespace smc
