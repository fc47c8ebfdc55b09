#pragma once

#include <memory>
#include <string>
#include <string_view>

namespace fracsph {

namespace detail {
struct ExprNode;
}

/// Immutable arithmetic expression in one variable `x`.
///
/// Grammar (whitespace-insensitive, no implicit multiplication):
///   expr    := term (('+' | '-') term)*
///   term    := unary (('*' | '/') unary)*
///   unary   := '-' unary | power
///   power   := primary (('^' | '**') unary)?        right-associative
///   primary := number | 'x' | 'pi' | func '(' args ')' | '(' expr ')'
///   func    := sin | cos | exp | abs | sqrt (one argument) | pow (two)
class Expr {
 public:
  /// Strict IEEE evaluation. Throws EvaluationError on division by zero,
  /// the square root of a negative number, or a negative base raised to a
  /// non-integer power.
  double evaluate(double x) const;

  /// Fully parenthesized canonical text; parse(to_string()) prints identically.
  std::string to_string() const;

  /// True when the expression does not mention `x`.
  bool is_constant() const noexcept;

 private:
  friend Expr parse_expression(std::string_view source);
  explicit Expr(std::shared_ptr<const detail::ExprNode> root) : root_(std::move(root)) {}

  std::shared_ptr<const detail::ExprNode> root_;
};

/// Throws ParseError carrying the byte offset and the expected-token set.
Expr parse_expression(std::string_view source);

}  // namespace fracsph
