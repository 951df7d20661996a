#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fuzzcalc/fuzzy_number.hpp"

namespace fuzzcalc {

enum class NodeKind {
  FuzzyConst,
  CrispConst,
  Var,
  Add,
  GhSub,
  Mul,
  Div,
  PowInt,
  Neg,
  Exp,
  Sin,
  Cos,
  // Only produced by the coefficient-rule parser: a power whose exponent is an
  // integer-valued expression in the series index, and a crisp factorial.
  PowExpr,
  Factorial,
};

/// Immutable expression tree over fuzzy and crisp values.
///
/// Nodes are shared, so copying an Expr is cheap and sub-trees produced by
/// differentiate() reuse the operand's nodes.
class Expr {
 public:
  static Expr fuzzy(FuzzyNumber value, std::optional<TriangularSpec> label = std::nullopt);
  static Expr crisp(double value);
  static Expr var(std::string name);
  static Expr unary(NodeKind kind, Expr operand);
  static Expr binary(NodeKind kind, Expr lhs, Expr rhs);
  static Expr pow_int(Expr base, unsigned exponent);

  NodeKind kind() const noexcept;
  std::size_t arity() const noexcept;
  const Expr& child(std::size_t i) const;

  double crisp_value() const;
  const FuzzyNumber& fuzzy_value() const;
  const std::optional<TriangularSpec>& fuzzy_label() const;
  const std::string& name() const;
  unsigned exponent() const;

  bool is_crisp_const() const noexcept { return kind() == NodeKind::CrispConst; }
  bool is_crisp(double v) const noexcept;

  /// Text in the parser's grammar (round-trips through parse_expr for
  /// triangular and crisp constants).
  std::string to_string() const;

  /// Structural equality; fuzzy constants compare by envelope.
  friend bool operator==(const Expr& a, const Expr& b);

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

// Builders with crisp constant folding and the neutral-element rules
// (0 + e, 1 * e, 0 * e, e ^ 1, e ^ 0, -(-e)). differentiate() builds through
// these; the parser does not.
namespace build {
Expr sum(Expr a, Expr b);
Expr gh_sub(Expr a, Expr b);
Expr product(Expr a, Expr b);
Expr quotient(Expr a, Expr b);
Expr power(Expr a, unsigned n);
Expr negate(Expr a);
}  // namespace build

/// d e / d var using the crisp sum, product, quotient, power and chain rules.
Expr differentiate(const Expr& e, std::string_view var);

/// True when `name` occurs as a variable in e.
bool depends_on(const Expr& e, std::string_view name);

/// True when e contains a GhSub node.
bool contains_gh_sub(const Expr& e);

}  // namespace fuzzcalc
